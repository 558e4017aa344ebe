"""Decision layer: algebra profiles (p, q), k-cyclicity and Koethe verdicts, Morita checks.

For a representation-finite algebra with basic idempotents e_1..e_m:

* p(i) is the multiplicity of A e_i in the regular module,
* q(i) is the largest c_i(top M) over indecomposable modules M,

and A is left k-cyclic exactly when q(i) <= k p(i) for every i.  Left Koethe
is the case k = 1, and Mat_n(A) is left Koethe exactly when A is left
n-cyclic, which makes the least such n equal to max_i ceil(q(i) / p(i)).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import ceil
from typing import Sequence

from . import rep as rp
from .algebra.core import FDAlgebra, corner_algebra, is_full_idempotent, matrix_ring
from .algebra.idempotents import DEFAULT_SEED, IdempotentSystem, primitive_idempotents
from .algebra.modules import (
    AModule,
    c_top as module_c_top,
    column_module,
    corner_module,
    left_ideal_module,
    min_generators,
    quotient,
    radical_submodule,
)
from .corpus import Case
from .exactla import Field
from .quiver import Quiver, classify_dynkin


class ProfileIncomplete(ValueError):
    """q is unknown: the algebra is representation-infinite or no complete list was supplied."""


@dataclass(frozen=True)
class IndecSummary:
    id: str
    dim: tuple[int, ...] | int
    c_top: tuple[int, ...]


@dataclass
class AlgebraProfile:
    name: str
    field: str
    m: int
    p: tuple[int, ...]
    q: tuple[int, ...] | None
    representation_finite: bool | None
    basic: bool
    source: str
    class_labels: tuple[str, ...]
    indecomposables: tuple[IndecSummary, ...] = ()
    dynkin: str | None = None

    def require_q(self) -> tuple[int, ...]:
        if self.q is None:
            why = "representation-infinite" if self.representation_finite is False else "no complete list of indecomposables"
            raise ProfileIncomplete(f"{self.name}: q unavailable ({why})")
        return self.q


@dataclass(frozen=True)
class Witness:
    criterion: str
    indecomposable: str
    cls: str
    value: int
    bound: int


@dataclass
class Verdict:
    algebra: str
    profile: AlgebraProfile
    k_tested: int | None
    is_k_cyclic: bool | None
    is_kothe: bool | None
    is_mft: bool | None
    is_local_type: bool | None
    min_cyclic_k: int | None
    kothe_matrix_degree: int | None
    sum_q_degree: int | None
    max_p: int
    witnesses: list[Witness] = dc_field(default_factory=list)


# ---------------------------------------------------------------------------
# profiles


def _summaries(ids: Sequence[str], dims, tops) -> tuple[IndecSummary, ...]:
    return tuple(IndecSummary(i, d, tuple(t)) for i, d, t in zip(ids, dims, tops))


def _max_columns(tops: Sequence[Sequence[int]], m: int) -> tuple[int, ...]:
    return tuple(max((t[i] for t in tops), default=0) for i in range(m))


def indec_id(k: int) -> str:
    return f"M{k + 1}"


def profile_quiver(q: Quiver, field: Field, seed: int = DEFAULT_SEED) -> AlgebraProfile:
    """Hereditary route: Gabriel enumeration over a Dynkin quiver; p = 1 at every vertex."""
    cls = classify_dynkin(q)
    ones = (1,) * q.n
    if not cls.is_dynkin:
        return AlgebraProfile(q.name, field.name, q.n, ones, None, False, True,
                              f"path algebra of a non-Dynkin quiver ({cls.reason}): representation-infinite",
                              q.vertices, (), None)
    reps = rp.enumerate_indecomposables(q, field, seed)
    tops = [rp.c_top(r) for r in reps]
    summaries = _summaries([indec_id(k) for k in range(len(reps))], [r.dim for r in reps], tops)
    return AlgebraProfile(q.name, field.name, q.n, ones, _max_columns(tops, q.n), True, True,
                          "path algebra of a Dynkin quiver: indecomposables by reflection functors",
                          q.vertices, summaries, cls.variant)


def class_labels(a: FDAlgebra, system: IdempotentSystem) -> tuple[str, ...]:
    """Vertex names for path algebras, otherwise 1..m."""
    if a.paths is not None:
        labels = []
        for e in system.basic:
            hits = [p.source for p, c in zip(a.paths, e.element) if c and not p.arrows]
            labels.append(hits[0] if len(hits) == 1 else "?")
        if "?" not in labels and len(set(labels)) == len(labels):
            return tuple(labels)
    return tuple(str(i + 1) for i in range(system.m))


def profile_algebra(a: FDAlgebra, indecomposables: Sequence[AModule] | None, seed: int = DEFAULT_SEED,
                    source: str = "") -> AlgebraProfile:
    """Structure-constant route: p from primitive idempotents, q from a supplied complete list."""
    system = primitive_idempotents(a, seed)
    labels = class_labels(a, system)
    if indecomposables is None:
        return AlgebraProfile(a.name, a.field.name, system.m, system.p, None, None, system.is_basic,
                              source or "structure constants; no complete list of indecomposables supplied", labels)
    tops = [module_c_top(m, system) for m in indecomposables]
    ids = [m.name or indec_id(k) for k, m in enumerate(indecomposables)]
    summaries = _summaries(ids, [m.dim for m in indecomposables], tops)
    return AlgebraProfile(a.name, a.field.name, system.m, system.p, _max_columns(tops, system.m), True,
                          system.is_basic, source or "structure constants; complete list of indecomposables supplied",
                          labels, summaries)


def profile_case(case: Case, seed: int = DEFAULT_SEED) -> AlgebraProfile:
    if case.reps is not None and case.quiver is not None:
        return profile_quiver(case.quiver, case.field, seed)
    return profile_algebra(case.algebra, case.indecomposables, seed)


# ---------------------------------------------------------------------------
# verdicts


def k_cyclic_witnesses(profile: AlgebraProfile, k: int, criterion: str = "k-cyclic") -> list[Witness]:
    """First indecomposable (in enumeration order) breaking c_i(top M) <= k p(i), per class."""
    q = profile.require_q()
    out = []
    for i in range(profile.m):
        bound = k * profile.p[i]
        if q[i] <= bound:
            continue
        for s in profile.indecomposables:
            if s.c_top[i] > bound:
                out.append(Witness(criterion, s.id, profile.class_labels[i], s.c_top[i], bound))
                break
    return out


def is_left_k_cyclic(profile: AlgebraProfile, k: int) -> tuple[bool, list[Witness]]:
    if k < 1:
        raise ValueError("k must be positive")
    if profile.representation_finite is False:
        return False, []
    q = profile.require_q()
    ok = all(qi <= k * pi for qi, pi in zip(q, profile.p))
    return ok, ([] if ok else k_cyclic_witnesses(profile, k))


def is_left_kothe(profile: AlgebraProfile) -> tuple[bool, list[Witness]]:
    ok, wit = is_left_k_cyclic(profile, 1)
    return ok, [Witness("kothe", w.indecomposable, w.cls, w.value, w.bound) for w in wit]


def is_multiplicity_free_top(profile: AlgebraProfile) -> tuple[bool, list[Witness]]:
    profile.require_q()
    out = []
    for i in range(profile.m):
        for s in profile.indecomposables:
            if s.c_top[i] > 1:
                out.append(Witness("mft", s.id, profile.class_labels[i], s.c_top[i], 1))
                break
    return not out, out


def is_left_local_type(profile: AlgebraProfile) -> tuple[bool, list[Witness]]:
    profile.require_q()
    for s in profile.indecomposables:
        total = sum(s.c_top)
        if total > 1:
            i = next(j for j, c in enumerate(s.c_top) if c)
            return False, [Witness("local-type", s.id, profile.class_labels[i], total, 1)]
    return True, []


def min_cyclic_k(profile: AlgebraProfile) -> int:
    q = profile.require_q()
    return max(ceil(qi / pi) for qi, pi in zip(q, profile.p))


def kothe_matrix_degree(profile: AlgebraProfile) -> tuple[int, int | None]:
    """(least n with Mat_n(A) left Koethe, sum of q for basic A)."""
    n = min_cyclic_k(profile)
    d = sum(profile.require_q()) if profile.basic else None
    if d is not None and n > d:
        raise AssertionError("least degree exceeds the sum of q")
    return n, d


def verdict(profile: AlgebraProfile, k: int | None = None) -> Verdict:
    """All decisions for one profile; entries are None when q is unknown."""
    v = Verdict(profile.name, profile, k, None, None, None, None, None, None, None, max(profile.p))
    if profile.representation_finite is False:
        v.is_k_cyclic = False if k is not None else None
        v.is_kothe = False
        return v
    if profile.q is None:
        return v
    v.is_kothe, wk = is_left_kothe(profile)
    v.witnesses.extend(wk)
    if k is not None:
        v.is_k_cyclic, wc = is_left_k_cyclic(profile, k)
        if k != 1:
            v.witnesses.extend(wc)
    v.is_mft, wm = is_multiplicity_free_top(profile)
    v.witnesses.extend(wm)
    v.is_local_type, wl = is_left_local_type(profile)
    v.witnesses.extend(wl)
    v.min_cyclic_k = min_cyclic_k(profile)
    v.kothe_matrix_degree, v.sum_q_degree = kothe_matrix_degree(profile)
    return v


def k_cyclic_by_modules(a: FDAlgebra, modules: Sequence[AModule], k: int, seed: int = DEFAULT_SEED) -> bool:
    """Every listed indecomposable needs at most k generators (per-module route)."""
    system = primitive_idempotents(a, seed)
    return all(min_generators(m, system) <= k for m in modules)


# ---------------------------------------------------------------------------
# Morita consistency


def simple_module(system: IdempotentSystem, i: int) -> AModule:
    """S_i = A e_i / J e_i for the i-th basic idempotent."""
    a = system.algebra
    p = left_ideal_module(a, system.basic[i].element, name=f"P{i + 1}")
    return quotient(p, radical_submodule(p, system.radical), name=f"S{i + 1}")


def _relabel(images: Sequence[AModule], system: IdempotentSystem) -> list[int]:
    """sigma(i): the class of the image of S_i (which must again be simple)."""
    sigma = []
    for img in images:
        top = module_c_top(img, system)
        if sorted(top) != [0] * (len(top) - 1) + [1] or img.dim == 0:
            raise AssertionError("functor image of a simple module is not simple")
        sigma.append(top.index(1))
    if sorted(sigma) != list(range(len(sigma))):
        raise AssertionError("functor does not induce a bijection on simple modules")
    return sigma


@dataclass
class MoritaCheck:
    kind: str
    parameter: str
    base: AlgebraProfile
    image: AlgebraProfile
    sigma: list[int]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _compare_tops(mods, images, base_sys, img_sys, sigma, scale, failures):
    for m, fm in zip(mods, images):
        t = module_c_top(m, base_sys)
        ft = module_c_top(fm, img_sys)
        if any(ft[sigma[i]] != t[i] for i in range(len(t))):
            failures.append(f"top(F({m.name})) has c_top {ft}, expected {t} relabelled")
        if fm.dim != scale(m):
            failures.append(f"F({m.name}) has dimension {fm.dim}")


def morita_matrix_check(case: Case, n: int, seed: int = DEFAULT_SEED) -> MoritaCheck:
    """Mat_n(A) recomputed from structure constants: same m, same q, p scaled by n."""
    if case.indecomposables is None:
        raise ProfileIncomplete(f"{case.name}: no complete list of indecomposables")
    a = case.algebra
    base_sys = primitive_idempotents(a, seed)
    base = profile_algebra(a, case.indecomposables, seed)
    big = matrix_ring(a, n)
    img_sys = primitive_idempotents(big, seed)
    images = [column_module(m, n, big) for m in case.indecomposables]
    image = profile_algebra(big, images, seed, source=f"Mat_{n} recomputed; modules transported as columns")
    failures: list[str] = []
    sigma = _relabel([column_module(simple_module(base_sys, i), n, big) for i in range(base.m)], img_sys)
    if image.m != base.m:
        failures.append(f"m changed: {base.m} -> {image.m}")
    for i in range(base.m):
        if image.q[sigma[i]] != base.q[i]:
            failures.append(f"q at class {i + 1}: {base.q[i]} -> {image.q[sigma[i]]}")
        if image.p[sigma[i]] != n * base.p[i]:
            failures.append(f"p at class {i + 1}: {base.p[i]} -> {image.p[sigma[i]]}, expected x{n}")
    if min_cyclic_k(image) != ceil(min_cyclic_k(base) / n):
        failures.append(f"min_cyclic_k {min_cyclic_k(image)} != ceil({min_cyclic_k(base)}/{n})")
    _compare_tops(case.indecomposables, images, base_sys, img_sys, sigma, lambda m: n * m.dim, failures)
    return MoritaCheck("matrix", str(n), base, image, sigma, failures)


def morita_corner_check(case: Case, e: Sequence, seed: int = DEFAULT_SEED) -> MoritaCheck:
    """eAe for a full idempotent e: same m and q; p(eAe) counts the summands of Ae."""
    if case.indecomposables is None:
        raise ProfileIncomplete(f"{case.name}: no complete list of indecomposables")
    a = case.algebra
    e = tuple(e)
    if not is_full_idempotent(e, a):
        raise ValueError("idempotent is not full")
    base_sys = primitive_idempotents(a, seed)
    base = profile_algebra(a, case.indecomposables, seed)
    small = corner_algebra(a, e)
    img_sys = primitive_idempotents(small, seed)
    images = [corner_module(m, e, small) for m in case.indecomposables]
    image = profile_algebra(small, images, seed, source="corner eAe recomputed; modules transported as eM")
    failures: list[str] = []
    sigma = _relabel([corner_module(simple_module(base_sys, i), e, small) for i in range(base.m)], img_sys)
    ae_top = module_c_top(left_ideal_module(a, e), base_sys)
    if image.m != base.m:
        failures.append(f"m changed: {base.m} -> {image.m}")
    for i in range(base.m):
        if image.q[sigma[i]] != base.q[i]:
            failures.append(f"q at class {i + 1}: {base.q[i]} -> {image.q[sigma[i]]}")
        if image.p[sigma[i]] != ae_top[i]:
            failures.append(f"p at class {i + 1}: {image.p[sigma[i]]}, expected {ae_top[i]} from top(Ae)")
    if base.basic and is_left_kothe(base)[0] != is_left_kothe(image)[0]:
        failures.append("Koethe verdict differs between A and eAe")
    ranks = {m.name: len(m.image_under(e, m.all_vectors())) for m in case.indecomposables}
    _compare_tops(case.indecomposables, images, base_sys, img_sys, sigma, lambda m: ranks[m.name], failures)
    return MoritaCheck("corner", "e=" + ",".join(map(str, e)), base, image, sigma, failures)


def morita_consistency_suite(case: Case, ns: Sequence[int] = (1, 2), idempotents: Sequence[Sequence] = (),
                             seed: int = DEFAULT_SEED) -> list[MoritaCheck]:
    out = [morita_matrix_check(case, n, seed) for n in ns]
    out.extend(morita_corner_check(case, e, seed) for e in idempotents)
    return out
