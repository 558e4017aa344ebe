"""Small algebras with known complete lists of indecomposable modules.

Each case carries the algebra and, when it is representation-finite and the
list is known, one module per isomorphism class of indecomposables.  Lists are
produced by construction (Gabriel enumeration, quotients of uniserial regular
modules, or transport through an equivalence), never by search.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra.core import (
    FDAlgebra,
    corner_algebra,
    direct_product,
    field_algebra,
    from_dense,
    matrix_ring,
    path_algebra,
    radical_square_zero_local,
    truncated_polynomial,
)
from .algebra.idempotents import primitive_idempotents
from .algebra.modules import (
    AModule,
    column_module,
    corner_module,
    direct_sum,
    product_module,
    quotient,
    radical_series,
    regular_module,
)
from .exactla import Field
from .quiver import Quiver, all_orientations, linear_quiver
from .rep import Rep, enumerate_indecomposables, to_module


@dataclass
class Case:
    name: str
    algebra: FDAlgebra
    indecomposables: list[AModule] | None
    reps: list[Rep] | None = None
    quiver: Quiver | None = None

    @property
    def field(self) -> Field:
        return self.algebra.field


def path_case(q: Quiver, field: Field) -> Case:
    a = path_algebra(q, field)
    reps = enumerate_indecomposables(q, field)
    return Case(f"kQ[{q.name}]/{field}", a, [to_module(r, a) for r in reps], reps, q)


def truncated_case(field: Field, n: int) -> Case:
    """K[x]/(x^n): the indecomposables are the quotients A/J^j, j = 1..n."""
    a = truncated_polynomial(field, n)
    reg = regular_module(a)
    series = radical_series(reg, primitive_idempotents(a).radical)
    mods = [quotient(reg, series[j], name=f"K[x]/x^{j}") for j in range(1, n + 1)]
    return Case(a.name, a, mods)


def field_case(field: Field) -> Case:
    a = field_algebra(field)
    return Case(str(field), a, [regular_module(a)])


def gf4_case() -> Case:
    """GF(4) = GF(2)[t]/(t^2+t+1) as a 2-dimensional GF(2)-algebra."""
    f = Field.gf(2)
    tensor = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    a = from_dense(f, tensor, [1, 0], labels=["1", "t"], name="GF(4)/GF(2)")
    return Case(a.name, a, [regular_module(a)])


def product_case(x: Case, y: Case) -> Case:
    a = direct_product(x.algebra, y.algebra)
    mods = None
    if x.indecomposables is not None and y.indecomposables is not None:
        mods = [product_module(m, a, True) for m in x.indecomposables] + [product_module(m, a, False) for m in y.indecomposables]
    return Case(f"{x.name} x {y.name}", a, mods)


def matrix_case(x: Case, n: int) -> Case:
    """Mat_n(A) with indecomposables transported by M -> M^n (columns)."""
    a = matrix_ring(x.algebra, n)
    mods = None if x.indecomposables is None else [column_module(m, n, a) for m in x.indecomposables]
    return Case(f"Mat{n}({x.name})", a, mods, quiver=x.quiver)


def corner_case(x: Case, e: Sequence, label: str = "e") -> Case:
    """eAe with indecomposables transported by M -> eM (a bijection when e is full)."""
    a = corner_algebra(x.algebra, e)
    mods = None
    if x.indecomposables is not None:
        mods = [m for m in (corner_module(m, e, a) for m in x.indecomposables) if m.dim]
    return Case(f"{label}({x.name}){label}", a, mods)


def local_rad2_case(field: Field, r: int) -> Case:
    """K<x_1..x_r>/(x)^2; representation-infinite for r >= 2."""
    a = radical_square_zero_local(field, r)
    mods = None if r >= 2 else [regular_module(a), quotient(regular_module(a), [a.basis(1)], name="S")]
    return Case(a.name, a, mods)


# ---------------------------------------------------------------------------
# standard corpora

D4_EDGES = [(1, 2), (1, 3), (1, 4)]


def d4_out_quiver() -> Quiver:
    return Quiver.build("D4out", [1, 2, 3, 4], [("a", 1, 2), ("b", 1, 3), ("c", 1, 4)])


def dynkin_corpus() -> Iterator[Quiver]:
    """Every orientation of A1..A5 and D4."""
    for n in range(1, 6):
        edges = [(i, i + 1) for i in range(1, n)]
        yield from all_orientations(f"A{n}", range(1, n + 1), edges)
    yield from all_orientations("D4", [1, 2, 3, 4], D4_EDGES)


def small_cases(field: Field, max_dim: int = 6) -> list[Case]:
    """Algebras of dimension <= max_dim over ``field`` used by the oracle sweeps."""
    cases = [field_case(field)]
    cases.append(product_case(field_case(field), field_case(field)))
    for n in (2, 3, 4):
        cases.append(truncated_case(field, n))
    cases.append(path_case(linear_quiver(2), field))
    for q in all_orientations("A3", [1, 2, 3], [(1, 2), (2, 3)]):
        cases.append(path_case(q, field))
    cases.append(matrix_case(field_case(field), 2))
    cases.append(product_case(truncated_case(field, 2), field_case(field)))
    cases.append(product_case(path_case(linear_quiver(2), field), field_case(field)))
    cases.append(local_rad2_case(field, 2))
    if field.p == 2:
        cases.append(gf4_case())
    return [c for c in cases if c.algebra.dim <= max_dim]


def modules_up_to(case: Case, max_dim: int, max_order: int | None = None) -> list[AModule]:
    """Every module (up to isomorphism) of dimension <= max_dim: direct sums of the indecomposables."""
    inds = case.indecomposables
    if inds is None:
        raise ValueError(f"{case.name}: no complete list of indecomposables")
    f = case.field
    out = []

    def ok(d: int) -> bool:
        return d <= max_dim and (max_order is None or f.p ** d <= max_order)

    def rec(start: int, chosen: list[int], d: int):
        if chosen:
            mods = [inds[i] for i in chosen]
            if len(mods) == 1:
                out.append(mods[0])
            else:
                m = direct_sum(*mods)
                m.name = "+".join(x.name or f"M{i}" for x, i in zip(mods, chosen))
                out.append(m)
        for i in range(start, len(inds)):
            if inds[i].dim and ok(d + inds[i].dim):
                rec(i, chosen + [i], d + inds[i].dim)

    rec(0, [], 0)
    return out


def random_modules(case: Case, count: int, max_dim: int, seed: int) -> list[AModule]:
    """Quotients of free modules A^k by randomly generated submodules, of dimension <= max_dim."""
    a = case.algebra
    f = a.field
    rng = random.Random(seed)
    reg = regular_module(a)
    out: list[AModule] = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        k = rng.randint(1, 2)
        free = reg if k == 1 else direct_sum(reg, reg)
        gens = [tuple(f.random(rng) for _ in range(free.dim)) for _ in range(rng.randint(0, 3))]
        sub = free.generated(gens) if gens else []
        if free.dim - len(sub) == 0 or free.dim - len(sub) > max_dim:
            continue
        out.append(quotient(free, sub, name=f"rand{len(out)}"))
    return out
