"""Left modules over structure-constant algebras, given by multiplication matrices."""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Sequence

from ..exactla import Field, Mat, coordinates, echelon, kernel_rows, matmul_rows, matvec, pivots_of, reduce_against
from .core import FDAlgebra, matrix_algebra
from .idempotents import DEFAULT_SEED, IdempotentSystem, corner_span, is_local, primitive_idempotents


class ModuleError(ValueError):
    pass


class AModule:
    """Finite-dimensional left module: ``action[i]`` is the matrix of basis element b_i."""

    def __init__(self, algebra: FDAlgebra, dim: int, action: Sequence, name: str = "", check: bool = True):
        f = algebra.field
        mats = []
        for m in action:
            if not isinstance(m, Mat):
                m = Mat(f, m, dim, dim)
            if m.shape != (dim, dim) or m.field != f:
                raise ModuleError("action matrix has wrong shape or field")
            mats.append(m)
        if len(mats) != algebra.dim:
            raise ModuleError("need one action matrix per basis element")
        self.algebra = algebra
        self.field = f
        self.dim = dim
        self.action = tuple(mats)
        self.name = name
        if check:
            self.check_axioms()

    def __repr__(self) -> str:
        return f"AModule({self.name or '?'}, dim={self.dim}, over {self.algebra.name})"

    def check_axioms(self) -> None:
        a = self.algebra
        f = self.field
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = matmul_rows(f, self.action[i].data, self.action[j].data, self.dim)
                rhs = self.element_rows(a.dense_product(i, j))
                if lhs != rhs:
                    raise ModuleError(f"action does not respect the product b{i}*b{j}")
        if self.element_rows(a.unit) != [list(r) for r in Mat.identity(f, self.dim).data]:
            raise ModuleError("unit does not act as the identity")

    def element_rows(self, x: Sequence) -> list[list]:
        f = self.field
        acc = [[f.zero] * self.dim for _ in range(self.dim)]
        for c, m in zip(x, self.action):
            if c:
                acc = [[s + c * t for s, t in zip(ra, rm)] for ra, rm in zip(acc, m.data)]
        return [list(f.reduce_vec(r)) for r in acc]

    def element_matrix(self, x: Sequence) -> Mat:
        return Mat._raw(self.field, self.element_rows(x), self.dim, self.dim)

    def act(self, x: Sequence, v: Sequence) -> tuple:
        return matvec(self.field, self.element_rows(x), v)

    def span(self, vectors) -> list[tuple]:
        return echelon(self.field, vectors, self.dim)

    def generated(self, gens: Sequence[Sequence]) -> list[tuple]:
        """Echelon basis of the submodule generated by ``gens``."""
        return self.span(matvec(self.field, m.data, g) for g in gens for m in self.action)

    def image_under(self, x: Sequence, subspace: Sequence[Sequence]) -> list[tuple]:
        rows = self.element_rows(x)
        return self.span(matvec(self.field, rows, v) for v in subspace)

    def all_vectors(self) -> list[tuple]:
        """The standard basis."""
        f = self.field
        return [tuple(f.one if i == j else f.zero for j in range(self.dim)) for i in range(self.dim)]


def restrict(module: AModule, basis: Sequence[Sequence], name: str = "") -> AModule:
    """The submodule with (echelon) basis ``basis``; raises if it is not invariant."""
    f = module.field
    basis = echelon(f, basis, module.dim)
    piv = pivots_of(basis)
    k = len(basis)
    mats = []
    for m in module.action:
        cols = []
        for u in basis:
            try:
                cols.append(coordinates(f, basis, matvec(f, m.data, u), piv))
            except ValueError:
                raise ModuleError("subspace is not a submodule") from None
        mats.append(Mat._raw(f, [list(r) for r in zip(*cols)] if cols else [], k, k))
    return AModule(module.algebra, k, mats, name=name, check=False)


def quotient(module: AModule, sub: Sequence[Sequence], name: str = "") -> AModule:
    f = module.field
    sub = echelon(f, sub, module.dim)
    piv = pivots_of(sub)
    pset = set(piv)
    comp = [j for j in range(module.dim) if j not in pset]
    k = len(comp)
    mats = []
    for m in module.action:
        cols = []
        for c in comp:
            img = [m.data[r][c] for r in range(module.dim)]
            rem = reduce_against(f, sub, piv, img)
            cols.append([rem[j] for j in comp])
        mats.append(Mat._raw(f, [list(r) for r in zip(*cols)] if cols else [], k, k))
    return AModule(module.algebra, k, mats, name=name, check=False)


def direct_sum(*mods: AModule) -> AModule:
    a = mods[0].algebra
    f = a.field
    total = sum(m.dim for m in mods)
    mats = []
    for i in range(a.dim):
        rows = []
        off = 0
        for m in mods:
            for r in m.action[i].data:
                rows.append([f.zero] * off + list(r) + [f.zero] * (total - off - m.dim))
            off += m.dim
        mats.append(Mat._raw(f, rows, total, total))
    return AModule(a, total, mats, name="+".join(m.name for m in mods), check=False)


def regular_module(a: FDAlgebra) -> AModule:
    return AModule(a, a.dim, [Mat._raw(a.field, m, a.dim, a.dim) for m in a.left_basis_matrices()], name="A", check=False)


def left_ideal_module(a: FDAlgebra, e: Sequence, name: str = "Ae") -> AModule:
    reg = regular_module(a)
    return restrict(reg, [a.mul(a.basis(i), tuple(e)) for i in range(a.dim)], name=name)


# ---------------------------------------------------------------------------
# radical layers and composition factors


def radical_submodule(m: AModule, rad: Sequence[Sequence]) -> list[tuple]:
    out = []
    for j in rad:
        rows = m.element_rows(j)
        for k in range(m.dim):
            out.append(tuple(rows[r][k] for r in range(m.dim)))
    return m.span(out)


def radical_series(m: AModule, rad: Sequence[Sequence]) -> list[list[tuple]]:
    """[M, JM, J^2 M, ..., 0] as echelon bases."""
    jm = [m.element_rows(j) for j in rad]
    cur = m.span(m.all_vectors())
    series = [cur]
    while cur:
        nxt = m.span(matvec(m.field, rows, v) for rows in jm for v in cur)
        series.append(nxt)
        if len(nxt) == len(cur):
            raise ModuleError("radical series does not terminate")
        cur = nxt
    return series


def socle(m: AModule, rad: Sequence[Sequence]) -> list[tuple]:
    rows = []
    for j in rad:
        rows.extend(m.element_rows(j))
    if not rows:
        return m.span(m.all_vectors())
    return m.span(kernel_rows(m.field, rows, m.dim))


def _dim_sum(m: AModule, u, w) -> int:
    return len(m.span(list(u) + list(w)))


def composition_radical_route(m: AModule, system: IdempotentSystem) -> list[int]:
    """c_i(M) from radical layers: dim(eps_i * layer) / dim(simple_i), eps_i the class idempotents."""
    series = radical_series(m, system.radical)
    sdims = system.simple_dims()
    counts = [0] * system.m
    for top, below in zip(series, series[1:]):
        for i, eps in enumerate(system.class_idempotents):
            img = m.image_under(eps, top)
            d = _dim_sum(m, img, below) - len(below)
            if d % sdims[i]:
                raise ModuleError("layer dimension not a multiple of the simple dimension")
            counts[i] += d // sdims[i]
    return counts


def _basic_corner_data(system: IdempotentSystem):
    a = system.algebra
    data = system.algebra._cache.get(("corner_data", id(system)))
    if data is None:
        data = []
        for e in system.basic:
            ex = e.element
            eae = corner_span(a, ex)
            eje = a.span(a.mul(a.mul(ex, j), ex) for j in system.radical)
            data.append((ex, eje, len(eae) - len(eje)))
        system.algebra._cache[("corner_data", id(system))] = data
    return data


def composition_hom_route(m: AModule, system: IdempotentSystem) -> list[int]:
    """c_i(M) as the length of Hom(Ae_i, M) = e_i M over End(Ae_i) = (e_i A e_i)^op."""
    counts = []
    for ex, eje, ddim in _basic_corner_data(system):
        v = m.image_under(ex, m.all_vectors())
        rows = [m.element_rows(r) for r in eje]
        length = 0
        while v:
            nxt = m.span(matvec(m.field, r, x) for r in rows for x in v)
            layer = len(v) - len(nxt)
            if layer % ddim or (layer == 0):
                raise ModuleError("Hom layer is not a vector space over the residue division ring")
            length += layer // ddim
            v = nxt
        counts.append(length)
    return counts


def c_top(m: AModule, system: IdempotentSystem) -> list[int]:
    jm = radical_submodule(m, system.radical)
    out = []
    for ex, _, ddim in _basic_corner_data(system):
        em = m.image_under(ex, m.all_vectors())
        ejm = m.image_under(ex, jm)
        d = len(em) - len(ejm)
        if d % ddim:
            raise ModuleError("top multiplicity not integral")
        out.append(d // ddim)
    return out


def c_soc(m: AModule, system: IdempotentSystem) -> list[int]:
    soc = socle(m, system.radical)
    out = []
    for ex, _, ddim in _basic_corner_data(system):
        d = len(m.image_under(ex, soc))
        if d % ddim:
            raise ModuleError("socle multiplicity not integral")
        out.append(d // ddim)
    return out


def hom_length_check(m: AModule, system: IdempotentSystem) -> bool:
    """Both composition-multiplicity routes agree."""
    return composition_hom_route(m, system) == composition_radical_route(m, system)


def is_uniserial_module(m: AModule, system: IdempotentSystem | None = None) -> bool:
    """Every radical layer J^k M / J^{k+1} M is simple or zero."""
    if system is None:
        system = primitive_idempotents(m.algebra)
    series = radical_series(m, system.radical)
    sdims = system.simple_dims()
    for top, below in zip(series, series[1:]):
        total = 0
        for i, eps in enumerate(system.class_idempotents):
            img = m.image_under(eps, top)
            total += (_dim_sum(m, img, below) - len(below)) // sdims[i]
        if total > 1:
            return False
    return True


def min_generators(m: AModule, system: IdempotentSystem) -> int:
    """max_i ceil(c_i(top M) / p(i)): the least k with M a quotient of A^k."""
    top = c_top(m, system)
    return max((ceil(c / p) for c, p in zip(top, system.p)), default=0)


def is_k_generated(m: AModule, k: int, system: IdempotentSystem) -> bool:
    return min_generators(m, system) <= k


# ---------------------------------------------------------------------------
# endomorphisms and decomposition


def algebra_generators(a: FDAlgebra) -> list[int]:
    """Indices of basis elements that generate A as a unital algebra (greedy)."""
    if "generators" in a._cache:
        return a._cache["generators"]
    gens: list[int] = []
    span = a.span([a.unit])
    for i in range(a.dim):
        b = a.basis(i)
        if len(a.span(list(span) + [b])) == len(span):
            continue
        gens.append(i)
        gvecs = [a.basis(g) for g in gens]
        while True:
            new = a.span(list(span) + [b] + [a.mul(v, g) for v in span for g in gvecs])
            if len(new) == len(span):
                break
            span = new
            b = span[0]
        if len(span) == a.dim:
            break
    a._cache["generators"] = gens
    return gens


def end_algebra(m: AModule) -> tuple[FDAlgebra, list[Mat]]:
    """End_A(M) as an algebra of dim x dim matrices under composition."""
    f = m.field
    d = m.dim
    rows = []
    for g in algebra_generators(m.algebra):
        L = m.action[g].data
        # phi L - L phi = 0, unknown phi[r][c] at index r*d + c
        for r in range(d):
            for c in range(d):
                eq = [f.zero] * (d * d)
                for k in range(d):
                    if L[k][c]:
                        eq[r * d + k] = f.reduce(eq[r * d + k] + L[k][c])
                    if L[r][k]:
                        eq[k * d + c] = f.reduce(eq[k * d + c] - L[r][k])
                if any(eq):
                    rows.append(eq)
    sols = kernel_rows(f, rows, d * d)
    mats = [Mat._raw(f, [s[r * d:(r + 1) * d] for r in range(d)], d, d) for s in sols]
    return matrix_algebra(f, mats, name=f"End({m.name})")


def is_indecomposable_module(m: AModule, seed: int = DEFAULT_SEED) -> bool:
    if m.dim == 0:
        raise ModuleError("zero module")
    e, _ = end_algebra(m)
    return is_local(e, seed)


def decompose_module(m: AModule, seed: int = DEFAULT_SEED) -> list[tuple[AModule, int]]:
    """Indecomposable summands with multiplicities, via primitive idempotents of End(M)."""
    if m.dim == 0:
        return []
    e, basis = end_algebra(m)
    system = primitive_idempotents(e, seed)
    out = []
    for cls in system.classes:
        eps = system.primitives[cls[0]].element
        rows = _combine(m.field, eps, basis, m.dim)
        img = m.span(matvec(m.field, rows, v) for v in m.all_vectors())
        out.append((restrict(m, img, name=f"{m.name}[{len(out)}]"), len(cls)))
    return out


def _combine(f: Field, coeffs, mats: Sequence[Mat], d: int) -> list[list]:
    acc = [[f.zero] * d for _ in range(d)]
    for c, mt in zip(coeffs, mats):
        if c:
            acc = [[s + c * t for s, t in zip(ra, rm)] for ra, rm in zip(acc, mt.data)]
    return [list(f.reduce_vec(r)) for r in acc]


def hom_dimension(x: AModule, y: AModule) -> int:
    """dim_K Hom_A(X, Y)."""
    f = x.field
    dx, dy = x.dim, y.dim
    rows = []
    for g in algebra_generators(x.algebra):
        lx = x.action[g].data
        ly = y.action[g].data
        # phi lx - ly phi = 0, phi is dy x dx at r*dx + c
        for r in range(dy):
            for c in range(dx):
                eq = [f.zero] * (dx * dy)
                for k in range(dx):
                    if lx[k][c]:
                        eq[r * dx + k] = f.reduce(eq[r * dx + k] + lx[k][c])
                for k in range(dy):
                    if ly[r][k]:
                        eq[k * dx + c] = f.reduce(eq[k * dx + c] - ly[r][k])
                if any(eq):
                    rows.append(eq)
    return len(kernel_rows(f, rows, dx * dy))


# ---------------------------------------------------------------------------
# module invariants


@dataclass
class ModuleInvariants:
    dim: int
    length: int
    c_total: tuple[int, ...]
    c_top: tuple[int, ...]
    c_soc: tuple[int, ...]
    is_indecomposable: bool | None
    is_uniserial: bool
    is_multiplicity_free_top: bool


def module_invariants(m: AModule, system: IdempotentSystem | None = None, *, with_indecomposable: bool = True,
                      seed: int = DEFAULT_SEED) -> ModuleInvariants:
    if system is None:
        system = primitive_idempotents(m.algebra, seed)
    total = composition_hom_route(m, system)
    top = c_top(m, system)
    soc = c_soc(m, system)
    indec = is_indecomposable_module(m, seed) if (with_indecomposable and m.dim) else None
    return ModuleInvariants(
        dim=m.dim,
        length=sum(total),
        c_total=tuple(total),
        c_top=tuple(top),
        c_soc=tuple(soc),
        is_indecomposable=indec,
        is_uniserial=is_uniserial_module(m, system),
        is_multiplicity_free_top=all(c <= 1 for c in top),
    )


# ---------------------------------------------------------------------------
# Morita functors


def column_module(m: AModule, n: int, big: FDAlgebra) -> AModule:
    """M^n as a left Mat_n(A)-module (column vectors); ``big`` must be matrix_ring(A, n)."""
    a = m.algebra
    d = a.dim
    if big.dim != n * n * d:
        raise ModuleError("algebra is not Mat_n of the module's algebra")
    f = m.field
    md = m.dim
    total = n * md
    mats = []
    for r in range(n):
        for s in range(n):
            for k in range(d):
                rows = [[f.zero] * total for _ in range(total)]
                lk = m.action[k].data
                for i in range(md):
                    for j in range(md):
                        if lk[i][j]:
                            rows[r * md + i][s * md + j] = lk[i][j]
                mats.append(Mat._raw(f, rows, total, total))
    return AModule(big, total, mats, name=f"{m.name}^{n}", check=False)


def corner_module(m: AModule, e: Sequence, corner: FDAlgebra) -> AModule:
    """eM as a module over the corner algebra eAe (built by corner_algebra)."""
    if corner.embedding is None:
        raise ModuleError("corner algebra carries no embedding")
    f = m.field
    em = m.image_under(tuple(e), m.all_vectors())
    piv = pivots_of(em)
    k = len(em)
    mats = []
    for c in corner.embedding:
        rows = m.element_rows(c)
        cols = [coordinates(f, em, matvec(f, rows, u), piv) for u in em]
        mats.append(Mat._raw(f, [list(r) for r in zip(*cols)] if cols else [], k, k))
    return AModule(corner, k, mats, name=f"e{m.name}", check=False)


def product_module(m: AModule, big: FDAlgebra, first: bool) -> AModule:
    """A module over one factor viewed over the direct product (the other factor acts as 0)."""
    a = m.algebra
    f = m.field
    zero = Mat.zeros(f, m.dim, m.dim)
    pad = [zero] * (big.dim - a.dim)
    mats = list(m.action) + pad if first else pad + list(m.action)
    return AModule(big, m.dim, mats, name=m.name, check=False)
