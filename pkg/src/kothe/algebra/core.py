"""Finite-dimensional associative algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..exactla import Field, Mat, coordinates, echelon, pivots_of
from ..quiver import Quiver

MAX_DIM_FINITE = 200
MAX_DIM_RATIONAL = 60

Sparse = tuple  # tuple of (index, coefficient) pairs


class SizeCapError(ValueError):
    pass


class AlgebraError(ValueError):
    pass


def check_size(field: Field, dim: int) -> None:
    cap = MAX_DIM_FINITE if field.is_finite else MAX_DIM_RATIONAL
    if dim > cap:
        raise SizeCapError(f"algebra of dimension {dim} over {field} exceeds the cap of {cap}")


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...]  # traversal order

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def label(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        # written as a product of basis elements: last arrow on the left
        return "*".join(reversed(self.arrows))


class FDAlgebra:
    """Unital associative algebra with basis b_0..b_{n-1}.

    ``table[i][j]`` is the product ``b_i * b_j`` as a sparse tuple of
    ``(k, coeff)`` pairs.  Elements are coordinate tuples.
    """

    def __init__(
        self,
        field: Field,
        table: Sequence[Sequence[Iterable]],
        unit: Sequence,
        labels: Sequence[str] | None = None,
        *,
        name: str = "",
        paths: Sequence[Path] | None = None,
        quiver: Quiver | None = None,
        embedding: Sequence[tuple] | None = None,
        check: bool = True,
    ):
        n = len(table)
        check_size(field, n)
        self.field = field
        self.dim = n
        self.name = name
        red = field.reduce
        cleaned = []
        for i in range(n):
            row = []
            if len(table[i]) != n:
                raise AlgebraError("structure table is not square")
            for j in range(n):
                acc: dict[int, object] = {}
                for k, c in table[i][j]:
                    acc[k] = acc.get(k, 0) + field(c)
                row.append(tuple((k, red(c)) for k, c in sorted(acc.items()) if red(c)))
            cleaned.append(tuple(row))
        self.table: tuple[tuple[Sparse, ...], ...] = tuple(cleaned)
        self.unit = tuple(field(x) for x in unit)
        if len(self.unit) != n:
            raise AlgebraError("unit vector has wrong length")
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))
        self.paths = tuple(paths) if paths is not None else None
        self.quiver = quiver
        self.embedding = tuple(embedding) if embedding is not None else None
        self._cache: dict = {}
        if check:
            self.check_axioms()

    # -- basics -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"FDAlgebra({self.name or 'anonymous'}, dim={self.dim}, {self.field})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FDAlgebra):
            return NotImplemented
        return (self.field, self.table, self.unit) == (other.field, other.table, other.unit)

    def __hash__(self) -> int:
        return hash((self.field, self.dim, self.unit))

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def basis(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def element(self, coords: Iterable) -> tuple:
        return tuple(self.field(x) for x in coords)

    def add(self, x, y) -> tuple:
        red = self.field.reduce
        return tuple(red(a + b) for a, b in zip(x, y))

    def sub(self, x, y) -> tuple:
        red = self.field.reduce
        return tuple(red(a - b) for a, b in zip(x, y))

    def scale(self, c, x) -> tuple:
        red = self.field.reduce
        return tuple(red(c * a) for a in x)

    def lincomb(self, coeffs: Iterable, vecs: Sequence[Sequence]) -> tuple:
        acc = [self.field.zero] * self.dim
        for c, v in zip(coeffs, vecs):
            if c:
                acc = [s + c * a for s, a in zip(acc, v)]
        return self.field.reduce_vec(acc)

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        table = self.table
        res = [self.field.zero] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            ti = table[i]
            for j, b in ys:
                ab = a * b
                for k, c in ti[j]:
                    res[k] += ab * c
        return self.field.reduce_vec(res)

    def power(self, x: Sequence, k: int, unit: Sequence | None = None) -> tuple:
        result = tuple(unit) if unit is not None else self.unit
        base = tuple(x)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_idempotent(self, x: Sequence) -> bool:
        return self.mul(x, x) == tuple(x)

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(i))

    def dense_product(self, i: int, j: int) -> tuple:
        v = [self.field.zero] * self.dim
        for k, c in self.table[i][j]:
            v[k] = c
        return tuple(v)

    def left_matrix(self, x: Sequence) -> list[list]:
        """Matrix of y -> x*y; column j is x*b_j."""
        n = self.dim
        cols = [self.mul(x, self.basis(j)) for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]

    def right_matrix(self, x: Sequence) -> list[list]:
        """Matrix of y -> y*x; column j is b_j*x."""
        n = self.dim
        cols = [self.mul(self.basis(j), x) for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]

    def left_basis_matrices(self) -> list[list[list]]:
        """L_{b_i} for every basis element, as row lists (entry [k][j] = coeff of b_k in b_i b_j)."""
        if "Lb" not in self._cache:
            n = self.dim
            z = self.field.zero
            mats = []
            for i in range(n):
                m = [[z] * n for _ in range(n)]
                for j in range(n):
                    for k, c in self.table[i][j]:
                        m[k][j] = c
                mats.append(m)
            self._cache["Lb"] = mats
        return self._cache["Lb"]

    def span(self, vectors: Iterable[Sequence]) -> list[tuple]:
        return echelon(self.field, vectors, self.dim)

    def span_products(self, left: Sequence[Sequence], right: Sequence[Sequence]) -> list[tuple]:
        return self.span(self.mul(u, v) for u in left for v in right)

    def all_basis(self) -> list[tuple]:
        return [self.basis(i) for i in range(self.dim)]

    # -- validation -------------------------------------------------------
    def check_axioms(self) -> None:
        n = self.dim
        table = self.table
        for i in range(n):
            for j in range(n):
                tij = table[i][j]
                for k in range(n):
                    left: dict[int, object] = {}
                    for m, c in tij:
                        for r, d in table[m][k]:
                            left[r] = left.get(r, 0) + c * d
                    right: dict[int, object] = {}
                    for m, c in table[j][k]:
                        for r, d in table[i][m]:
                            right[r] = right.get(r, 0) + c * d
                    red = self.field.reduce
                    lv = {r: red(v) for r, v in left.items() if red(v)}
                    rv = {r: red(v) for r, v in right.items() if red(v)}
                    if lv != rv:
                        raise AlgebraError(f"not associative at basis triple ({i}, {j}, {k})")
        for i in range(n):
            b = self.basis(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise AlgebraError(f"unit law fails at basis element {i}")


def from_dense(field: Field, tensor: Sequence[Sequence[Sequence]], unit: Sequence, **kw) -> FDAlgebra:
    """``tensor[i][j]`` is the coordinate vector of ``b_i * b_j``."""
    table = [[[(k, c) for k, c in enumerate(v) if c] for v in row] for row in tensor]
    return FDAlgebra(field, table, unit, **kw)


def matrix_algebra(field: Field, mats: Sequence[Mat], *, name: str = "", labels=None) -> tuple[FDAlgebra, list[Mat]]:
    """Algebra spanned by square matrices closed under multiplication (identity included).

    Returns the algebra on a reduced echelon basis of the span, and that basis.
    """
    if not mats:
        raise AlgebraError("empty spanning set")
    size = mats[0].rows
    flat = [tuple(x for r in m.data for x in r) for m in mats]
    basis_flat = echelon(field, flat, size * size)
    piv = pivots_of(basis_flat)
    basis = [Mat._raw(field, [bf[r * size:(r + 1) * size] for r in range(size)], size, size) for bf in basis_flat]

    def coords(m: Mat) -> list:
        try:
            return coordinates(field, basis_flat, [x for r in m.data for x in r], piv)
        except ValueError:
            raise AlgebraError("matrix span is not closed under multiplication") from None

    table = [[list(enumerate(coords(a @ b))) for b in basis] for a in basis]
    unit = coords(Mat.identity(field, size))
    return FDAlgebra(field, table, unit, labels=labels, name=name), basis


def field_algebra(field: Field) -> FDAlgebra:
    return FDAlgebra(field, [[[(0, 1)]]], [1], labels=["1"], name=str(field))


def truncated_polynomial(field: Field, n: int, name: str | None = None) -> FDAlgebra:
    """K[x]/(x^n) on the basis 1, x, ..., x^{n-1}."""
    table = [[[(i + j, 1)] if i + j < n else [] for j in range(n)] for i in range(n)]
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    return FDAlgebra(field, table, [1] + [0] * (n - 1), labels=labels, name=name or f"{field}[x]/(x^{n})")


def radical_square_zero_local(field: Field, r: int, name: str | None = None) -> FDAlgebra:
    """K[x_1..x_r]/(x_1..x_r)^2: dimension r+1, radical of dimension r with zero square."""
    n = r + 1
    table = [[[] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        table[0][i] = [(i, 1)]
        table[i][0] = [(i, 1)]
    labels = ["1"] + [f"x{i}" for i in range(1, n)]
    return FDAlgebra(field, table, [1] + [0] * r, labels=labels, name=name or f"{field}[x1..x{r}]/m^2")


def full_matrix_algebra(field: Field, n: int) -> FDAlgebra:
    return matrix_ring(field_algebra(field), n, name=f"Mat_{n}({field})")


def enumerate_paths(q: Quiver) -> list[Path]:
    if not q.is_acyclic():
        raise AlgebraError(f"quiver {q.name} has an oriented cycle or loop: path algebra is infinite-dimensional")
    paths = [Path(v, v, ()) for v in q.vertices]
    frontier = [Path(a.source, a.target, (a.label,)) for a in q.arrows]
    while frontier:
        paths.extend(frontier)
        nxt = []
        for p in frontier:
            for a in q.arrows:
                if a.source == p.target:
                    nxt.append(Path(p.source, a.target, p.arrows + (a.label,)))
        frontier = nxt
    return paths


def path_algebra(q: Quiver, field: Field) -> FDAlgebra:
    """Path algebra KQ: basis all paths, b_i * b_j = (path j followed by path i) or 0."""
    paths = enumerate_paths(q)
    index = {(p.source, p.arrows): k for k, p in enumerate(paths)}
    n = len(paths)
    table = [[[] for _ in range(n)] for _ in range(n)]
    for i, pi in enumerate(paths):
        for j, pj in enumerate(paths):
            if pj.target != pi.source:
                continue
            k = index[(pj.source, pj.arrows + pi.arrows)]
            table[i][j] = [(k, 1)]
    unit = [1 if p.length == 0 else 0 for p in paths]
    check_size(field, n)
    return FDAlgebra(field, table, unit, labels=[p.label for p in paths], name=f"{field}{q.name}", paths=paths, quiver=q)


def matrix_ring(a: FDAlgebra, n: int, name: str | None = None) -> FDAlgebra:
    """Mat_n(A); basis E_rs (x) b_k at index (r*n + s)*dim + k."""
    if n < 1:
        raise ValueError("matrix degree must be positive")
    d = a.dim
    check_size(a.field, n * n * d)
    N = n * n * d
    table = [[() for _ in range(N)] for _ in range(N)]

    def idx(r, s, k):
        return (r * n + s) * d + k

    for r in range(n):
        for s in range(n):
            for k in range(d):
                i = idx(r, s, k)
                row = table[i]
                for u in range(n):
                    for m in range(d):
                        prod = a.table[k][m]
                        if prod:
                            row[idx(s, u, m)] = tuple((idx(r, u, c), x) for c, x in prod)
    unit = [a.field.zero] * N
    for r in range(n):
        for k in range(d):
            unit[idx(r, r, k)] = a.unit[k]
    labels = [f"E{r + 1}{s + 1}({a.labels[k]})" for r in range(n) for s in range(n) for k in range(d)]
    return FDAlgebra(a.field, table, unit, labels=labels, name=name or f"Mat_{n}({a.name})")


def matrix_unit_element(a: FDAlgebra, n: int, r: int, s: int, x: Sequence) -> tuple:
    """The element E_rs (x) x of Mat_n(A), 0-based r, s."""
    d = a.dim
    out = [a.field.zero] * (n * n * d)
    for k, c in enumerate(x):
        out[(r * n + s) * d + k] = c
    return tuple(out)


def corner_algebra(a: FDAlgebra, e: Sequence) -> FDAlgebra:
    """eAe with unit e; ``embedding`` holds its basis as elements of A."""
    e = tuple(e)
    if not a.is_idempotent(e):
        raise AlgebraError("corner_algebra needs an idempotent")
    if not any(e):
        raise AlgebraError("corner at the zero idempotent")
    basis = a.span(a.mul(a.mul(e, a.basis(k)), e) for k in range(a.dim))
    piv = pivots_of(basis)
    table = [[list(enumerate(coordinates(a.field, basis, a.mul(u, v), piv))) for v in basis] for u in basis]
    unit = coordinates(a.field, basis, e, piv)
    return FDAlgebra(a.field, table, unit, labels=[f"c{i}" for i in range(len(basis))], name=f"eAe({a.name})", embedding=basis)


def opposite(a: FDAlgebra) -> FDAlgebra:
    n = a.dim
    table = [[a.table[j][i] for j in range(n)] for i in range(n)]
    q = a.quiver.opposite() if a.quiver is not None else None
    return FDAlgebra(a.field, table, a.unit, labels=a.labels, name=f"{a.name}^op", quiver=q)


def direct_product(a: FDAlgebra, b: FDAlgebra, name: str | None = None) -> FDAlgebra:
    if a.field != b.field:
        raise AlgebraError("field mismatch")
    n, m = a.dim, b.dim
    check_size(a.field, n + m)
    table = [[() for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            table[i][j] = a.table[i][j]
    for i in range(m):
        for j in range(m):
            table[n + i][n + j] = tuple((n + k, c) for k, c in b.table[i][j])
    unit = list(a.unit) + list(b.unit)
    labels = [f"{l}'" for l in a.labels] + [f"{l}''" for l in b.labels]
    return FDAlgebra(a.field, table, unit, labels=labels, name=name or f"{a.name}x{b.name}")


@dataclass
class Idem:
    """An idempotent element with lazily verified flags."""

    element: tuple
    primitive: bool | None = None
    full: bool | None = None
    left_semicentral: bool | None = None
    basic_sum: bool | None = None
    cls: int | None = None


def make_idem(a: FDAlgebra, e: Sequence) -> Idem:
    e = a.element(e)
    if not a.is_idempotent(e):
        raise AlgebraError("element is not idempotent")
    return Idem(e)


def _elem(e) -> tuple:
    return e.element if isinstance(e, Idem) else tuple(e)


def trace(e, a: FDAlgebra) -> list[tuple]:
    """Echelon basis of the two-sided ideal AeA (the trace of Ae in A)."""
    e = _elem(e)
    left = [a.mul(a.basis(i), e) for i in range(a.dim)]
    return a.span(a.mul(x, a.basis(j)) for x in left for j in range(a.dim))


def is_full_idempotent(e, a: FDAlgebra) -> bool:
    return len(trace(e, a)) == a.dim


def is_left_semicentral(e, a: FDAlgebra) -> bool:
    """Ae == eAe."""
    e = _elem(e)
    ae = a.span(a.mul(a.basis(i), e) for i in range(a.dim))
    eae = a.span(a.mul(e, x) for x in ae)
    return len(ae) == len(eae)


def is_two_sided_ideal(a: FDAlgebra, basis: Sequence[Sequence]) -> bool:
    span = a.span(basis)
    for v in span:
        for i in range(a.dim):
            b = a.basis(i)
            if len(a.span(list(span) + [a.mul(b, v), a.mul(v, b)])) != len(span):
                return False
    return True
