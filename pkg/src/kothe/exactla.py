"""Exact dense linear algebra over prime fields GF(p) and the rationals.

Scalars are plain Python objects: ``int`` in ``[0, p)`` for GF(p) and
``fractions.Fraction`` for QQ.  Most routines work on lists of row vectors
(the fast internal path); :class:`Mat` wraps them for the public API.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """GF(p) when ``p`` is a prime, the rationals when ``p == 0``."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p != 0:
            if not _is_prime(self.p):
                raise FieldError(f"modulus {self.p} is not prime")
            if self.p > 2**31:
                raise FieldError(f"modulus {self.p} exceeds 2^31")

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def qq(cls) -> "Field":
        return cls(0)

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t.upper() in ("QQ", "Q"):
            return cls(0)
        m = re.fullmatch(r"(?:GF|F)\(?\s*(\d+)\s*\)?", t, flags=re.IGNORECASE)
        if not m:
            raise FieldError(f"unrecognised field {text!r}; use GF(p) or QQ")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.p else "QQ"

    def __str__(self) -> str:
        return self.name

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or string like ``"3/4"`` into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise FieldError(f"{x} has no image in {self.name}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def reduce(self, x):
        return x % self.p if self.p else x

    def reduce_vec(self, v: Iterable) -> tuple:
        if self.p:
            p = self.p
            return tuple(x % p for x in v)
        return tuple(v)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def format(self, x) -> str:
        if self.p:
            return str(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def to_json(self, x):
        if self.p:
            return int(x)
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def elements(self):
        if not self.p:
            raise FieldError("QQ is infinite")
        return range(self.p)

    @property
    def order(self) -> int | None:
        return self.p or None

    def random(self, rng: random.Random, bound: int = 10):
        """Uniform over GF(p); uniform integers in [-bound, bound] over QQ."""
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-bound, bound))


# ---------------------------------------------------------------------------
# row-list kernels


def rref_rows(field: Field, rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a list of rows; returns (nonzero rows, pivots)."""
    p = field.p
    work = [list(r) for r in rows]
    pivots: list[int] = []
    n = len(work)
    r = 0
    for c in range(ncols):
        if r == n:
            break
        piv = None
        for i in range(r, n):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        inv = field.inv(prow[c])
        if p:
            prow = [x * inv % p for x in prow]
        else:
            prow = [x * inv for x in prow]
        work[r] = prow
        for i in range(n):
            if i != r:
                f = work[i][c]
                if f:
                    if p:
                        work[i] = [(a - f * b) % p for a, b in zip(work[i], prow)]
                    else:
                        work[i] = [a - f * b for a, b in zip(work[i], prow)]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def echelon(field: Field, vectors: Iterable[Sequence], n: int) -> list[tuple]:
    """Canonical basis (reduced echelon rows) of the span of ``vectors`` in K^n."""
    rows, _ = rref_rows(field, list(vectors), n)
    return [tuple(r) for r in rows]


def pivots_of(basis: Sequence[Sequence]) -> list[int]:
    out = []
    for row in basis:
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def reduce_against(field: Field, basis: Sequence[Sequence], pivots: Sequence[int], v: Sequence) -> list:
    """Remainder of ``v`` after elimination by a reduced echelon ``basis``."""
    p = field.p
    w = list(v)
    for row, c in zip(basis, pivots):
        f = w[c]
        if f:
            if p:
                w = [(a - f * b) % p for a, b in zip(w, row)]
            else:
                w = [a - f * b for a, b in zip(w, row)]
    return w


def in_span(field: Field, basis: Sequence[Sequence], v: Sequence, pivots=None) -> bool:
    if pivots is None:
        pivots = pivots_of(basis)
    return not any(reduce_against(field, basis, pivots, v))


def coordinates(field: Field, basis: Sequence[Sequence], v: Sequence, pivots=None) -> list:
    """Coordinates of ``v`` in a reduced echelon ``basis``; raises if ``v`` is outside the span."""
    if pivots is None:
        pivots = pivots_of(basis)
    coeffs = [v[c] for c in pivots]
    rest = list(v)
    p = field.p
    for row, f in zip(basis, coeffs):
        if f:
            if p:
                rest = [(a - f * b) % p for a, b in zip(rest, row)]
            else:
                rest = [a - f * b for a, b in zip(rest, row)]
    if any(rest):
        raise ValueError("vector not in span")
    return coeffs


def kernel_rows(field: Field, rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of {x : rows . x = 0}, one tuple per basis vector."""
    red, piv = rref_rows(field, rows, ncols)
    pivset = set(piv)
    zero, one = field.zero, field.one
    out = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [zero] * ncols
        x[free] = one
        for row, c in zip(red, piv):
            f = row[free]
            if f:
                x[c] = field.neg(f)
        out.append(tuple(x))
    return out


def left_kernel_rows(field: Field, rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of {y : y . rows = 0}."""
    nrows = len(rows)
    if nrows == 0:
        return []
    return kernel_rows(field, transpose_rows(rows, ncols), nrows)


def transpose_rows(rows: Sequence[Sequence], ncols: int) -> list[list]:
    if not rows:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*rows)]


def matmul_rows(field: Field, a: Sequence[Sequence], b: Sequence[Sequence], bcols: int) -> list[list]:
    p = field.p
    zero = field.zero
    out = []
    for row in a:
        acc = [zero] * bcols
        for x, brow in zip(row, b):
            if x:
                acc = [s + x * y for s, y in zip(acc, brow)]
        if p:
            acc = [s % p for s in acc]
        out.append(acc)
    return out


def matvec(field: Field, rows: Sequence[Sequence], v: Sequence) -> tuple:
    p = field.p
    if p:
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in rows)
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows)


def complement_basis(field: Field, basis: Sequence[Sequence], n: int) -> list[int]:
    """Standard coordinates whose unit vectors complete ``basis`` (reduced echelon) to K^n."""
    piv = set(pivots_of(basis))
    return [j for j in range(n) if j not in piv]


def intersect_spans(field: Field, u: Sequence[Sequence], w: Sequence[Sequence], n: int) -> list[tuple]:
    if not u or not w:
        return []
    # x.U = y.W  <=>  (x, -y) in left kernel of [U; W]
    stacked = [list(r) for r in u] + [list(r) for r in w]
    ker = left_kernel_rows(field, stacked, n)
    vecs = []
    for k in ker:
        coeffs = k[: len(u)]
        vecs.append(matvec(field, transpose_rows(u, n), coeffs))
    return echelon(field, vecs, n)


# ---------------------------------------------------------------------------
# public matrix type


class Mat:
    """Immutable dense matrix over a :class:`Field`, stored row-major."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: Field, data: Iterable[Iterable], rows: int | None = None, cols: int | None = None):
        rows_t = tuple(tuple(field(x) for x in r) for r in data)
        if rows is None:
            rows = len(rows_t)
        if cols is None:
            cols = len(rows_t[0]) if rows_t else 0
        if len(rows_t) != rows or any(len(r) != cols for r in rows_t):
            raise ValueError(f"ragged or mis-shaped matrix data for {rows}x{cols}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", rows_t)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, field: Field, data, rows: int, cols: int) -> "Mat":
        # trusted constructor: entries already canonical
        m = cls.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "_data", tuple(tuple(r) for r in data))
        object.__setattr__(m, "_hash", None)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        z = field.zero
        return cls._raw(field, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> "Mat":
        if not columns:
            return cls.zeros(field, nrows, 0)
        return cls._raw(field, [list(r) for r in zip(*columns)], nrows, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def data(self) -> tuple[tuple, ...]:
        return self._data

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.rows, self.cols, self._data)))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(self.field.format(x) for x in r) + "]" for r in self._data)
        return f"Mat({self.field}, {self.rows}x{self.cols}, [{body}])"

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def _check(self, other: "Mat") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        red = self.field.reduce
        return Mat._raw(self.field, [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.rows, self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        red = self.field.reduce
        return Mat._raw(self.field, [[red(a - b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.rows, self.cols)

    def __neg__(self) -> "Mat":
        red = self.field.reduce
        return Mat._raw(self.field, [[red(-a) for a in r] for r in self._data], self.rows, self.cols)

    def scale(self, c) -> "Mat":
        c = self.field(c)
        red = self.field.reduce
        return Mat._raw(self.field, [[red(c * a) for a in r] for r in self._data], self.rows, self.cols)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mat._raw(self.field, matmul_rows(self.field, self._data, other._data, other.cols), self.rows, other.cols)

    def apply(self, v: Sequence) -> tuple:
        return matvec(self.field, self._data, v)

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.field, transpose_rows(self._data, self.cols), self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def rank(self) -> int:
        return len(rref_rows(self.field, self._data, self.cols)[1])

    def hstack(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return Mat._raw(self.field, [a + b for a, b in zip(self._data, other._data)], self.rows, self.cols + other.cols)

    def vstack(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return Mat._raw(self.field, self._data + other._data, self.rows + other.rows, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw(self.field, [[self._data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def power(self, k: int) -> "Mat":
        if not self.is_square():
            raise ValueError("power of non-square matrix")
        result = Mat.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "Mat":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = [list(r) + [self.field.one if i == j else self.field.zero for j in range(n)] for i, r in enumerate(self._data)]
        red, piv = rref_rows(self.field, aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        return Mat._raw(self.field, [r[n:] for r in red[:n]], n, n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        f = self.field
        p = f.p
        work = [list(r) for r in self._data]
        n = self.rows
        d = f.one
        for c in range(n):
            piv = next((i for i in range(c, n) if work[i][c]), None)
            if piv is None:
                return f.zero
            if piv != c:
                work[c], work[piv] = work[piv], work[c]
                d = f.neg(d)
            pv = work[c][c]
            d = f.reduce(d * pv)
            inv = f.inv(pv)
            for i in range(c + 1, n):
                fac = work[i][c]
                if fac:
                    fac = f.reduce(fac * inv)
                    if p:
                        work[i] = [(a - fac * b) % p for a, b in zip(work[i], work[c])]
                    else:
                        work[i] = [a - fac * b for a, b in zip(work[i], work[c])]
        return d


# ---------------------------------------------------------------------------
# module-level operations


def rref(m: Mat) -> tuple[Mat, list[int], int]:
    """Reduced row echelon form (same shape, zero rows at the bottom), pivots, rank."""
    red, piv = rref_rows(m.field, m.data, m.cols)
    z = m.field.zero
    full = [list(r) for r in red] + [[z] * m.cols for _ in range(m.rows - len(red))]
    return Mat._raw(m.field, full, m.rows, m.cols), piv, len(piv)


def kernel_basis(m: Mat) -> Mat:
    """Columns form a basis of the right null space of ``m``."""
    vecs = kernel_rows(m.field, m.data, m.cols)
    return Mat.from_columns(m.field, vecs, m.cols)


def image_basis(m: Mat) -> Mat:
    """Columns form a (reduced echelon) basis of the column space of ``m``."""
    vecs = echelon(m.field, m.columns(), m.rows)
    return Mat.from_columns(m.field, vecs, m.rows)


def solve(a: Mat, b: Mat) -> Mat | None:
    """Some ``X`` with ``a @ X == b``, or ``None`` when the system is inconsistent."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.rows != b.rows:
        raise ValueError(f"shape mismatch: A is {a.shape}, b is {b.shape}")
    f = a.field
    n = a.cols
    aug = [list(r) + list(s) for r, s in zip(a.data, b.data)]
    red, piv = rref_rows(f, aug, n + b.cols)
    if piv and piv[-1] >= n:
        return None
    z = f.zero
    x = [[z] * b.cols for _ in range(n)]
    for row, c in zip(red, piv):
        x[c] = list(row[n:])
    return Mat._raw(f, x, n, b.cols)


def mul(a: Mat, b: Mat) -> Mat:
    return a @ b


def add(a: Mat, b: Mat) -> Mat:
    return a + b


def block_diag(field: Field, blocks: Sequence[Mat]) -> Mat:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = field.zero
    data = []
    off = 0
    for b in blocks:
        for r in b.data:
            data.append([z] * off + list(r) + [z] * (cols - off - b.cols))
        off += b.cols
    return Mat._raw(field, data, rows, cols)


def subspace_membership(basis: Mat, v: Sequence) -> bool:
    """Is ``v`` in the column space of ``basis``?"""
    ech = echelon(basis.field, basis.columns(), basis.rows)
    return in_span(basis.field, ech, list(basis.field(x) for x in v))


def subspace_sum(u: Mat, w: Mat) -> Mat:
    return image_basis(u.hstack(w))


def subspace_intersection(u: Mat, w: Mat) -> Mat:
    if u.rows != w.rows:
        raise ValueError("ambient dimension mismatch")
    vecs = intersect_spans(u.field, echelon(u.field, u.columns(), u.rows), echelon(w.field, w.columns(), w.rows), u.rows)
    return Mat.from_columns(u.field, vecs, u.rows)


def random_matrix(field: Field, rows: int, cols: int, rng: random.Random | int, bound: int = 10) -> Mat:
    """Seeded random matrix; ``rng`` may be a seed."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    return Mat._raw(field, [[field.random(rng, bound) for _ in range(cols)] for _ in range(rows)], rows, cols)
