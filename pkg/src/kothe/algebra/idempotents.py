"""Primitive idempotents: Wedderburn splitting of A/J and lifting modulo J.

The semisimple quotient is split in two stages.  Central idempotents come
from factoring minimal polynomials of central elements (Chinese remainder
idempotents in K[z]); each simple block is then split by elements whose
minimal polynomial has two coprime factors.  Termination is certified by
dimension counts: a block idempotent f is primitive when dim fBf equals the
dimension of the block's centre.  Lifting to A uses e <- 3e^2 - 2e^3.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Sequence

from sympy import Poly, symbols

from ..exactla import Field, echelon, kernel_rows
from .core import FDAlgebra, Idem
from .radical import Quotient, jacobson_radical, quotient_algebra

DEFAULT_SEED = 0xC0FFEE
ATTEMPTS = 400

_t = symbols("t")


class SplittingError(RuntimeError):
    """Las Vegas splitting ran out of attempts."""


class UncertifiedError(RuntimeError):
    """A division-algebra test could not be certified (possible only over QQ)."""


# ---------------------------------------------------------------------------
# polynomials


def min_poly(a: FDAlgebra, x: Sequence, unit: Sequence) -> list:
    """Monic minimal polynomial of x in the unital subalgebra with identity ``unit``; low degree first."""
    f = a.field
    p = f.p
    n = a.dim
    rows: list[tuple[list, list, int]] = []  # (vector, combination, pivot)
    power = tuple(unit)
    k = 0
    while True:
        vec = list(power)
        combo = [f.zero] * (k + 1)
        combo[k] = f.one
        for rv, rc, c in rows:
            m = vec[c]
            if m:
                if p:
                    vec = [(s - m * t) % p for s, t in zip(vec, rv)]
                else:
                    vec = [s - m * t for s, t in zip(vec, rv)]
                for i, ci in enumerate(rc):
                    combo[i] = f.reduce(combo[i] - m * ci)
        piv = next((j for j, s in enumerate(vec) if s), None)
        if piv is None:
            return combo
        inv = f.inv(vec[piv])
        rows.append(([f.reduce(s * inv) for s in vec], [f.reduce(s * inv) for s in combo], piv))
        k += 1
        if k > n + 1:
            raise ArithmeticError("minimal polynomial degree exceeds dimension")
        power = a.mul(power, x)


def _to_poly(f: Field, coeffs: Sequence) -> Poly:
    hi = list(reversed(coeffs))
    if f.p:
        return Poly([int(c) for c in hi], _t, modulus=f.p)
    return Poly(hi, _t, domain="QQ")


def _from_poly(f: Field, poly: Poly) -> list:
    out = []
    for c in reversed(poly.all_coeffs()):
        if f.p:
            out.append(int(c) % f.p)
        else:
            out.append(Fraction(int(c.p), int(c.q)))
    return out


def factor_poly(f: Field, coeffs: Sequence) -> list[tuple[list, int]]:
    """Monic irreducible factors with multiplicities (coefficients low degree first)."""
    _, facs = _to_poly(f, coeffs).factor_list()
    out = []
    for g, mult in facs:
        g = g.monic()
        out.append((_from_poly(f, g), mult))
    out.sort(key=lambda t: (len(t[0]), [str(c) for c in t[0]]))
    return out


def poly_eval(a: FDAlgebra, coeffs: Sequence, x: Sequence, unit: Sequence) -> tuple:
    res = a.zero()
    for c in reversed(list(coeffs)):
        res = a.add(a.mul(res, x), a.scale(c, unit))
    return res


def crt_idempotents(a: FDAlgebra, x: Sequence, unit: Sequence, minpoly: Sequence, factors=None) -> list[tuple]:
    """Orthogonal idempotents of K[x] (identity ``unit``), one per coprime primary factor."""
    f = a.field
    if factors is None:
        factors = factor_poly(f, minpoly)
    if len(factors) == 1:
        return [tuple(unit)]
    m = _to_poly(f, minpoly)
    out = []
    for g, mult in factors:
        gk = _to_poly(f, g) ** mult
        h = m.quo(gk)
        u = h.invert(gk)
        e_poly = (u * h).rem(m)
        out.append(poly_eval(a, _from_poly(f, e_poly), x, unit))
    return out


# ---------------------------------------------------------------------------
# subspaces of an algebra


def center(a: FDAlgebra) -> list[tuple]:
    """Echelon basis of Z(A)."""
    n = a.dim
    z = a.field.zero
    red = a.field.reduce
    rows = []
    for i in range(n):
        # z*b_i - b_i*z as a linear map in z
        m = [[z] * n for _ in range(n)]
        for j in range(n):
            for k, c in a.table[j][i]:
                m[k][j] = red(m[k][j] + c)
            for k, c in a.table[i][j]:
                m[k][j] = red(m[k][j] - c)
        rows.extend(m)
    return echelon(a.field, kernel_rows(a.field, rows, n), n)


def corner_span(a: FDAlgebra, e: Sequence) -> list[tuple]:
    return a.span(a.mul(a.mul(e, a.basis(k)), e) for k in range(a.dim))


def _candidates(a: FDAlgebra, span: Sequence[Sequence], rng: random.Random) -> Iterator[tuple]:
    span = [tuple(v) for v in span]
    for v in span:
        yield v
    k = len(span)
    for i in range(k):
        for j in range(i + 1, min(k, i + 4)):
            yield a.add(span[i], span[j])
            yield a.mul(span[i], span[j])
    while True:
        coeffs = [a.field.random(rng, 3) for _ in range(k)]
        yield a.lincomb(coeffs, span)


def _is_unit_in_corner(a: FDAlgebra, x: Sequence, span: Sequence[Sequence]) -> bool:
    prods = echelon(a.field, (a.mul(x, v) for v in span), a.dim)
    return len(prods) == len(span)


# ---------------------------------------------------------------------------
# semisimple splitting


def split_commutative(a: FDAlgebra, basis: Sequence[Sequence], unit: Sequence, rng: random.Random) -> list[tuple[tuple, int]]:
    """Primitive idempotents of a commutative semisimple subalgebra, each with dim of its field eZ."""
    done = []
    work = [tuple(unit)]
    while work:
        e = work.pop()
        span = a.span(a.mul(e, z) for z in basis)
        if len(span) == 1:
            done.append((e, 1))
            continue
        for attempt, x in enumerate(_candidates(a, span, rng)):
            mp = min_poly(a, x, e)
            facs = factor_poly(a.field, mp)
            if len(facs) > 1:
                work.extend(crt_idempotents(a, x, e, mp, facs))
                break
            if facs[0][1] == 1 and len(mp) - 1 == len(span):
                done.append((e, len(span)))
                break
            if attempt > ATTEMPTS:
                raise SplittingError("could not split commutative semisimple algebra")
    return done


def split_simple_block(a: FDAlgebra, e: Sequence, center_dim: int, rng: random.Random) -> list[tuple]:
    """Complete orthogonal primitive idempotents of the simple algebra eA (e central, A semisimple)."""
    prims = []
    work = [tuple(e)]
    while work:
        f = work.pop()
        span = corner_span(a, f)
        if len(span) == center_dim:
            prims.append(f)
            continue
        for attempt, x in enumerate(_candidates(a, span, rng)):
            mp = min_poly(a, x, f)
            facs = factor_poly(a.field, mp)
            if len(facs) > 1:
                work.extend(crt_idempotents(a, x, f, mp, facs))
                break
            if attempt > ATTEMPTS:
                if a.field.is_finite:
                    raise SplittingError("could not split a matrix block over a finite field")
                raise UncertifiedError("block may be a non-commutative division algebra over QQ")
    return prims


def _desc_key(v: Sequence):
    return tuple(-Fraction(x) for x in v)


@dataclass
class Block:
    central: tuple  # in the quotient
    center_dim: int
    primitives: list[tuple]  # in the quotient


def semisimple_blocks(b: FDAlgebra, rng: random.Random) -> list[Block]:
    z = center(b)
    centrals = split_commutative(b, z, b.unit, rng)
    blocks = []
    for c, dl in centrals:
        prims = split_simple_block(b, c, dl, rng)
        prims.sort(key=_desc_key)
        blocks.append(Block(c, dl, prims))
    blocks.sort(key=lambda bl: _desc_key(bl.central))
    return blocks


def newton_lift(a: FDAlgebra, x: Sequence) -> tuple:
    """Iterate e <- 3e^2 - 2e^3 until idempotent (x idempotent modulo a nilpotent ideal)."""
    e = tuple(x)
    for _ in range(4 * a.dim.bit_length() + 8):
        e2 = a.mul(e, e)
        if e2 == e:
            return e
        e3 = a.mul(e2, e)
        e = a.sub(a.scale(3, e2), a.scale(2, e3))
    raise ArithmeticError("idempotent lifting did not converge (element not idempotent mod a nilpotent ideal)")


def lift_orthogonal(a: FDAlgebra, quot: Quotient, elems: Sequence[Sequence]) -> list[tuple]:
    """Lift a complete orthogonal set of idempotents of A/J to one of A summing to 1."""
    rest = a.unit
    out = []
    for k, eb in enumerate(elems):
        if k == len(elems) - 1:
            eps = rest
        else:
            x = quot.lift(eb)
            x = a.mul(a.mul(rest, x), rest)
            eps = newton_lift(a, x)
        out.append(eps)
        rest = a.sub(rest, eps)
    return out


@dataclass
class IdempotentSystem:
    """Complete orthogonal primitive idempotents grouped by isomorphism class of Ae."""

    algebra: FDAlgebra
    radical: list[tuple]
    quotient: Quotient
    blocks: list[Block]
    primitives: list[Idem]
    classes: list[list[int]]
    division_dims: list[int]
    class_idempotents: list[tuple] = dc_field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.classes)

    @property
    def p(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def basic(self) -> list[Idem]:
        return [self.primitives[c[0]] for c in self.classes]

    @property
    def is_basic(self) -> bool:
        return all(x == 1 for x in self.p)

    def basic_idempotent(self) -> tuple:
        a = self.algebra
        out = a.zero()
        for e in self.basic:
            out = a.add(out, e.element)
        return out

    def simple_dims(self) -> list[int]:
        """dim_K of each simple module Ae/Je."""
        return [self.p[i] * self.division_dims[i] for i in range(self.m)]


def primitive_idempotents(a: FDAlgebra, seed: int = DEFAULT_SEED) -> IdempotentSystem:
    key = ("idempotents", seed)
    if key in a._cache:
        return a._cache[key]
    rng = random.Random(seed)
    rad = jacobson_radical(a)
    quot = quotient_algebra(a, rad)
    b = quot.algebra
    blocks = semisimple_blocks(b, rng)
    flat = [e for bl in blocks for e in bl.primitives]
    lifted = lift_orthogonal(a, quot, flat)
    prims = []
    classes = []
    k = 0
    for ci, bl in enumerate(blocks):
        idx = []
        for _ in bl.primitives:
            prims.append(Idem(lifted[k], primitive=True, cls=ci))
            idx.append(k)
            k += 1
        classes.append(idx)
    for c in classes:
        prims[c[0]].basic_sum = True
    class_idems = []
    for c in classes:
        acc = a.zero()
        for i in c:
            acc = a.add(acc, prims[i].element)
        class_idems.append(acc)
    system = IdempotentSystem(a, rad, quot, blocks, prims, classes, [bl.center_dim for bl in blocks], class_idems)
    a._cache[key] = system
    return system


def is_local(a: FDAlgebra, seed: int = DEFAULT_SEED) -> bool:
    """A/J(A) is a division algebra."""
    if a.dim == 0:
        raise ValueError("zero algebra")
    rng = random.Random(seed)
    rad = jacobson_radical(a)
    if len(rad) == a.dim - 1:
        return True
    b = quotient_algebra(a, rad).algebra
    z = center(b)
    centrals = split_commutative(b, z, b.unit, rng)
    if len(centrals) > 1:
        return False
    dl = centrals[0][1]
    if b.dim == dl:
        return True
    if b.field.is_finite:
        return False
    span = b.all_basis()
    for attempt, x in enumerate(_candidates(b, span, rng)):
        if any(x) and not _is_unit_in_corner(b, x, span):
            return False
        if attempt > ATTEMPTS:
            raise UncertifiedError("End/J may be a non-commutative division algebra over QQ")
    return True
