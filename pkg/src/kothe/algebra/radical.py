"""Jacobson radical and quotient algebras.

Characteristic zero uses the radical of the trace form Tr(L_{xy}).  In
characteristic p the trace form is refined by the functionals

    g_i(a) = Tr(L~_a^(p^i)) / p^i  (mod p),   L~ an integer lift,

which are linear on the previous ideal; after floor(log_p n) refinements the
ideal is the radical (n = size of the faithful regular representation).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..exactla import echelon, left_kernel_rows, matmul_rows, pivots_of, reduce_against
from .core import FDAlgebra


def _log_floor(p: int, n: int) -> int:
    l = 0
    while p ** (l + 1) <= n:
        l += 1
    return l


def _int_matpow_trace(mat: np.ndarray, e: int, modulus: int) -> int:
    result = None
    base = mat % modulus
    while e:
        if e & 1:
            result = base if result is None else (result @ base) % modulus
        e >>= 1
        if e:
            base = (base @ base) % modulus
    return int(np.trace(result)) % modulus


def _g_values(a: FDAlgebra, basis: Sequence[Sequence], level: int) -> list:
    """g_level evaluated on each vector of ``basis``."""
    f = a.field
    n = a.dim
    if level == 0:
        traces = a._cache.get("trL")
        if traces is None:
            traces = []
            for k in range(n):
                t = f.zero
                for s in range(n):
                    for m, c in a.table[k][s]:
                        if m == s:
                            t += c
                traces.append(f.reduce(t))
            a._cache["trL"] = traces
        return [f.reduce(sum((c * t for c, t in zip(v, traces)), f.zero)) for v in basis]
    p = f.p
    modulus = p ** (level + 1)
    lb = a._cache.get("Lb_np")
    if lb is None:
        lb = np.array(a.left_basis_matrices(), dtype=np.int64)
        a._cache["Lb_np"] = lb
    out = []
    for v in basis:
        coeffs = np.array([int(x) for x in v], dtype=np.int64)
        mat = np.tensordot(coeffs, lb, axes=1) % modulus
        tr = _int_matpow_trace(mat, p**level, modulus)
        if tr % (p**level):
            raise ArithmeticError("p-power trace not divisible as expected; radical refinement failed")
        out.append((tr // p**level) % p)
    return out


def jacobson_radical(a: FDAlgebra) -> list[tuple]:
    """Reduced echelon basis of J(A)."""
    if "radical" in a._cache:
        return a._cache["radical"]
    f = a.field
    n = a.dim
    levels = _log_floor(f.p, n) if f.p else 0
    ideal = [a.basis(i) for i in range(n)]
    for level in range(levels + 1):
        if not ideal:
            break
        piv = pivots_of(ideal)
        gamma = _g_values(a, ideal, level)
        weight = [f.zero] * n
        for c, gv in zip(piv, gamma):
            weight[c] = gv
        # W[s][j] = g(component of b_s * b_j along the ideal basis)
        W = [[f.zero] * n for _ in range(n)]
        for s in range(n):
            row = a.table[s]
            for j in range(n):
                t = f.zero
                for k, c in row[j]:
                    if weight[k]:
                        t += c * weight[k]
                W[s][j] = f.reduce(t)
        H = matmul_rows(f, ideal, W, n)
        alphas = left_kernel_rows(f, H, n)
        ideal = echelon(f, (a.lincomb(al, ideal) for al in alphas), n)
    a._cache["radical"] = ideal
    return ideal


def ideal_power(a: FDAlgebra, ideal: Sequence[Sequence], k: int) -> list[tuple]:
    cur = a.span(ideal)
    for _ in range(k - 1):
        if not cur:
            break
        cur = a.span_products(cur, ideal)
    return cur


def nilpotency_index(a: FDAlgebra, ideal: Sequence[Sequence]) -> int | None:
    """Least k with I^k = 0, or None if I is not nilpotent."""
    ideal = a.span(ideal)
    if not ideal:
        return 0
    cur = a.span_products(ideal, ideal)
    for k in range(2, a.dim + 2):
        if not cur:
            return k
        cur = a.span_products(cur, ideal)
    return None


@dataclass
class Quotient:
    """A/I on the standard basis vectors complementing the echelon basis of I."""

    algebra: FDAlgebra
    source: FDAlgebra
    ideal: list[tuple]
    complement: list[int]

    def project(self, x: Sequence) -> tuple:
        piv = pivots_of(self.ideal)
        rem = reduce_against(self.source.field, self.ideal, piv, x)
        return tuple(rem[c] for c in self.complement)

    def lift(self, y: Sequence) -> tuple:
        out = [self.source.field.zero] * self.source.dim
        for c, v in zip(self.complement, y):
            out[c] = v
        return tuple(out)


def quotient_algebra(a: FDAlgebra, ideal: Sequence[Sequence]) -> Quotient:
    f = a.field
    ideal = a.span(ideal)
    piv = pivots_of(ideal)
    pset = set(piv)
    comp = [j for j in range(a.dim) if j not in pset]

    def proj(x):
        rem = reduce_against(f, ideal, piv, x)
        return [rem[c] for c in comp]

    table = []
    for i in comp:
        row = []
        for j in comp:
            row.append(list(enumerate(proj(a.dense_product(i, j)))))
        table.append(row)
    unit = proj(a.unit)
    b = FDAlgebra(f, table, unit, labels=[a.labels[c] for c in comp], name=f"{a.name}/I")
    return Quotient(b, a, ideal, comp)


def is_semisimple(a: FDAlgebra) -> bool:
    return not jacobson_radical(a)
