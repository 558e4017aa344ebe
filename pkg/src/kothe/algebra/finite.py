"""Exhaustive checks for algebras and modules over small finite fields.

These deliberately avoid the structure theory used elsewhere (radicals,
idempotents, composition factors) so they can serve as independent oracles.
"""
from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from ..exactla import echelon
from .core import FDAlgebra, is_full_idempotent
from .modules import AModule

ELEMENT_CAP = 1 << 16


class BruteForceCapError(ValueError):
    pass


def _size(field, dim: int) -> int:
    if not field.is_finite:
        raise BruteForceCapError("exhaustive search needs a finite field")
    n = field.p ** dim
    if n > ELEMENT_CAP:
        raise BruteForceCapError(f"{n} elements exceed the cap of {ELEMENT_CAP}")
    return n


def elements(a: FDAlgebra) -> Iterator[tuple]:
    _size(a.field, a.dim)
    return itertools.product(range(a.field.p), repeat=a.dim)


def vectors(m: AModule) -> Iterator[tuple]:
    _size(m.field, m.dim)
    return itertools.product(range(m.field.p), repeat=m.dim)


def is_nilpotent(a: FDAlgebra, x: Sequence) -> bool:
    cur = tuple(x)
    for _ in range(a.dim + 1):
        if not any(cur):
            return True
        cur = a.mul(cur, x)
    return not any(cur)


def brute_force_radical(a: FDAlgebra) -> list[tuple]:
    """{x : yx is nilpotent for every y}, as an echelon basis."""
    elems = list(elements(a))
    rad = [x for x in elems if all(is_nilpotent(a, a.mul(y, x)) for y in elems)]
    return a.span(rad)


def idempotents(a: FDAlgebra) -> list[tuple]:
    return [x for x in elements(a) if any(x) and a.mul(x, x) == tuple(x)]


def full_idempotents(a: FDAlgebra) -> list[tuple]:
    """Every nonzero idempotent e with AeA = A, in lexicographic order."""
    return [e for e in idempotents(a) if is_full_idempotent(e, a)]


def _principal_right(a: FDAlgebra, x: Sequence) -> tuple:
    return tuple(a.span(a.mul(tuple(x), a.basis(j)) for j in range(a.dim)))


def brute_force_principal_right_ideals(a: FDAlgebra) -> bool:
    """Every right ideal is xA for some x (right ideals = sums of principal ones)."""
    principal = {_principal_right(a, x) for x in elements(a)}
    known = set(principal)
    frontier = list(principal)
    plist = list(principal)
    while frontier:
        nxt = []
        for s in frontier:
            for t in plist:
                u = tuple(a.span(list(s) + list(t)))
                if u not in known:
                    known.add(u)
                    nxt.append(u)
        frontier = nxt
    return known == principal


def _grid(p: int, d: int) -> np.ndarray:
    """All of GF(p)^d as rows, in itertools.product order."""
    return np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(-1, d)


def _codes(rows: np.ndarray, p: int) -> np.ndarray:
    n = rows.shape[1]
    return rows @ (p ** np.arange(n - 1, -1, -1, dtype=np.int64))


def _span_codes(f, basis: Sequence[Sequence], n: int) -> frozenset:
    """Integer codes of every element of the span of ``basis``."""
    if not basis:
        return frozenset([0])
    b = np.array(basis, dtype=np.int64)
    return frozenset(_codes(_grid(f.p, len(basis)) @ b % f.p, f.p).tolist())


def _cyclic_map(m: AModule) -> dict[tuple, tuple]:
    """v -> echelon basis of Av, for every v in M."""
    f = m.field
    _size(f, m.dim)
    vs = _grid(f.p, m.dim)
    mats = np.array([mt.data for mt in m.action], dtype=np.int64).reshape(-1, m.dim, m.dim)
    imgs = np.einsum("kij,vj->vki", mats, vs) % f.p
    return {tuple(v): tuple(echelon(f, im.tolist(), m.dim)) for v, im in zip(vs.tolist(), imgs)}


def cyclic_submodules(m: AModule) -> list[tuple]:
    """Distinct submodules Av, v ranging over all of M (echelon bases)."""
    return list(dict.fromkeys(_cyclic_map(m).values()))


def maximal_cyclic_submodules(m: AModule) -> list[tuple]:
    """Cyclic submodules not properly contained in another cyclic submodule, largest first."""
    cmap = _cyclic_map(m)
    order = sorted((c for c in dict.fromkeys(cmap.values()) if c), key=len, reverse=True)
    dominated: set = set()
    maximal = []
    for d in order:
        if d in dominated:
            continue
        maximal.append(d)
        for u in (_grid(m.field.p, len(d)) @ np.array(d, dtype=np.int64) % m.field.p).tolist():
            c = cmap[tuple(u)]
            if c != d:
                dominated.add(c)
    return maximal


def _contained(f, small: Sequence, big: Sequence, n: int) -> bool:
    return len(echelon(f, list(small) + list(big), n)) == len(big)


def brute_force_min_generators(m: AModule) -> int:
    """Least k such that some k elements generate M, by exhaustive search.

    Generators may be enlarged to maximal cyclic submodules without losing
    generation, so only sums of those are explored (depth-first, pruning
    branches that cannot reach dim M and remembering failed partial sums)."""
    if m.dim == 0:
        return 0
    f = m.field
    n = m.dim
    maximal = maximal_cyclic_submodules(m)
    widest = len(maximal[0])
    failed: set = set()
    gains: dict = {}

    elems = [_span_codes(f, c, n) for c in maximal]
    log_p = {f.p**i: i for i in range(n + 1)}

    def expand(cur: tuple) -> list[int]:
        # dimension each maximal cyclic C would add: dim C - dim(C & cur), counting elements
        if cur not in gains:
            inside = _span_codes(f, cur, n)
            gains[cur] = [len(c) - log_p[len(e & inside)] for c, e in zip(maximal, elems)]
        return gains[cur]

    def reach(cur: tuple, k: int, start: int) -> bool:
        # generators are taken in list order, so each set is tried once
        if len(cur) == n:
            return True
        if k == 0 or (cur, k, start) in failed:
            return False
        g = expand(cur)
        best = sorted(g[start:], reverse=True)[:k]
        if len(cur) + sum(best) >= n:
            for i in range(start, len(maximal)):
                if g[i] and reach(tuple(echelon(f, list(cur) + list(maximal[i]), n)), k - 1, i + 1):
                    return True
        failed.add((cur, k, start))
        return False

    k = -(-n // widest)
    while not reach((), k, 0):
        k += 1
    return k


def brute_force_is_uniserial(m: AModule) -> bool:
    """Submodules form a chain iff the cyclic submodules do."""
    f = m.field
    cyc = sorted(cyclic_submodules(m), key=len)
    for i, c in enumerate(cyc):
        for d in cyc[i + 1:]:
            if not _contained(f, c, d, m.dim):
                return False
    return True


def brute_force_submodules(m: AModule) -> set[tuple]:
    """All submodules, as sums of cyclic ones."""
    f = m.field
    cyc = cyclic_submodules(m)
    known = set(cyc)
    frontier = list(cyc)
    while frontier:
        nxt = []
        for s in frontier:
            for t in cyc:
                u = tuple(echelon(f, list(s) + list(t), m.dim))
                if u not in known:
                    known.add(u)
                    nxt.append(u)
        frontier = nxt
    return known

