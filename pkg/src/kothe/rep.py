"""Quiver representations: morphisms, radical/top/socle, decomposition, BGP reflections, Gabriel enumeration."""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.core import FDAlgebra, enumerate_paths, matrix_algebra, path_algebra
from .algebra.idempotents import DEFAULT_SEED, is_local, primitive_idempotents
from .algebra.modules import AModule, ModuleInvariants
from .exactla import Field, Mat, echelon, kernel_rows, left_kernel_rows, matvec, pivots_of, coordinates
from .quiver import NotDynkinError, ParseError, Quiver, _Parser, _parse_quiver_block, _tokenize, classify_dynkin, format_quiver, positive_roots, simple_reflection

ISO_TRIES = 200
EXHAUSTIVE_LIMIT = 1 << 16


class RepError(ValueError):
    pass


@dataclass(frozen=True)
class Rep:
    """A representation: a space of dimension ``dim[v]`` at each vertex and a matrix per arrow."""

    quiver: Quiver
    field: Field
    dim: tuple[int, ...]
    maps: tuple[Mat, ...]
    name: str = ""

    def __post_init__(self) -> None:
        q = self.quiver
        if len(self.dim) != q.n or any(d < 0 for d in self.dim):
            raise RepError("dimension vector does not match the quiver")
        if len(self.maps) != len(q.arrows):
            raise RepError("need one matrix per arrow")
        for a, m in zip(q.arrows, self.maps):
            want = (self.dim[q.index(a.target)], self.dim[q.index(a.source)])
            if m.shape != want:
                raise RepError(f"map {a.label} has shape {m.shape}, expected {want}")
            if m.field != self.field:
                raise RepError(f"map {a.label} lives over {m.field}, not {self.field}")

    @classmethod
    def from_maps(cls, quiver: Quiver, field: Field, dim: Sequence[int], maps: dict | Sequence = (), name: str = "") -> "Rep":
        """Build from lists of rows; missing arrows get zero maps."""
        dim = tuple(int(d) for d in dim)
        if isinstance(maps, dict):
            unknown = set(maps) - {a.label for a in quiver.arrows}
            if unknown:
                raise RepError(f"unknown arrow {sorted(unknown)[0]!r}")
            seq = [maps.get(a.label) for a in quiver.arrows]
        else:
            seq = list(maps) or [None] * len(quiver.arrows)
        mats = []
        for a, m in zip(quiver.arrows, seq):
            r, c = dim[quiver.index(a.target)], dim[quiver.index(a.source)]
            if m is None:
                mats.append(Mat.zeros(field, r, c))
            elif isinstance(m, Mat):
                mats.append(m)
            else:
                rows = [list(x) for x in m]
                if r == 0 and not rows:
                    mats.append(Mat.zeros(field, 0, c))
                else:
                    mats.append(Mat(field, rows, r, c))
        return cls(quiver, field, dim, tuple(mats), name)

    def __str__(self) -> str:
        return self.name or "(" + ",".join(map(str, self.dim)) + ")"

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def map(self, label: str) -> Mat:
        return self.maps[[a.label for a in self.quiver.arrows].index(label)]

    def renamed(self, name: str) -> "Rep":
        return Rep(self.quiver, self.field, self.dim, self.maps, name)


@dataclass(frozen=True)
class RepHom:
    source: Rep
    target: Rep
    blocks: tuple[Mat, ...]

    def is_invertible(self) -> bool:
        return self.source.dim == self.target.dim and all(b.is_invertible() for b in self.blocks)

    def check(self) -> bool:
        q = self.source.quiver
        for a, ms, mt in zip(q.arrows, self.source.maps, self.target.maps):
            v, w = q.index(a.source), q.index(a.target)
            if self.blocks[w] @ ms != mt @ self.blocks[v]:
                return False
        return True


def _same(x: Rep, y: Rep) -> None:
    if x.quiver.vertices != y.quiver.vertices or x.quiver.arrows != y.quiver.arrows:
        raise RepError("representations of different quivers")
    if x.field != y.field:
        raise RepError("representations over different fields")


def _offsets(dims: Sequence[int]) -> list[int]:
    return list(itertools.accumulate(dims, initial=0))


def hom_space(x: Rep, y: Rep) -> list[RepHom]:
    """Basis of Hom(x, y), solving the intertwining equations."""
    _same(x, y)
    q, f = x.quiver, x.field
    sizes = [y.dim[v] * x.dim[v] for v in range(q.n)]
    off = _offsets(sizes)
    nvar = off[-1]

    def var(v, r, c):
        return off[v] + r * x.dim[v] + c

    rows = []
    for a, mx, my in zip(q.arrows, x.maps, y.maps):
        v, w = q.index(a.source), q.index(a.target)
        # (B_w mx - my B_v)[r][c] = 0
        for r in range(y.dim[w]):
            for c in range(x.dim[v]):
                eq = [f.zero] * nvar
                for k in range(x.dim[w]):
                    if mx.data[k][c]:
                        i = var(w, r, k)
                        eq[i] = f.reduce(eq[i] + mx.data[k][c])
                for k in range(y.dim[v]):
                    if my.data[r][k]:
                        i = var(v, k, c)
                        eq[i] = f.reduce(eq[i] - my.data[r][k])
                if any(eq):
                    rows.append(eq)
    out = []
    for sol in kernel_rows(f, rows, nvar):
        blocks = []
        for v in range(q.n):
            seg = sol[off[v]:off[v + 1]]
            blocks.append(Mat._raw(f, [tuple(seg[r * x.dim[v]:(r + 1) * x.dim[v]]) for r in range(y.dim[v])], y.dim[v], x.dim[v]))
        out.append(RepHom(x, y, tuple(blocks)))
    return out


def combine(homs: Sequence[RepHom], coeffs: Sequence) -> RepHom:
    x, y = homs[0].source, homs[0].target
    f = x.field
    blocks = []
    for v in range(x.quiver.n):
        acc = Mat.zeros(f, y.dim[v], x.dim[v])
        for c, h in zip(coeffs, homs):
            if c:
                acc = acc + h.blocks[v].scale(c)
        blocks.append(acc)
    return RepHom(x, y, tuple(blocks))


def find_isomorphism(x: Rep, y: Rep, seed: int = DEFAULT_SEED, tries: int = ISO_TRIES) -> RepHom | None:
    """An invertible hom x -> y, or None.

    Exhaustive when Hom is small and finite; otherwise random combinations (a
    Schwartz-Zippel argument over QQ, repeated sampling over GF(p))."""
    _same(x, y)
    if x.dim != y.dim:
        return None
    if x.is_zero():
        return RepHom(x, y, tuple(Mat.zeros(x.field, 0, 0) for _ in x.dim))
    basis = hom_space(x, y)
    if len(hom_space(y, x)) != len(basis) or not basis:
        return None
    f = x.field
    if f.is_finite and f.p ** len(basis) <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(f.p), repeat=len(basis)):
            h = combine(basis, coeffs)
            if h.is_invertible():
                return h
        return None
    rng = random.Random(seed)
    bound = 10**6 if not f.is_finite else f.p
    for _ in range(tries):
        h = combine(basis, [f.random(rng, bound) for _ in basis])
        if h.is_invertible():
            return h
    return None


def is_isomorphic(x: Rep, y: Rep, seed: int = DEFAULT_SEED) -> bool:
    return find_isomorphism(x, y, seed) is not None


# ---------------------------------------------------------------------------
# subrepresentations


def _span_images(r: Rep, subspaces: Sequence[Sequence[tuple]]) -> list[list[tuple]]:
    """J * U: at w, the sum of images of the incoming maps applied to U_v."""
    q, f = r.quiver, r.field
    out: list[list] = [[] for _ in range(q.n)]
    for a, m in zip(q.arrows, r.maps):
        v, w = q.index(a.source), q.index(a.target)
        out[w].extend(matvec(f, m.data, u) for u in subspaces[v])
    return [echelon(f, vs, r.dim[w]) for w, vs in enumerate(out)]


def _full(r: Rep) -> list[list[tuple]]:
    f = r.field
    return [[tuple(f.one if i == j else f.zero for j in range(d)) for i in range(d)] for d in r.dim]


def subrep(r: Rep, subspaces: Sequence[Sequence[tuple]], name: str = "") -> Rep:
    """The subrepresentation on the given (invariant) subspaces, in their echelon bases."""
    q, f = r.quiver, r.field
    bases = [echelon(f, s, d) for s, d in zip(subspaces, r.dim)]
    maps = []
    for a, m in zip(q.arrows, r.maps):
        v, w = q.index(a.source), q.index(a.target)
        piv = pivots_of(bases[w])
        cols = []
        for u in bases[v]:
            try:
                cols.append(coordinates(f, bases[w], matvec(f, m.data, u), piv))
            except ValueError:
                raise RepError("subspaces are not invariant") from None
        maps.append(Mat.from_columns(f, cols, len(bases[w])) if cols else Mat.zeros(f, len(bases[w]), 0))
    return Rep(q, f, tuple(len(b) for b in bases), tuple(maps), name)


def radical(r: Rep) -> Rep:
    return subrep(r, _span_images(r, _full(r)), name=f"rad {r}")


def radical_subspaces(r: Rep) -> list[list[tuple]]:
    return _span_images(r, _full(r))


def socle_subspaces(r: Rep) -> list[list[tuple]]:
    q, f = r.quiver, r.field
    out = []
    for v in range(q.n):
        rows = []
        for a, m in zip(q.arrows, r.maps):
            if q.index(a.source) == v:
                rows.extend(m.data)
        if rows:
            out.append(echelon(f, kernel_rows(f, rows, r.dim[v]), r.dim[v]))
        else:
            out.append(_full(r)[v])
    return out


def socle(r: Rep) -> Rep:
    return subrep(r, socle_subspaces(r), name=f"soc {r}")


def c_total(r: Rep) -> tuple[int, ...]:
    """Composition multiplicities; over an acyclic quiver these are the dimensions."""
    return r.dim


def c_top(r: Rep) -> tuple[int, ...]:
    return tuple(d - len(s) for d, s in zip(r.dim, radical_subspaces(r)))


def c_soc(r: Rep) -> tuple[int, ...]:
    return tuple(len(s) for s in socle_subspaces(r))


def radical_layers(r: Rep) -> list[tuple[int, ...]]:
    """Dimension vectors of J^k M / J^{k+1} M."""
    cur = _full(r)
    layers = []
    while any(cur):
        nxt = _span_images(r, cur)
        if [len(s) for s in nxt] == [len(s) for s in cur]:
            raise RepError("radical series does not terminate (quiver has an oriented cycle)")
        layers.append(tuple(len(a) - len(b) for a, b in zip(cur, nxt)))
        cur = nxt
    return layers


def is_uniserial(r: Rep) -> bool:
    return all(sum(layer) <= 1 for layer in radical_layers(r))


# ---------------------------------------------------------------------------
# endomorphisms, indecomposability, decomposition


def end_algebra(r: Rep) -> tuple[FDAlgebra, list[RepHom]]:
    """End(r) as a structure-constant algebra (endomorphisms as block-diagonal matrices)."""
    basis = hom_space(r, r)
    f = r.field
    from .exactla import block_diag

    mats = [block_diag(f, h.blocks) for h in basis]
    alg, _ = matrix_algebra(f, mats, name=f"End({r})")
    return alg, basis


def is_indecomposable(r: Rep, seed: int = DEFAULT_SEED) -> bool:
    if r.is_zero():
        raise RepError("the zero representation is neither decomposable nor indecomposable")
    alg, _ = end_algebra(r)
    return is_local(alg, seed)


def _image_subspaces(r: Rep, h: RepHom) -> list[list[tuple]]:
    f = r.field
    return [echelon(f, (tuple(col) for col in b.columns()), d) for b, d in zip(h.blocks, r.dim)]


def decompose(r: Rep, seed: int = DEFAULT_SEED) -> list[tuple[Rep, int]]:
    """Indecomposable summands with multiplicities.

    Uses a complete set of primitive orthogonal idempotents of End(r); summands
    in one block of End/J(End) are isomorphic, so each class is reported once."""
    if r.is_zero():
        return []
    alg, basis = end_algebra(r)
    system = primitive_idempotents(alg, seed)
    out = []
    for k, cls in enumerate(system.classes):
        eps = system.primitives[cls[0]].element
        summand = subrep(r, _image_subspaces(r, combine(basis, eps)), name=f"{r}[{k}]")
        out.append((summand, len(cls)))
    return out


def direct_sum(*reps: Rep, name: str = "") -> Rep:
    q, f = reps[0].quiver, reps[0].field
    for x in reps[1:]:
        _same(reps[0], x)
    from .exactla import block_diag

    dim = tuple(sum(x.dim[v] for x in reps) for v in range(q.n))
    maps = []
    for i in range(len(q.arrows)):
        maps.append(block_diag(f, [x.maps[i] for x in reps]) if reps else None)
    return Rep(q, f, dim, tuple(maps), name or "+".join(str(x) for x in reps))


def invariants(r: Rep, seed: int = DEFAULT_SEED) -> ModuleInvariants:
    top = c_top(r)
    return ModuleInvariants(
        dim=r.dim,
        length=r.total_dim,
        c_total=c_total(r),
        c_top=top,
        c_soc=c_soc(r),
        is_indecomposable=is_indecomposable(r, seed) if r.total_dim else None,
        is_uniserial=is_uniserial(r),
        is_multiplicity_free_top=all(c <= 1 for c in top),
    )


# ---------------------------------------------------------------------------
# standard representations


def simple(q: Quiver, field: Field, v: str) -> Rep:
    i = q.index(v)
    return Rep.from_maps(q, field, [1 if j == i else 0 for j in range(q.n)], name=f"S{v}")


def projective(q: Quiver, field: Field, v: str) -> Rep:
    """P_v = A e_v: basis the paths starting at v."""
    if not q.is_acyclic():
        raise RepError("projectives are finite-dimensional only for acyclic quivers")
    paths = [p for p in enumerate_paths(q) if p.source == v]
    by_vertex = {w: [p for p in paths if p.target == w] for w in q.vertices}
    dim = [len(by_vertex[w]) for w in q.vertices]
    maps = {}
    for a in q.arrows:
        src, dst = by_vertex[a.source], by_vertex[a.target]
        rows = [[0] * len(src) for _ in dst]
        for c, p in enumerate(src):
            ext = p.arrows + (a.label,)
            r = next(i for i, t in enumerate(dst) if t.arrows == ext)
            rows[r][c] = 1
        maps[a.label] = rows
    return Rep.from_maps(q, field, dim, maps, name=f"P{v}")


def injective(q: Quiver, field: Field, v: str) -> Rep:
    """I_v: basis the paths ending at v (dual of the projective of the opposite quiver)."""
    p = projective(q.opposite(), field, v)
    maps = {a.label: m.T for a, m in zip(q.arrows, p.maps)}
    return Rep.from_maps(q, field, p.dim, maps, name=f"I{v}")


# ---------------------------------------------------------------------------
# reflection functors


def reflect_plus(r: Rep, v: str) -> Rep:
    """C+ at a sink v: new space ker(sum of incoming maps); the result lives on the reflected quiver."""
    q, f = r.quiver, r.field
    if not q.is_sink(v):
        raise RepError(f"vertex {v} is not a sink")
    vi = q.index(v)
    incoming = [(k, a) for k, a in enumerate(q.arrows) if a.target == v]
    srcs = [q.index(a.source) for _, a in incoming]
    off = _offsets([r.dim[s] for s in srcs])
    total = off[-1]
    h = [[f.zero] * total for _ in range(r.dim[vi])]
    for j, (k, _) in enumerate(incoming):
        m = r.maps[k].data
        for row in range(r.dim[vi]):
            for c in range(r.dim[srcs[j]]):
                h[row][off[j] + c] = m[row][c]
    ker = kernel_rows(f, h, total) if r.dim[vi] else [
        tuple(f.one if i == j else f.zero for j in range(total)) for i in range(total)
    ]
    kdim = len(ker)
    nq = q.reflect(v)
    dim = list(r.dim)
    dim[vi] = kdim
    maps = list(r.maps)
    for j, (k, _) in enumerate(incoming):
        cols = [vec[off[j]:off[j + 1]] for vec in ker]
        maps[k] = Mat.from_columns(f, cols, r.dim[srcs[j]]) if cols else Mat.zeros(f, r.dim[srcs[j]], 0)
    return Rep(nq, f, tuple(dim), tuple(maps), name=f"C+{v}({r})")


def reflect_minus(r: Rep, v: str) -> Rep:
    """C- at a source v: new space coker(sum of outgoing maps)."""
    q, f = r.quiver, r.field
    if not q.is_source(v):
        raise RepError(f"vertex {v} is not a source")
    vi = q.index(v)
    outgoing = [(k, a) for k, a in enumerate(q.arrows) if a.source == v]
    tgts = [q.index(a.target) for _, a in outgoing]
    off = _offsets([r.dim[t] for t in tgts])
    total = off[-1]
    h = [[f.zero] * r.dim[vi] for _ in range(total)]
    for j, (k, _) in enumerate(outgoing):
        m = r.maps[k].data
        for row in range(r.dim[tgts[j]]):
            h[off[j] + row] = list(m[row])
    proj = left_kernel_rows(f, h, r.dim[vi]) if r.dim[vi] else [
        tuple(f.one if i == j else f.zero for j in range(total)) for i in range(total)
    ]
    c = len(proj)
    nq = q.reflect(v)
    dim = list(r.dim)
    dim[vi] = c
    maps = list(r.maps)
    for j, (k, _) in enumerate(outgoing):
        rows = [row[off[j]:off[j + 1]] for row in proj]
        maps[k] = Mat(f, rows, c, r.dim[tgts[j]]) if c else Mat.zeros(f, 0, r.dim[tgts[j]])
    return Rep(nq, f, tuple(dim), tuple(maps), name=f"C-{v}({r})")


def reflect(r: Rep, v: str) -> Rep:
    """C+ if v is a sink, C- if v is a source."""
    if r.quiver.is_sink(v):
        return reflect_plus(r, v)
    if r.quiver.is_source(v):
        return reflect_minus(r, v)
    raise RepError(f"vertex {v} is neither a sink nor a source")


def admissible_sink_order(q: Quiver) -> list[str]:
    """v1, v2, ... with v_k a sink after reflecting v1..v_{k-1}."""
    topo = q.topological_order()
    if topo is None:
        raise RepError("quiver has an oriented cycle")
    return list(reversed(topo))


def _reflection_word(q: Quiver, root: Sequence[int]) -> tuple[list[str], str]:
    """Sinks w_1..w_t to reflect at, and the vertex v with s_{w_t}...s_{w_1}(root) = e_v at a sink."""
    order = admissible_sink_order(q)
    d = tuple(root)
    cur = q
    word: list[str] = []
    limit = 2 * q.n * (len(positive_roots(q)) + 2)
    for step in range(limit):
        v = order[step % q.n]
        i = q.index(v)
        if sum(d) == 1 and d[i] == 1:
            return word, v
        d = simple_reflection(cur, i, d)
        if any(x < 0 for x in d):
            raise RepError(f"{tuple(root)} is not a positive root")
        cur = cur.reflect(v)
        word.append(v)
    raise RepError("reflection sequence did not reach a simple root")


def build_indecomposable(q: Quiver, field: Field, root: Sequence[int], name: str = "") -> Rep:
    """The indecomposable with dimension vector ``root``, as C-...C-(simple)."""
    word, v = _reflection_word(q, root)
    cur = q
    quivers = [q]
    for w in word:
        cur = cur.reflect(w)
        quivers.append(cur)
    r = simple(cur, field, v)
    for w in reversed(word):
        r = reflect_minus(r, w)
    if r.quiver.arrows != q.arrows:
        raise RepError("reflection sequence did not return to the original orientation")
    return Rep(q, field, r.dim, r.maps, name or "M(" + ",".join(map(str, root)) + ")")


def enumerate_indecomposables(q: Quiver, field: Field, seed: int = DEFAULT_SEED, certify: bool = True) -> list[Rep]:
    """One indecomposable per positive root, in root order (height, then lexicographic)."""
    cls = classify_dynkin(q)
    if not cls.is_dynkin:
        raise NotDynkinError(f"quiver {q.name} is not Dynkin ({cls.reason})")
    out = []
    for root in positive_roots(q):
        r = build_indecomposable(q, field, root)
        if r.dim != tuple(root):
            raise RepError(f"constructed dimension {r.dim} differs from root {root}")
        if certify and not is_indecomposable(r, seed):
            raise RepError(f"construction for {root} is decomposable")
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# conversion to modules over the path algebra


def to_module(r: Rep, algebra: FDAlgebra | None = None) -> AModule:
    """The left module over the path algebra: paths act by composing arrow maps."""
    q, f = r.quiver, r.field
    a = algebra or path_algebra(q, f)
    if a.paths is None:
        raise RepError("algebra is not a path algebra")
    off = _offsets(r.dim)
    n = off[-1]
    mats = []
    for p in a.paths:
        s, t = q.index(p.source), q.index(p.target)
        m = Mat.identity(f, r.dim[s])
        for lab in p.arrows:
            m = r.map(lab) @ m
        rows = [[f.zero] * n for _ in range(n)]
        for i in range(r.dim[t]):
            for j in range(r.dim[s]):
                rows[off[t] + i][off[s] + j] = m.data[i][j]
        mats.append(Mat._raw(f, rows, n, n))
    return AModule(a, n, mats, name=str(r), check=False)


def from_module(m: AModule, quiver: Quiver) -> Rep:
    """Inverse of to_module: the vertex spaces are e_v M."""
    a = m.algebra
    f = m.field
    if a.paths is None:
        raise RepError("module is not over a path algebra")
    idx = {p.label: k for k, p in enumerate(a.paths)}
    spaces = [m.image_under(a.basis(idx[f"e{v}"]), m.all_vectors()) for v in quiver.vertices]
    maps = []
    for arr in quiver.arrows:
        s, t = quiver.index(arr.source), quiver.index(arr.target)
        rows = m.action[idx[arr.label]].data
        piv = pivots_of(spaces[t])
        cols = [coordinates(f, spaces[t], matvec(f, rows, u), piv) for u in spaces[s]]
        maps.append(Mat.from_columns(f, cols, len(spaces[t])) if cols else Mat.zeros(f, len(spaces[t]), 0))
    return Rep(quiver, f, tuple(len(s) for s in spaces), tuple(maps), m.name)


# ---------------------------------------------------------------------------
# text format


def _parse_scalar(ps: _Parser, field: Field):
    neg = False
    if ps.at("CHAR", "-"):
        ps.i += 1
        neg = True
    t = ps.cur
    if t.kind != "IDENT" or not t.text.isdigit():
        ps.error(f"expected a number, found {t.text or 'end of input'!r}")
    ps.i += 1
    val = Fraction(int(t.text))
    if ps.at("CHAR", "/"):
        ps.i += 1
        d = ps.cur
        if d.kind != "IDENT" or not d.text.isdigit() or int(d.text) == 0:
            ps.error("expected a nonzero denominator")
        ps.i += 1
        val /= int(d.text)
    if neg:
        val = -val
    try:
        return field(val if val.denominator != 1 else int(val))
    except (ZeroDivisionError, ValueError) as exc:
        raise ParseError(str(exc), t.line, t.col) from None


def _parse_matrix(ps: _Parser, field: Field) -> list[list]:
    ps.expect("CHAR", "[")
    rows = []
    if ps.at("CHAR", "]"):
        ps.i += 1
        return rows
    while True:
        ps.expect("CHAR", "[")
        row = []
        if not ps.at("CHAR", "]"):
            row.append(_parse_scalar(ps, field))
            while ps.at("CHAR", ","):
                ps.i += 1
                row.append(_parse_scalar(ps, field))
        ps.expect("CHAR", "]")
        rows.append(row)
        if ps.at("CHAR", ","):
            ps.i += 1
            continue
        break
    ps.expect("CHAR", "]")
    return rows


def _parse_rep_block(ps: _Parser, q: Quiver, field: Field) -> Rep:
    start = ps.expect("IDENT", "rep")
    name = ""
    if ps.at("IDENT"):
        name = ps.expect("IDENT").text
    ps.expect("{")
    ps.expect("IDENT", "dim")
    ps.expect(":")
    dims = []
    while ps.at("IDENT"):
        t = ps.expect("IDENT")
        if not t.text.isdigit():
            ps.error(f"expected a dimension, found {t.text!r}", t)
        dims.append(int(t.text))
    if len(dims) != q.n:
        ps.error(f"dimension vector has {len(dims)} entries, quiver has {q.n} vertices")
    ps.expect(";")
    maps: dict[str, list] = {}
    labels = {a.label for a in q.arrows}
    while ps.at("IDENT", "map"):
        ps.i += 1
        lt = ps.expect("IDENT")
        if lt.text not in labels:
            ps.error(f"unknown arrow {lt.text!r}", lt)
        if lt.text in maps:
            ps.error(f"map {lt.text!r} given twice", lt)
        ps.expect(":")
        mt = ps.cur
        rows = _parse_matrix(ps, field)
        a = q.arrow(lt.text)
        r, c = dims[q.index(a.target)], dims[q.index(a.source)]
        if len(rows) != r or any(len(x) != c for x in rows):
            if not (r == 0 and not rows):
                ps.error(f"map {lt.text!r} must be {r}x{c}", mt)
        ps.expect(";")
        maps[lt.text] = rows
    ps.expect("}")
    try:
        return Rep.from_maps(q, field, dims, maps, name=name)
    except RepError as exc:
        raise ParseError(str(exc), start.line, start.col) from None


def parse_rep_document(text: str, field: Field) -> tuple[Quiver, list[Rep]]:
    """A quiver block followed by zero or more ``rep`` blocks."""
    ps = _Parser(_tokenize(text))
    q = _parse_quiver_block(ps)
    reps = []
    while ps.at("IDENT", "rep"):
        reps.append(_parse_rep_block(ps, q, field))
    ps.expect("EOF")
    return q, reps


def _format_matrix(m: Mat) -> str:
    r, c = m.shape
    if r == 0:
        return "[]"
    return "[" + ",".join("[" + ",".join(m.field.format(x) for x in row) + "]" for row in m.data) + "]"


def format_rep(r: Rep) -> str:
    head = f"rep {r.name} {{" if r.name and _plain_name(r.name) else "rep {"
    parts = [head, "  dim: " + " ".join(map(str, r.dim)) + ";"]
    for a, m in zip(r.quiver.arrows, r.maps):
        parts.append(f"  map {a.label}: {_format_matrix(m)};")
    parts.append("}")
    return "\n".join(parts) + "\n"


def _plain_name(name: str) -> bool:
    return re.fullmatch(r"[A-Za-z0-9_][A-Za-z0-9_.']*", name) is not None and name not in {"rep", "dim", "map"}


def format_rep_document(q: Quiver, reps: Iterable[Rep]) -> str:
    return format_quiver(q) + "".join(format_rep(r) for r in reps)
