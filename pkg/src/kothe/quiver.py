"""Finite quivers: DSL parsing and printing, Dynkin classification, positive roots."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

ROOT_CAP = 100_000


class ParseError(ValueError):
    """Input text does not follow the grammar; carries a 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex label")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate arrow label")
        if set(labels) & set(self.vertices):
            raise ValueError("arrow label clashes with a vertex label")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.label} refers to an undeclared vertex")

    @classmethod
    def build(cls, name: str, vertices: Sequence, arrows: Sequence[tuple]) -> "Quiver":
        """``arrows`` as (label, source, target) triples; labels may be ints."""
        return cls(name, tuple(str(v) for v in vertices), tuple(Arrow(str(l), str(s), str(t)) for l, s, t in arrows))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        return self.vertices.index(vertex)

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def arrows_into(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def arrows_out_of(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def is_sink(self, v: str) -> bool:
        return not self.arrows_out_of(v)

    def is_source(self, v: str) -> bool:
        return not self.arrows_into(v)

    def has_loop(self) -> bool:
        return any(a.source == a.target for a in self.arrows)

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> list[str] | None:
        """Vertices ordered so that every arrow goes forward; None if there is an oriented cycle."""
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
        return order if len(order) == self.n else None

    def reflect(self, v: str) -> "Quiver":
        """Reverse every arrow incident to ``v`` (labels kept)."""
        arrows = tuple(Arrow(a.label, a.target, a.source) if v in (a.source, a.target) else a for a in self.arrows)
        return Quiver(self.name, self.vertices, arrows)

    def opposite(self) -> "Quiver":
        return Quiver(self.name + "_op", self.vertices, tuple(Arrow(a.label, a.target, a.source) for a in self.arrows))

    def underlying_edges(self) -> list[tuple[int, int]]:
        return [(self.index(a.source), self.index(a.target)) for a in self.arrows]

    def euler_form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Symmetrised form (x, y) = 2 sum x_i y_i - sum_arrows (x_s y_t + x_t y_s)."""
        val = 2 * sum(a * b for a, b in zip(x, y))
        for s, t in self.underlying_edges():
            val -= x[s] * y[t] + x[t] * y[s]
        return val

    def tits_form(self, d: Sequence[int]) -> int:
        return sum(x * x for x in d) - sum(d[s] * d[t] for s, t in self.underlying_edges())


# ---------------------------------------------------------------------------
# DSL

_TOKEN = re.compile(r"\s+|#[^\n]*|->|[{};:]|[A-Za-z0-9_][A-Za-z0-9_.']*|\S")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        s = m.group(0)
        if not (s[0].isspace() or s[0] == "#"):
            if s in ("->", "{", "}", ";", ":"):
                kind = s
            elif re.fullmatch(r"[A-Za-z0-9_][A-Za-z0-9_.']*", s):
                kind = "IDENT"
            else:
                kind = "CHAR"
            toks.append(_Tok(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    toks.append(_Tok("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.cur
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, kind: str, text: str | None = None) -> _Tok:
        t = self.cur
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            got = t.text or "end of input"
            self.error(f"expected {want!r}, found {got!r}")
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.cur
        return t.kind == kind and (text is None or t.text == text)


def _parse_quiver_block(ps: _Parser) -> Quiver:
    ps.expect("IDENT", "quiver")
    name = ps.expect("IDENT").text
    ps.expect("{")
    ps.expect("IDENT", "vertices")
    ps.expect(":")
    vertices: list[str] = []
    vtoks: dict[str, _Tok] = {}
    while ps.at("IDENT"):
        t = ps.expect("IDENT")
        if t.text in vtoks:
            ps.error(f"duplicate vertex label {t.text!r}", t)
        vtoks[t.text] = t
        vertices.append(t.text)
    if not vertices:
        ps.error("expected at least one vertex")
    ps.expect(";")
    ps.expect("IDENT", "arrows")
    ps.expect(":")
    arrows: list[Arrow] = []
    seen: set[str] = set()
    while ps.at("IDENT"):
        lt = ps.expect("IDENT")
        if lt.text in seen or lt.text in vtoks:
            ps.error(f"duplicate label {lt.text!r}", lt)
        seen.add(lt.text)
        ps.expect(":")
        st = ps.expect("IDENT")
        ps.expect("->")
        tt = ps.expect("IDENT")
        for t in (st, tt):
            if t.text not in vtoks:
                ps.error(f"arrow {lt.text!r} refers to undeclared vertex {t.text!r}", t)
        ps.expect(";")
        arrows.append(Arrow(lt.text, st.text, tt.text))
    ps.expect("}")
    return Quiver(name, tuple(vertices), tuple(arrows))


def parse_quiver(text: str) -> Quiver:
    """Parse a document consisting of exactly one quiver block."""
    ps = _Parser(_tokenize(text))
    q = _parse_quiver_block(ps)
    ps.expect("EOF")
    return q


def format_quiver(q: Quiver) -> str:
    lines = [f"quiver {q.name} {{", "  vertices: " + " ".join(q.vertices) + ";", "  arrows:"]
    for a in q.arrows:
        lines.append(f"    {a.label}: {a.source} -> {a.target};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Dynkin classification


@dataclass(frozen=True)
class DynkinComponent:
    kind: str  # "A", "D", "E"
    rank: int
    labels: tuple[tuple[str, int], ...]  # vertex label -> standard node number

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"


@dataclass(frozen=True)
class DynkinClass:
    """Dynkin type of the underlying graph.

    ``components`` is empty exactly when the graph is not a disjoint union of
    ADE diagrams; a connected Dynkin quiver has a single component.
    """

    components: tuple[DynkinComponent, ...] = ()
    reason: str = ""
    has_oriented_cycle: bool = False

    @property
    def is_dynkin(self) -> bool:
        return bool(self.components)

    @property
    def variant(self) -> str:
        if not self.components:
            return "NotDynkin"
        return "+".join(c.name for c in self.components)

    def relabeling(self) -> dict[str, int]:
        out = {}
        for c in self.components:
            out.update(dict(c.labels))
        return out

    def __str__(self) -> str:
        return self.variant


def _components(n: int, adj: list[set[int]]) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in sorted(adj[v]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _arm(adj: list[set[int]], center: int, start: int) -> list[int]:
    arm, prev, cur = [start], center, start
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return arm
        prev, cur = cur, nxt[0]
        arm.append(cur)


def _classify_tree(comp: list[int], adj: list[set[int]], names: Sequence[str]) -> DynkinComponent | None:
    k = len(comp)
    degs = {v: len(adj[v]) for v in comp}
    if any(d > 3 for d in degs.values()):
        return None
    branch = [v for v in comp if degs[v] == 3]
    if not branch:
        # path: number from the end declared first
        ends = [v for v in comp if degs[v] <= 1]
        start = min(ends)
        order = [start]
        if k > 1:
            order += _arm(adj, start, next(iter(adj[start])))
        return DynkinComponent("A", k, tuple((names[v], i + 1) for i, v in enumerate(order)))
    if len(branch) > 1:
        return None
    c = branch[0]
    arms = [_arm(adj, c, w) for w in sorted(adj[c])]
    arms.sort(key=lambda a: (len(a), a[0]))
    lens = tuple(len(a) for a in arms)
    labels: dict[int, int] = {}
    if lens[0] == 1 and lens[1] == 1:
        rank = k
        labels[c] = rank - 2
        labels[arms[0][0]] = rank - 1
        labels[arms[1][0]] = rank
        for i, v in enumerate(arms[2]):
            labels[v] = rank - 3 - i
        kind = "D"
    elif lens[0] == 1 and lens[1] == 2 and lens[2] in (2, 3, 4):
        rank = k
        kind = "E"
        labels[c] = 4
        labels[arms[0][0]] = 2
        labels[arms[1][0]] = 3
        labels[arms[1][1]] = 1
        for i, v in enumerate(arms[2]):
            labels[v] = 5 + i
    else:
        return None
    return DynkinComponent(kind, rank, tuple((names[v], labels[v]) for v in sorted(labels, key=lambda v: labels[v])))


def classify_dynkin(q: Quiver) -> DynkinClass:
    cyclic = not q.is_acyclic()
    if q.has_loop():
        return DynkinClass((), "loop", cyclic)
    n = q.n
    adj: list[set[int]] = [set() for _ in range(n)]
    pairs = set()
    for s, t in q.underlying_edges():
        key = (min(s, t), max(s, t))
        if key in pairs:
            return DynkinClass((), "multiple edge", cyclic)
        pairs.add(key)
        adj[s].add(t)
        adj[t].add(s)
    comps = []
    for comp in _components(n, adj):
        edges = sum(len(adj[v]) for v in comp) // 2
        if edges != len(comp) - 1:
            return DynkinClass((), "cycle in underlying graph", cyclic)
        c = _classify_tree(comp, adj, q.vertices)
        if c is None:
            return DynkinClass((), "tree is not an ADE diagram", cyclic)
        comps.append(c)
    return DynkinClass(tuple(comps), "", cyclic)


class NotDynkinError(ValueError):
    pass


# ---------------------------------------------------------------------------
# roots


def simple_reflection(q: Quiver, i: int, d: Sequence[int]) -> tuple[int, ...]:
    e = [0] * q.n
    e[i] = 1
    c = q.euler_form(d, e)
    out = list(d)
    out[i] -= c
    return tuple(out)


def positive_roots(q: Quiver) -> list[tuple[int, ...]]:
    """All positive roots, by breadth-first closure of the simple roots under simple reflections."""
    cls = classify_dynkin(q)
    if not cls.is_dynkin:
        raise NotDynkinError(f"quiver {q.name} is not Dynkin ({cls.reason})")
    n = q.n
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simples)
    queue = deque(simples)
    while queue:
        d = queue.popleft()
        for i in range(n):
            r = simple_reflection(q, i, d)
            if r not in seen and all(x >= 0 for x in r) and any(r):
                seen.add(r)
                if len(seen) > ROOT_CAP:
                    raise RuntimeError("root enumeration exceeded cap")
                queue.append(r)
    roots = sorted(seen, key=lambda d: (sum(d), tuple(-x for x in d)))
    assert all(q.tits_form(d) == 1 for d in roots)
    return roots


def expected_root_count(cls: DynkinClass) -> int:
    total = 0
    for c in cls.components:
        n = c.rank
        total += {"A": n * (n + 1) // 2, "D": n * (n - 1), "E": {6: 36, 7: 63, 8: 120}.get(n, 0)}[c.kind]
    return total


def all_orientations(name: str, vertices: Sequence, edges: Sequence[tuple]) -> Iterator[Quiver]:
    """Every orientation of an undirected graph; arrow labels a0, a1, ..."""
    m = len(edges)
    for mask in range(1 << m):
        arrows = []
        for k, (u, v) in enumerate(edges):
            s, t = (u, v) if not (mask >> k) & 1 else (v, u)
            arrows.append((f"a{k}", s, t))
        yield Quiver.build(f"{name}_{mask}", vertices, arrows)


def linear_quiver(n: int, name: str | None = None) -> Quiver:
    """1 -> 2 -> ... -> n."""
    return Quiver.build(name or f"A{n}", range(1, n + 1), [(f"a{i}", i, i + 1) for i in range(1, n)])
