"""Edge-colored bipartite multigraphs: data model, validation, I/O, canonical codes.

A closed graph over colors ``{0..d}`` is the dual 1-skeleton of a colored
triangulation; a bubble is the same object restricted to colors ``{1..d}``.
Vertices are ``0..n-1``; edges are ``(u, v, color)`` records addressed by
their position in :attr:`ColoredGraph.edges`. Parallel edges are allowed.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

WHITE = 0
BLACK = 1

COLORS_FIXED = "colors-fixed"
COLORS_PERMUTABLE = "colors-permutable"
MODES = (COLORS_FIXED, COLORS_PERMUTABLE)


class GraphError(ValueError):
    """Base class for malformed graph input."""


class GraphSyntaxError(GraphError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GraphValidationError(GraphError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid colored graph:\n" + report.describe())
        self.report = report


class NonBipartiteError(GraphValidationError):
    pass


class DisconnectedGraphError(GraphError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    vertices: tuple[int, ...] = ()
    edges: tuple[int, ...] = ()
    message: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        # truthy when the graph is valid
        return not self.violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def describe(self) -> str:
        if not self.violations:
            return "ok"
        return "\n".join(f"{v.kind}: {v.message}" for v in self.violations)


@dataclass(frozen=True)
class RawGraph:
    """Unchecked graph data, as read from a file or built by hand."""

    d: int
    n: int
    edges: tuple[tuple[int, int, int], ...]
    support: frozenset[int] | None = None
    parity: tuple[int, ...] | None = None


def default_support(d: int, edges: Iterable[tuple[int, int, int]]) -> frozenset[int]:
    """Full color set when color 0 occurs anywhere, bubble colors otherwise."""
    if any(c == 0 for _, _, c in edges):
        return frozenset(range(d + 1))
    return frozenset(range(1, d + 1))


def _two_color(n: int, edges: Sequence[tuple[int, int, int]]):
    """BFS 2-coloring, lowest vertex of each component white.

    Returns ``(parity, conflicts)`` where conflicts lists edge ids joining
    two vertices of the same derived parity.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v, _) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    parity = [-1] * n
    for s in range(n):
        if parity[s] != -1:
            continue
        parity[s] = WHITE
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if parity[y] == -1:
                    parity[y] = 1 - parity[x]
                    queue.append(y)
    conflicts = [i for i, (u, v, _) in enumerate(edges) if parity[u] == parity[v]]
    return tuple(parity), conflicts


def validate(raw) -> ValidationReport:
    """List every violated invariant of ``raw`` (a :class:`RawGraph` or graph)."""
    d, n = raw.d, raw.n
    edges = tuple(tuple(e) for e in raw.edges)
    support = raw.support if raw.support is not None else default_support(d, edges)
    out: list[Violation] = []

    if d < 1:
        out.append(Violation("dimension", message=f"dimension must be positive, got {d}"))
    if n < 2 or n % 2:
        out.append(Violation("size", message=f"vertex count must be even and >= 2, got {n}"))
    bad_support = sorted(c for c in support if not 0 <= c <= d)
    if bad_support:
        out.append(Violation("color-range", message=f"support colors {bad_support} outside 0..{d}"))

    usable = []
    for i, (u, v, c) in enumerate(edges):
        ok = True
        for x in (u, v):
            if not 0 <= x < n:
                out.append(Violation("vertex-range", (x,), (i,), f"edge {i} endpoint {x} outside 0..{n - 1}"))
                ok = False
        if not 0 <= c <= d:
            out.append(Violation("color-range", edges=(i,), message=f"edge {i} color {c} outside 0..{d}"))
            ok = False
        elif c not in support:
            out.append(Violation("unsupported-color", edges=(i,), message=f"edge {i} color {c} not in {sorted(support)}"))
            ok = False
        if u == v:
            out.append(Violation("self-loop", (u,), (i,), f"edge {i} is a loop at {u}"))
            ok = False
        if ok:
            usable.append(i)

    seen: dict[tuple[int, int], int] = {}
    for i in usable:
        u, v, c = edges[i]
        for x in (u, v):
            if (x, c) in seen:
                out.append(Violation(
                    "repeated-color", (x,), (seen[x, c], i),
                    f"vertex {x} has edges {seen[x, c]} and {i} of color {c}",
                ))
            else:
                seen[x, c] = i
    for x in range(max(n, 0)):
        missing = sorted(c for c in support if (x, c) not in seen)
        if missing:
            out.append(Violation("missing-color", (x,), (), f"vertex {x} lacks colors {missing}"))

    if n > 0:
        kept = [edges[i] for i in usable]
        if raw.parity is not None:
            parity = tuple(raw.parity)
            if len(parity) != n:
                out.append(Violation("bipartite", message="parity list has wrong length"))
                conflicts = []
            else:
                conflicts = [usable[k] for k, (u, v, _) in enumerate(kept) if parity[u] == parity[v]]
        else:
            _, local = _two_color(n, kept)
            conflicts = [usable[k] for k in local]
        for i in conflicts:
            u, v, _ = edges[i]
            out.append(Violation("bipartite", (u, v), (i,), f"edge {i} joins same-parity vertices {u} and {v}"))

    return ValidationReport(tuple(out))


def _edge_key(e: tuple[int, int, int]) -> tuple[int, int, int]:
    u, v, c = e
    return (c, u, v) if u <= v else (c, v, u)


class ColoredGraph:
    """Immutable properly edge-colored bipartite multigraph.

    ``support`` is the set of colors every vertex carries exactly once:
    ``{0..d}`` for closed graphs, ``{1..d}`` for bubbles. Parity is derived
    by 2-coloring, the lowest vertex of each component being white.
    """

    __slots__ = ("d", "n", "edges", "support", "name", "parity", "_at", "_key")

    def __init__(
        self,
        d: int,
        n: int,
        edges: Iterable[Sequence[int]],
        support: Iterable[int] | None = None,
        name: str | None = None,
        *,
        _trusted: bool = False,
    ):
        edges = tuple((int(u), int(v), int(c)) for u, v, c in edges)
        sup = frozenset(support) if support is not None else default_support(d, edges)
        if not _trusted:
            report = validate(RawGraph(d, n, edges, sup))
            if not report.ok:
                if report.kinds() == {"bipartite"}:
                    raise NonBipartiteError(report)
                raise GraphValidationError(report)
        parity, _ = _two_color(n, edges)
        at = [[-1] * (d + 1) for _ in range(n)]
        for i, (u, v, c) in enumerate(edges):
            at[u][c] = i
            at[v][c] = i
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "_at", tuple(tuple(row) for row in at))
        object.__setattr__(self, "_key", None)

    def __setattr__(self, key, value):
        raise AttributeError("ColoredGraph is immutable")

    def __reduce__(self):
        return (_rebuild, (self.d, self.n, self.edges, tuple(sorted(self.support)), self.name))

    # -- identity -------------------------------------------------------

    def key(self) -> tuple:
        if self._key is None:
            k = (self.d, self.n, tuple(sorted(self.support)), tuple(sorted(map(_edge_key, self.edges))))
            object.__setattr__(self, "_key", k)
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<ColoredGraph{tag} d={self.d} n={self.n} colors={self.colors}>"

    # -- accessors ------------------------------------------------------

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(sorted(self.support))

    @property
    def is_closed(self) -> bool:
        return self.support == frozenset(range(self.d + 1))

    @property
    def is_bubble(self) -> bool:
        return self.support == frozenset(range(1, self.d + 1))

    def edge_at(self, v: int, c: int) -> int:
        return self._at[v][c]

    def neighbor(self, v: int, c: int) -> int:
        u, w, _ = self.edges[self._at[v][c]]
        return w if u == v else u

    def other_end(self, e: int, v: int) -> int:
        u, w, _ = self.edges[e]
        return w if u == v else u

    def color(self, e: int) -> int:
        return self.edges[e][2]

    def is_white(self, v: int) -> bool:
        return self.parity[v] == WHITE

    def white_end(self, e: int) -> int:
        u, v, _ = self.edges[e]
        return u if self.parity[u] == WHITE else v

    def black_end(self, e: int) -> int:
        u, v, _ = self.edges[e]
        return v if self.parity[u] == WHITE else u

    def whites(self) -> list[int]:
        return [v for v in range(self.n) if self.parity[v] == WHITE]

    def blacks(self) -> list[int]:
        return [v for v in range(self.n) if self.parity[v] == BLACK]

    def edges_of_color(self, c: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e[2] == c]

    def parallel_colors(self, u: int, v: int) -> tuple[int, ...]:
        """Colors of the edges joining ``u`` and ``v``."""
        return tuple(c for c in self.colors if self._at[u][c] != -1 and self.neighbor(u, c) == v)

    # -- structure ------------------------------------------------------

    def components(self, colors: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """Vertex sets of the connected components using only ``colors``.

        Components are sorted by their lowest vertex; each is sorted.
        """
        cols = self.colors if colors is None else tuple(sorted(colors))
        label = [-1] * self.n
        comps = []
        for s in range(self.n):
            if label[s] != -1:
                continue
            label[s] = len(comps)
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for c in cols:
                    e = self._at[x][c]
                    if e == -1:
                        continue
                    y = self.other_end(e, x)
                    if label[y] == -1:
                        label[y] = label[s]
                        stack.append(y)
                        comp.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def bubbles(self) -> list[tuple[int, ...]]:
        """Vertex sets of the ``{1..d}``-bubbles."""
        return self.components([c for c in self.colors if c != 0])

    def subgraph(self, vertices: Iterable[int], colors: Iterable[int] | None = None,
                 recolor: dict[int, int] | None = None, d: int | None = None,
                 name: str | None = None) -> tuple["ColoredGraph", dict[int, int]]:
        """Induced subgraph on ``vertices`` keeping edges of ``colors``.

        Vertices are renumbered in increasing order; returns the graph and
        the old-to-new vertex map. ``recolor`` maps kept colors to new ones.
        """
        verts = sorted(set(vertices))
        vmap = {v: i for i, v in enumerate(verts)}
        cols = set(self.colors if colors is None else colors)
        recolor = recolor or {}
        new_edges = []
        for u, v, c in self.edges:
            if c in cols and u in vmap and v in vmap:
                new_edges.append((vmap[u], vmap[v], recolor.get(c, c)))
        new_support = {recolor.get(c, c) for c in cols}
        g = ColoredGraph(self.d if d is None else d, len(verts), new_edges, new_support, name=name)
        return g, vmap

    def split_components(self) -> list[tuple["ColoredGraph", dict[int, int]]]:
        return [self.subgraph(comp) for comp in self.components()]

    def relabeled(self, perm: Sequence[int]) -> "ColoredGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``; edge order kept."""
        return ColoredGraph(
            self.d, self.n, [(perm[u], perm[v], c) for u, v, c in self.edges],
            self.support, self.name, _trusted=True,
        )

    def recolored(self, cmap: dict[int, int]) -> "ColoredGraph":
        return ColoredGraph(
            self.d, self.n, [(u, v, cmap.get(c, c)) for u, v, c in self.edges],
            {cmap.get(c, c) for c in self.support}, self.name, _trusted=True,
        )

    def with_name(self, name: str | None) -> "ColoredGraph":
        return ColoredGraph(self.d, self.n, self.edges, self.support, name, _trusted=True)

    def degree_sum(self) -> int:
        return 2 * len(self.edges)


def _rebuild(d, n, edges, support, name):
    return ColoredGraph(d, n, edges, support, name, _trusted=True)


class Bubble(ColoredGraph):
    """Connected graph over colors ``{1..d}``; ``name`` records provenance."""

    __slots__ = ()

    def __init__(self, d: int, n: int, edges, name: str | None = None, *, _trusted: bool = False):
        super().__init__(d, n, edges, range(1, d + 1), name, _trusted=_trusted)
        if not _trusted and not self.is_connected():
            raise DisconnectedGraphError("a bubble must be connected")

    def __reduce__(self):
        return (_rebuild_bubble, (self.d, self.n, self.edges, self.name))

    @classmethod
    def from_graph(cls, g: ColoredGraph, name: str | None = None) -> "Bubble":
        if 0 in g.support:
            raise GraphError("a bubble carries no color-0 edges")
        if not g.is_bubble:
            raise GraphError(f"bubble colors must be 1..{g.d}, got {g.colors}")
        return cls(g.d, g.n, g.edges, name if name is not None else g.name)


def _rebuild_bubble(d, n, edges, name):
    return Bubble(d, n, edges, name, _trusted=True)


# -- text format ----------------------------------------------------------


def parse_graph(text: str) -> ColoredGraph:
    """Parse the line-oriented ``cg`` format; see :func:`serialize_graph`."""
    lines = text.splitlines()
    header = None
    name = None
    edges: list[tuple[int, int, int]] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("name:") and name is None:
                name = body[len("name:"):].strip() or None
            continue
        tokens = stripped.split()
        if header is None:
            if tokens[0] != "cg":
                raise GraphSyntaxError("expected header 'cg <d> <n_vertices>'", lineno, col)
            if len(tokens) != 3:
                raise GraphSyntaxError("header takes exactly two integers", lineno, col)
            header = tuple(_parse_int(t, lineno, line) for t in tokens[1:])
            continue
        if tokens[0] != "e":
            raise GraphSyntaxError(f"unknown record {tokens[0]!r}", lineno, col)
        if len(tokens) != 4:
            raise GraphSyntaxError("edge line is 'e <u> <v> <color>'", lineno, col)
        u, v, c = (_parse_int(t, lineno, line) for t in tokens[1:])
        edges.append((u, v, c))
    if header is None:
        raise GraphSyntaxError("missing header", max(len(lines), 1))
    d, n = header
    return ColoredGraph(d, n, edges, name=name)


def _parse_int(token: str, lineno: int, line: str) -> int:
    if not token.isdigit():
        raise GraphSyntaxError(f"expected a nonnegative integer, got {token!r}", lineno, line.find(token) + 1)
    return int(token)


def serialize_graph(g: ColoredGraph) -> str:
    order = sorted(range(len(g.edges)), key=lambda i: (*_edge_key(g.edges[i]), i))
    out = [f"cg {g.d} {g.n}"]
    if g.name:
        out.append(f"# name: {g.name}")
    for i in order:
        c, u, v = _edge_key(g.edges[i])
        out.append(f"e {u} {v} {c}")
    return "\n".join(out) + "\n"


def read_graph(path) -> ColoredGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: ColoredGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(g))


# -- canonical forms ------------------------------------------------------


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes
    mode: str

    def __str__(self) -> str:
        return self.code.hex()


@dataclass(frozen=True)
class CanonicalLabeling:
    code: CanonicalCode
    order: tuple[int, ...]          # order[i] = vertex receiving canonical label i
    color_order: tuple[int, ...] = field(default=())  # original color at each canonical position


def _vertex_invariants(g: ColoredGraph, mode: str) -> list[tuple]:
    """Per-vertex lengths of the bicolored cycles through it.

    In permutable mode the lengths are pooled into two sorted multisets
    (pairs with and without color 0), which is invariant under permuting
    colors ``1..d``.
    """
    cols = g.colors
    n = g.n
    per_pair: dict[tuple[int, int], list[int]] = {}
    for a, b in itertools.combinations(cols, 2):
        length = [0] * n
        seen = [False] * n
        for s in range(n):
            if seen[s]:
                continue
            cyc = []
            x, c = s, a
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = g.neighbor(x, c)
                c = b if c == a else a
            for y in cyc:
                length[y] = len(cyc)
        per_pair[a, b] = length
    inv = []
    for v in range(n):
        if mode == COLORS_FIXED:
            inv.append(tuple(per_pair[p][v] for p in sorted(per_pair)))
        else:
            with0 = sorted(per_pair[p][v] for p in per_pair if 0 in p)
            without = sorted(per_pair[p][v] for p in per_pair if 0 not in p)
            inv.append((tuple(with0), tuple(without)))
    return inv


def _color_orders(g: ColoredGraph, mode: str) -> list[tuple[int, ...]]:
    cols = g.colors
    if mode == COLORS_FIXED:
        return [cols]
    fixed = tuple(c for c in cols if c == 0)
    free = [c for c in cols if c != 0]
    return [fixed + p for p in itertools.permutations(free)]


def _bfs_code(g: ColoredGraph, start: int, order: tuple[int, ...]):
    label = {start: 0}
    seq = [start]
    rows = []
    i = 0
    while i < len(seq):
        x = seq[i]
        row = []
        for c in order:
            y = g.neighbor(x, c)
            if y not in label:
                label[y] = len(seq)
                seq.append(y)
            row.append(label[y])
        rows.append(tuple(row))
        i += 1
    return tuple(rows), tuple(seq)


def canonical_labeling(g: ColoredGraph, mode: str = COLORS_FIXED) -> CanonicalLabeling:
    """Exact canonical labeling of a connected graph.

    Refinement: only vertices in the smallest class of cycle-length
    invariants are tried as BFS roots. Completion: every such root and every
    allowed color order is expanded, and the least code wins. In a properly
    colored connected graph the root and color order fix the whole labeling,
    so the search is exhaustive.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not g.is_connected():
        raise DisconnectedGraphError("canonical_form needs a connected graph; canonicalize components")
    inv = _vertex_invariants(g, mode)
    best_inv = min(inv)
    roots = [v for v in range(g.n) if inv[v] == best_inv]
    best = None
    for order in _color_orders(g, mode):
        for r in roots:
            rows, seq = _bfs_code(g, r, order)
            if best is None or rows < best[0]:
                best = (rows, seq, order)
    rows, seq, order = best
    header = [g.d, g.n, len(g.support), *sorted(g.support)]
    body = [x for row in rows for x in row]
    tag = b"F:" if mode == COLORS_FIXED else b"P:"
    code = tag + ",".join(map(str, header + body)).encode("ascii")
    return CanonicalLabeling(CanonicalCode(code, mode), seq, order)


def canonical_form(g: ColoredGraph, mode: str = COLORS_FIXED) -> CanonicalCode:
    return canonical_labeling(g, mode).code


def canonical_multiset(g: ColoredGraph, mode: str = COLORS_FIXED) -> CanonicalCode:
    """Code of a possibly disconnected graph: sorted multiset of component codes."""
    codes = sorted(canonical_form(sub, mode).code for sub, _ in g.split_components())
    return CanonicalCode(b"|".join(codes), mode)
