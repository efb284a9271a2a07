"""Counting structure of colored graphs.

Bicolored cycles, the Gurau degree, p-bubbles, boundary bubbles of colored
subgraphs and the interaction colors of a pair of color-0 edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph import Bubble, ColoredGraph, DisconnectedGraphError, GraphError


class BubbleInputError(GraphError):
    """A closed graph (with color 0) was required."""


class NotColoredSubgraphError(GraphError):
    pass


# -- bicolored cycles -----------------------------------------------------


@dataclass(frozen=True)
class PairCycles:
    count: int
    cycles: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CycleCensus:
    pairs: dict[tuple[int, int], PairCycles]

    def count(self, a: int, b: int) -> int:
        return self.pairs[min(a, b), max(a, b)].count

    def cycles(self, a: int, b: int) -> tuple[tuple[int, ...], ...]:
        return self.pairs[min(a, b), max(a, b)].cycles

    @property
    def c0(self) -> int:
        return sum(p.count for (a, _), p in self.pairs.items() if a == 0)

    @property
    def total(self) -> int:
        return sum(p.count for p in self.pairs.values())

    def lengths(self, a: int, b: int) -> list[int]:
        return sorted(len(cyc) for cyc in self.cycles(a, b))

    def text(self) -> str:
        out = []
        for (a, b) in sorted(self.pairs):
            p = self.pairs[a, b]
            out.append(f"pair {a} {b} count={p.count}")
            for cyc in p.cycles:
                out.append("cycle " + " ".join(map(str, cyc)))
        return "\n".join(out) + "\n"


def _pair_cycles(g: ColoredGraph, a: int, b: int) -> PairCycles:
    seen = set()
    cycles = []
    for e0 in range(len(g.edges)):
        if g.edges[e0][2] not in (a, b) or e0 in seen:
            continue
        cyc = []
        e, x = e0, g.white_end(e0)
        while True:
            seen.add(e)
            cyc.append(e)
            y = g.other_end(e, x)
            nxt = b if g.edges[e][2] == a else a
            e, x = g.edge_at(y, nxt), y
            if e == e0:
                break
        cycles.append(tuple(cyc))
    return PairCycles(len(cycles), tuple(cycles))


def cycle_census(g: ColoredGraph) -> CycleCensus:
    """Every bicolored cycle, per unordered pair of supported colors.

    Each cycle is listed as edge ids, starting at its smallest edge and
    leaving that edge's white endpoint first.
    """
    pairs = {(a, b): _pair_cycles(g, a, b) for a, b in itertools.combinations(g.colors, 2)}
    return CycleCensus(pairs)


def count_cycles(g: ColoredGraph, a: int, b: int) -> int:
    """Number of {a, b} cycles, without materializing them."""
    seen = [False] * g.n
    k = 0
    for s in range(g.n):
        if seen[s]:
            continue
        k += 1
        x = s
        while True:
            seen[x] = True
            y = g.neighbor(x, a)
            seen[y] = True
            x = g.neighbor(y, b)
            if x == s:
                break
    return k


def c0_count(g: ColoredGraph) -> int:
    return sum(count_cycles(g, 0, c) for c in g.colors if c != 0)


# -- Gurau degree ---------------------------------------------------------


@dataclass(frozen=True)
class GurauDegree:
    value: Fraction
    d: int
    n_vertices: int
    total_cycles: int

    @property
    def is_nonnegative_integer(self) -> bool:
        return self.value.denominator == 1 and self.value >= 0

    def __int__(self) -> int:
        if self.value.denominator != 1:
            raise ValueError(f"degree {self.value} is not an integer")
        return int(self.value)


def gurau_degree(g: ColoredGraph) -> GurauDegree:
    """omega = d + d(d-1)/4 * (vertex count) - (number of bicolored cycles)."""
    if not g.is_closed:
        raise BubbleInputError("the degree is defined for closed graphs with colors 0..d")
    if not g.is_connected():
        raise DisconnectedGraphError("the degree is defined for connected graphs")
    d = g.d
    total = sum(count_cycles(g, a, b) for a, b in itertools.combinations(g.colors, 2))
    value = d + Fraction(d * (d - 1), 4) * g.n - total
    return GurauDegree(value, d, g.n, total)


# -- p-bubbles ------------------------------------------------------------


@dataclass(frozen=True)
class PBubbleCensus:
    colors: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.components)


def p_bubbles(g: ColoredGraph, P: Iterable[int]) -> PBubbleCensus:
    cols = tuple(sorted(set(P)))
    if not cols:
        raise ValueError("P must be nonempty")
    if not set(cols) <= g.support:
        raise ValueError(f"colors {cols} not all in {g.colors}")
    comps = g.components(cols)
    owner = {}
    for i, comp in enumerate(comps):
        for v in comp:
            owner[v] = i
    edges: list[list[int]] = [[] for _ in comps]
    for i, (u, _, c) in enumerate(g.edges):
        if c in cols:
            edges[owner[u]].append(i)
    return PBubbleCensus(cols, tuple(comps), tuple(map(tuple, edges)))


# -- colored subgraphs and their boundaries -------------------------------


@dataclass(frozen=True)
class BoundaryBubble:
    """Boundary of a colored subgraph H.

    ``graph`` lives on compact ids ``0..k-1``; ``free_vertices[i]`` is the
    original id of compact vertex ``i``. ``paths[j]`` lists the original
    edge ids of the open alternating path behind boundary edge ``j``.
    """

    graph: ColoredGraph
    free_vertices: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    def original_edges(self) -> list[tuple[int, int, int]]:
        fv = self.free_vertices
        return [(fv[u], fv[v], c) for u, v, c in self.graph.edges]

    def components(self) -> list[Bubble]:
        return [Bubble.from_graph(sub) for sub, _ in self.graph.split_components()]


def check_colored_subgraph(g: ColoredGraph, H: Iterable[int]) -> frozenset[int]:
    hs = frozenset(H)
    if not hs:
        raise NotColoredSubgraphError("H is empty")
    bad = [v for v in hs if not 0 <= v < g.n]
    if bad:
        raise NotColoredSubgraphError(f"vertices {sorted(bad)} not in graph")
    for v in sorted(hs):
        for c in g.colors:
            if c != 0 and g.neighbor(v, c) not in hs:
                raise NotColoredSubgraphError(f"color {c} edge at vertex {v} leaves H")
    return hs


def free_vertices(g: ColoredGraph, H: Iterable[int]) -> list[int]:
    hs = frozenset(H)
    if 0 not in g.support:
        return sorted(hs)
    return sorted(v for v in hs if g.neighbor(v, 0) not in hs)


def boundary_bubble(g: ColoredGraph, H: Iterable[int]) -> BoundaryBubble:
    """Bubble on the free vertices of H, one color-c edge per open {0,c}-path."""
    hs = check_colored_subgraph(g, H)
    free = free_vertices(g, hs)
    if not free:
        raise NotColoredSubgraphError("H has no free vertices; it is a whole component")
    is_free = set(free)
    idx = {v: i for i, v in enumerate(free)}
    edges, paths = [], []
    has0 = 0 in g.support
    for f in free:
        if not g.is_white(f):
            continue
        for c in g.colors:
            if c == 0:
                continue
            path = []
            x = f
            while True:
                e = g.edge_at(x, c)
                path.append(e)
                y = g.other_end(e, x)
                if y in is_free:
                    break
                e0 = g.edge_at(y, 0) if has0 else -1
                path.append(e0)
                x = g.other_end(e0, y)
            edges.append((idx[f], idx[y], c))
            paths.append(tuple(path))
    graph = ColoredGraph(g.d, len(free), edges, range(1, g.d + 1))
    return BoundaryBubble(graph, tuple(free), tuple(paths))


@dataclass(frozen=True)
class Replacement:
    """G with a colored subgraph H replaced by its boundary bubble.

    ``vertex_map`` sends surviving original vertices to new ids and
    ``edge_map`` sends surviving original edges (those not inside H) to
    new edge ids.
    """

    graph: ColoredGraph
    vertex_map: dict[int, int]
    edge_map: dict[int, int]
    boundary: BoundaryBubble


def replace_with_boundary(g: ColoredGraph, H: Iterable[int]) -> Replacement:
    hs = check_colored_subgraph(g, H)
    bd = boundary_bubble(g, hs)
    keep = sorted((set(range(g.n)) - hs) | set(bd.free_vertices))
    vmap = {v: i for i, v in enumerate(keep)}
    edges, emap = [], {}
    for i, (u, v, c) in enumerate(g.edges):
        if u in hs and v in hs:
            continue
        emap[i] = len(edges)
        edges.append((vmap[u], vmap[v], c))
    for u, v, c in bd.original_edges():
        edges.append((vmap[u], vmap[v], c))
    new = ColoredGraph(g.d, len(keep), edges, g.support)
    return Replacement(new, vmap, emap, bd)


def interaction_colors(g: ColoredGraph, e1: int, e2: int) -> frozenset[int]:
    """Colors c such that one {0, c} cycle runs through both e1 and e2."""
    if e1 == e2:
        raise ValueError("interaction colors need two distinct edges")
    for e in (e1, e2):
        if g.color(e) != 0:
            raise ValueError(f"edge {e} has color {g.color(e)}, expected 0")
    out = set()
    for c in g.colors:
        if c == 0:
            continue
        e, x = e1, g.white_end(e1)
        while True:
            y = g.other_end(e, x)
            nxt = c if g.color(e) == 0 else 0
            e, x = g.edge_at(y, nxt), y
            if e == e2:
                out.add(c)
                break
            if e == e1:
                break
    return frozenset(out)


def _closed_cycles(n_edges: list[tuple[int, int, int]], a: int, b: int) -> int:
    """Closed {a, b} cycles in an arbitrary partial edge list.

    Works on partially colored pieces (an induced subgraph whose free
    vertices lack color 0) by walking components and keeping those in which
    every vertex has both colors.
    """
    adj: dict[int, dict[int, int]] = {}
    for u, v, c in n_edges:
        if c in (a, b):
            adj.setdefault(u, {})[c] = v
            adj.setdefault(v, {})[c] = u
    seen = set()
    k = 0
    for s in adj:
        if s in seen:
            continue
        stack, comp, closed = [s], [], True
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            if len(adj[x]) < 2:
                closed = False
            for y in adj[x].values():
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        k += closed
    return k


@dataclass(frozen=True)
class C0Split:
    inside: int      # {0,c} cycles of H alone
    outside: int     # cycles of G minus H
    crossing: int    # cycles meeting both


def split_color0_cycles(g: ColoredGraph, H: Iterable[int]) -> C0Split:
    """Classify the {0,c} cycles of g relative to the vertex set H."""
    hs = frozenset(H)
    inside = outside = crossing = 0
    cen = cycle_census(g)
    for c in g.colors:
        if c == 0:
            continue
        for cyc in cen.cycles(0, c):
            verts = {x for e in cyc for x in g.edges[e][:2]}
            if verts <= hs:
                inside += 1
            elif verts.isdisjoint(hs):
                outside += 1
            else:
                crossing += 1
    return C0Split(inside, outside, crossing)


def induced_c0(g: ColoredGraph, verts: Iterable[int]) -> int:
    """C_0 of the induced piece on ``verts``, counting only closed cycles."""
    vs = frozenset(verts)
    sub = [(u, v, c) for u, v, c in g.edges if u in vs and v in vs]
    return sum(_closed_cycles(sub, 0, c) for c in g.colors if c != 0)
