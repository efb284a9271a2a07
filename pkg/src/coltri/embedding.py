"""Canonical embedding of 3-colored cubic bipartite graphs.

With rotation (1 2 3) at white vertices and (1 3 2) at black ones, the
faces of the embedded map are exactly the bicolored cycles. Genus follows
from Euler's formula, with no general planarity test involved.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass

from .census import count_cycles, cycle_census
from .graph import Bubble, ColoredGraph, GraphError


class NotCubicError(GraphError):
    pass


class NonPlanarError(GraphError):
    pass


@dataclass(frozen=True)
class EmbeddingStats:
    V: int
    E: int
    F: int
    genus: int
    face_profile: dict[int, int]

    def faces_of_degree(self, k: int) -> int:
        return self.face_profile.get(k, 0)

    def text(self) -> str:
        prof = " ".join(f"{k}:{v}" for k, v in sorted(self.face_profile.items()))
        return f"V={self.V} E={self.E} F={self.F} genus={self.genus}\nprofile {prof}\n"


def _check_cubic(g: ColoredGraph):
    if len(g.support) != 3:
        raise NotCubicError(f"expected exactly three colors, got {g.colors}")
    if not g.is_connected():
        raise NotCubicError("embedding needs a connected graph")


def embedding_stats(g: ColoredGraph) -> EmbeddingStats:
    """V, E, F, genus and face-degree profile of a connected 3-colored graph.

    Any three colors are accepted; they play the roles of 1 < 2 < 3 in
    increasing order.
    """
    _check_cubic(g)
    census = cycle_census(g)
    profile = Counter()
    for p in census.pairs.values():
        for cyc in p.cycles:
            profile[len(cyc)] += 1
    V, E, F = g.n, len(g.edges), census.total
    chi = V - E + F
    if chi % 2 or chi > 2:
        raise AssertionError(f"impossible Euler characteristic {chi}")
    return EmbeddingStats(V, E, F, (2 - chi) // 2, dict(sorted(profile.items())))


def genus(g: ColoredGraph) -> int:
    _check_cubic(g)
    a, b, c = g.colors
    F = count_cycles(g, a, b) + count_cycles(g, a, c) + count_cycles(g, b, c)
    return (2 - (g.n - len(g.edges) + F)) // 2


def is_planar(g: ColoredGraph) -> bool:
    """Planar iff F = V/2 + 2."""
    _check_cubic(g)
    a, b, c = g.colors
    F = count_cycles(g, a, b) + count_cycles(g, a, c) + count_cycles(g, b, c)
    return 2 * F == g.n + 4


@dataclass(frozen=True)
class ThreeBubble:
    colors: tuple[int, int, int]
    vertices: tuple[int, ...]
    bubble: Bubble


def three_bubbles(g: ColoredGraph) -> list[ThreeBubble]:
    """Every connected component on every three-color subset, recolored to {1,2,3}."""
    out = []
    for cols in itertools.combinations(g.colors, 3):
        recolor = {c: i + 1 for i, c in enumerate(cols)}
        for comp in g.components(cols):
            sub, _ = g.subgraph(comp, cols, recolor=recolor, d=3)
            out.append(ThreeBubble(cols, comp, Bubble.from_graph(sub)))
    return out


# -- melonic recognition --------------------------------------------------


@dataclass(frozen=True)
class MelonicStep:
    v: int          # original vertex ids
    w: int
    color: int      # color of the edge that replaces the pair


@dataclass(frozen=True)
class MelonicWitness:
    steps: tuple[MelonicStep, ...]
    melonic: bool
    terminal: tuple[int, ...]   # vertices left when the reduction stopped


def _live_adjacency(b: ColoredGraph):
    return {v: {c: b.neighbor(v, c) for c in b.colors} for v in range(b.n)}


def _remove_pair(adj, v, w, colors):
    """Delete the pair v, w joined by all colors but one; rejoin that color."""
    shared = [c for c in colors if adj[v][c] == w]
    if len(shared) != len(colors) - 1:
        raise ValueError(f"vertices {v}, {w} are not joined by {len(colors) - 1} edges")
    (free,) = [c for c in colors if adj[v][c] != w]
    x, y = adj[v][free], adj[w][free]
    del adj[v], adj[w]
    adj[x][free] = y
    adj[y][free] = x
    return free


def is_melonic(b: ColoredGraph, rng: random.Random | None = None) -> MelonicWitness:
    """Greedy reduction of a bubble by pairs joined by d-1 parallel edges.

    Without ``rng`` the scan takes the smallest available pair each time;
    with one it picks uniformly among the available pairs.
    """
    if 0 in b.support:
        raise GraphError("melonic recognition takes a bubble")
    colors = b.colors
    adj = _live_adjacency(b)
    steps = []
    while len(adj) > 2:
        cands = []
        for v in sorted(adj):
            if not b.is_white(v):
                continue
            hits = Counter(adj[v].values())
            for w, k in hits.items():
                if k == len(colors) - 1:
                    cands.append((v, w))
        if not cands:
            break
        v, w = rng.choice(cands) if rng is not None else cands[0]
        free = _remove_pair(adj, v, w, colors)
        steps.append(MelonicStep(v, w, free))
    ok = len(adj) == 2 and all(len(set(nb.values())) == 1 for nb in adj.values())
    return MelonicWitness(tuple(steps), ok, tuple(sorted(adj)))


def replay_melonic(b: ColoredGraph, witness: MelonicWitness) -> bool:
    """Re-run the witness steps; true iff they end at the 2-vertex bubble."""
    adj = _live_adjacency(b)
    for st in witness.steps:
        free = _remove_pair(adj, st.v, st.w, b.colors)
        if free != st.color:
            return False
    return len(adj) == 2 and all(len(set(nb.values())) == 1 for nb in adj.values())


# -- face bound for planar bubbles ----------------------------------------


@dataclass(frozen=True)
class FaceBoundReport:
    f2: int
    f4: int
    holds: bool
    tight: bool
    profile: dict[int, int]


def check_face_bound(b: ColoredGraph) -> FaceBoundReport:
    """2 F2 + F4 >= 6, and F4 >= 6 when there are no faces of degree 2."""
    st = embedding_stats(b)
    if st.genus != 0:
        raise NonPlanarError(f"face bound applies to planar bubbles; genus is {st.genus}")
    f2, f4 = st.faces_of_degree(2), st.faces_of_degree(4)
    holds = 2 * f2 + f4 >= 6 and (f2 > 0 or f4 >= 6)
    tight = 2 * f2 + f4 == 6
    return FaceBoundReport(f2, f4, holds, tight, st.face_profile)
