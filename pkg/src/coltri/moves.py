"""Graph rewriting: flips, contractions, dipole moves, connected sums.

Every function returns new graphs; inputs are never modified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .census import c0_count, interaction_colors
from .embedding import genus
from .graph import ColoredGraph, GraphError


class MoveError(GraphError):
    pass


class EmptyContraction(MoveError):
    """Contracting the color-0 edge of the 2-vertex closed graph leaves nothing."""


def _compact(g_d: int, n: int, keep: list[int], edges, support, name=None) -> tuple[ColoredGraph, dict[int, int]]:
    vmap = {v: i for i, v in enumerate(keep)}
    new = [(vmap[u], vmap[v], c) for u, v, c in edges]
    return ColoredGraph(g_d, len(keep), new, support, name, _trusted=True), vmap


def _pieces(g: ColoredGraph) -> list[ColoredGraph]:
    comps = g.components()
    if len(comps) == 1:
        return [g]
    return [g.subgraph(comp)[0] for comp in comps]


def _check_color0(g: ColoredGraph, *es: int):
    for e in es:
        if not 0 <= e < len(g.edges):
            raise MoveError(f"no edge {e}")
        if g.color(e) != 0:
            raise MoveError(f"edge {e} has color {g.color(e)}, expected 0")


# -- flips ----------------------------------------------------------------


@dataclass(frozen=True)
class FlipResult:
    graph: ColoredGraph                 # the rewired graph, same vertex and edge ids
    components: tuple[ColoredGraph, ...]
    c0_before: int
    c0_after: int
    interaction: frozenset[int]
    was_two_cut: bool

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def predicted_c0(self) -> int:
        d = self.graph.d
        return self.c0_before - d + 2 * len(self.interaction)


def is_edge_cut(g: ColoredGraph, edge_ids) -> bool:
    """Whether deleting the given edges disconnects a connected graph."""
    drop = set(edge_ids)
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v, _) in enumerate(g.edges):
        if i not in drop:
            adj[u].append(v)
            adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) < g.n


def flip(g: ColoredGraph, e1: int, e2: int) -> FlipResult:
    """Swap the black ends of two color-0 edges.

    The white end of e1 is joined to the black end of e2 and vice versa;
    the new edges keep the ids e1 and e2, so flipping again restores g.
    """
    if e1 == e2:
        raise MoveError("flip needs two distinct edges")
    _check_color0(g, e1, e2)
    w1, b1 = g.white_end(e1), g.black_end(e1)
    w2, b2 = g.white_end(e2), g.black_end(e2)
    edges = list(g.edges)
    edges[e1] = (w1, b2, 0)
    edges[e2] = (w2, b1, 0)
    new = ColoredGraph(g.d, g.n, edges, g.support, _trusted=True)
    parts = _pieces(new)
    return FlipResult(
        graph=new,
        components=tuple(parts),
        c0_before=c0_count(g),
        c0_after=sum(c0_count(p) for p in parts),
        interaction=interaction_colors(g, e1, e2),
        was_two_cut=g.is_connected() and is_edge_cut(g, (e1, e2)),
    )


# -- contractions ---------------------------------------------------------


@dataclass(frozen=True)
class ContractResult:
    graphs: tuple[ColoredGraph, ...]
    case: str               # "parallel-2", "parallel-1-connected", "parallel-1-split", "unparallel"
    parallel_colors: tuple[int, ...]
    c0_before: int
    c0_after: int
    expected_delta: int | None
    vertex_map: dict[int, int]   # surviving original vertex -> id in the contracted (joined) graph

    @property
    def delta(self) -> int:
        return self.c0_after - self.c0_before


def _bubble_count(g: ColoredGraph) -> int:
    return len(g.components([c for c in g.colors if c != 0]))


def contract(g: ColoredGraph, e: int) -> ContractResult:
    """Remove the endpoints of color-0 edge e and rejoin each color.

    An edge parallel to e simply disappears. Expected C_0 change: -2 when e
    is parallel to two other edges, -1 when parallel to exactly one
    (whether or not the bubble splits); no prediction otherwise.
    """
    _check_color0(g, e)
    if g.n == 2:
        raise EmptyContraction("contracting the 2-vertex graph leaves the empty graph")
    v, vp = g.white_end(e), g.black_end(e)
    par = tuple(c for c in g.colors if c != 0 and g.edge_at(v, c) == g.edge_at(vp, c))
    if len(par) == len(g.colors) - 1:
        raise EmptyContraction("edge spans a whole 2-vertex component")
    drop = {g.edge_at(v, c) for c in g.colors} | {g.edge_at(vp, c) for c in g.colors}
    edges = [x for i, x in enumerate(g.edges) if i not in drop]
    for c in g.colors:
        if c == 0 or c in par:
            continue
        x = g.neighbor(v, c)
        y = g.neighbor(vp, c)
        edges.append((x, y, c))
    keep = [x for x in range(g.n) if x not in (v, vp)]
    joined, vmap = _compact(g.d, len(keep), keep, edges, g.support)
    parts = _pieces(joined)
    c0_after = sum(c0_count(p) for p in parts)
    if len(par) == 2:
        case, expected = "parallel-2", -2
    elif len(par) == 1:
        split = _bubble_count(joined) > _bubble_count(g)
        case, expected = ("parallel-1-split" if split else "parallel-1-connected"), -1
    else:
        case, expected = "unparallel", None
    return ContractResult(tuple(parts), case, par, c0_count(g), c0_after, expected, vmap)


# -- dipoles --------------------------------------------------------------


@dataclass(frozen=True)
class Dipole:
    white: int
    black: int
    edges: tuple[int, ...]
    H: tuple[int, ...]
    P: tuple[int, ...]
    distinct: bool
    genera: tuple[int | None, int | None]

    @property
    def h(self) -> int:
        return len(self.H)

    @property
    def vertices(self) -> tuple[int, int]:
        return (self.white, self.black)

    @property
    def topological(self) -> bool:
        return self.distinct and any(gg == 0 for gg in self.genera)


def _side_genus(g: ColoredGraph, v: int, P: tuple[int, ...]) -> int | None:
    # single edges and bicolored cycles are balls; a 3-colored piece is
    # a ball exactly when its canonical embedding is planar
    if not P:
        return None
    if len(P) <= 2:
        return 0
    if len(P) == 3:
        comp = next(c for c in g.components(P) if v in c)
        sub, _ = g.subgraph(comp, P, recolor={c: i + 1 for i, c in enumerate(P)}, d=3)
        return genus(sub)
    return None


def _dipole_at(g: ColoredGraph, w: int, b: int) -> Dipole | None:
    H = tuple(c for c in g.colors if g.neighbor(w, c) == b)
    if not H:
        return None
    P = tuple(c for c in g.colors if c not in H)
    if P:
        comps = g.components(P)
        cw = next(i for i, c in enumerate(comps) if w in c)
        cb = next(i for i, c in enumerate(comps) if b in c)
        distinct = cw != cb
    else:
        distinct = False
    genera = (_side_genus(g, w, P), _side_genus(g, b, P) if distinct else _side_genus(g, w, P))
    return Dipole(w, b, tuple(g.edge_at(w, c) for c in H), H, P, distinct, genera)


def find_dipoles(g: ColoredGraph) -> list[Dipole]:
    """Every white-black pair joined by at least one edge, with side data."""
    out = []
    for w in g.whites():
        for b in sorted({g.neighbor(w, c) for c in g.colors}):
            dip = _dipole_at(g, w, b)
            if dip is not None:
                out.append(dip)
    return out


@dataclass(frozen=True)
class DipoleLocation:
    """Where a dipole sat, in the ids of the graph it was removed from.

    ``joins[c] = (x, y)`` gives the color-c edge of the reduced graph
    (new ids) created by the removal; ``x`` regains the white dipole
    vertex, ``y`` the black one. ``restore`` maps reduced ids back to the
    original ids, with ``white`` and ``black`` the original dipole ids.
    """

    H: tuple[int, ...]
    joins: dict[int, tuple[int, int]]
    restore: tuple[int, ...] | None = None
    white: int | None = None
    black: int | None = None


@dataclass(frozen=True)
class DipoleRemoval:
    graph: ColoredGraph
    topological: bool
    dipole: Dipole
    location: DipoleLocation


def remove_dipole(g: ColoredGraph, dip: Dipole) -> DipoleRemoval:
    w, b = dip.white, dip.black
    fresh = _dipole_at(g, w, b) if g.is_white(w) and not g.is_white(b) else None
    if fresh is None or fresh.H != dip.H:
        raise MoveError(f"no dipole of colors {dip.H} between {w} and {b}")
    if not fresh.P:
        raise MoveError("the pair is a whole 2-vertex component; nothing to remove")
    if not fresh.distinct:
        raise MoveError("both ends lie in the same P-bubble; not a dipole")
    drop = {g.edge_at(w, c) for c in g.colors} | {g.edge_at(b, c) for c in g.colors}
    edges = [x for i, x in enumerate(g.edges) if i not in drop]
    ends = {}
    for c in fresh.P:
        x, y = g.neighbor(w, c), g.neighbor(b, c)
        edges.append((x, y, c))
        ends[c] = (x, y)
    keep = [x for x in range(g.n) if x not in (w, b)]
    new, vmap = _compact(g.d, len(keep), keep, edges, g.support)
    loc = DipoleLocation(
        H=fresh.H,
        joins={c: (vmap[x], vmap[y]) for c, (x, y) in ends.items()},
        restore=tuple(keep), white=w, black=b,
    )
    return DipoleRemoval(new, fresh.topological, fresh, loc)


def insert_dipole(g: ColoredGraph, loc: DipoleLocation) -> ColoredGraph:
    """Cut the named edges and hang a new white-black pair on them.

    For each color c in ``loc.joins`` the edge x-y is replaced by x-a and
    b-y; the pair a, b is joined by one edge of every color in ``loc.H``.
    """
    H = tuple(loc.H)
    P = tuple(sorted(loc.joins))
    if set(H) & set(P) or set(H) | set(P) != set(g.support):
        raise MoveError(f"colors {H} and {P} must partition {g.colors}")
    cut = set()
    xs, ys = [], []
    for c in P:
        x, y = loc.joins[c]
        if not (0 <= x < g.n and 0 <= y < g.n) or g.neighbor(x, c) != y:
            raise MoveError(f"no edge of color {c} between {x} and {y}")
        cut.add(g.edge_at(x, c))
        xs.append(x)
        ys.append(y)
    if len({g.parity[x] for x in xs}) > 1 or len({g.parity[y] for y in ys}) > 1:
        raise MoveError("cut edges are not consistently oriented")
    a, b = g.n, g.n + 1
    edges = [e for i, e in enumerate(g.edges) if i not in cut]
    for c in P:
        x, y = loc.joins[c]
        edges.append((x, a, c))
        edges.append((b, y, c))
    edges.extend((a, b, c) for c in H)
    if loc.restore is not None:
        ids = list(loc.restore) + [loc.white, loc.black]
        edges = [(ids[u], ids[v], c) for u, v, c in edges]
    return ColoredGraph(g.d, g.n + 2, edges, g.support)


# -- connected sums -------------------------------------------------------


@dataclass(frozen=True)
class ConnectedSum:
    graph: ColoredGraph
    left_map: dict[int, int]
    right_map: dict[int, int]
    note: str = field(default=(
        "graph operation only; it represents the topological connected sum "
        "when that sum is unique"
    ))


def connected_sum(g1: ColoredGraph, v1: int, g2: ColoredGraph, v2: int) -> ConnectedSum:
    """Delete black v1 of g1 and white v2 of g2, then join same-colored hanging ends."""
    if g1.support != g2.support or g1.d != g2.d:
        raise MoveError("connected sum needs graphs over the same colors")
    if g1.is_white(v1):
        raise MoveError(f"vertex {v1} of the first graph must be black")
    if not g2.is_white(v2):
        raise MoveError(f"vertex {v2} of the second graph must be white")
    left = {x: i for i, x in enumerate(x for x in range(g1.n) if x != v1)}
    off = g1.n - 1
    right = {x: off + i for i, x in enumerate(x for x in range(g2.n) if x != v2)}
    edges = []
    for u, v, c in g1.edges:
        if v1 not in (u, v):
            edges.append((left[u], left[v], c))
    for u, v, c in g2.edges:
        if v2 not in (u, v):
            edges.append((right[u], right[v], c))
    for c in g1.colors:
        edges.append((left[g1.neighbor(v1, c)], right[g2.neighbor(v2, c)], c))
    new = ColoredGraph(g1.d, g1.n + g2.n - 2, edges, g1.support)
    return ConnectedSum(new, left, right)


# -- reduction to the 2-vertex graph --------------------------------------

CANONICAL_SPHERE = "canonical-sphere"
STUCK = "stuck"

# 2-dipoles first, then 1-dipoles with a planar side, then 3-dipoles
_PRIORITY = {2: 0, 1: 1, 3: 2}


@dataclass(frozen=True)
class ReductionStep:
    white: int
    black: int
    H: tuple[int, ...]
    topological: bool
    n_before: int


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    terminal: ColoredGraph
    verdict: str
    budget_exhausted: bool = False

    def text(self) -> str:
        out = [f"move {i} remove h={len(s.H)} colors={','.join(map(str, s.H))} "
               f"vertices={s.white},{s.black} topological={str(s.topological).lower()}"
               for i, s in enumerate(self.steps)]
        out.append(f"terminal vertices={self.terminal.n}")
        out.append(f"verdict {self.verdict}")
        return "\n".join(out) + "\n"


def _pick(g: ColoredGraph) -> Dipole | None:
    best = None
    for dip in find_dipoles(g):
        if dip.h not in _PRIORITY or not dip.topological:
            continue
        key = (_PRIORITY[dip.h], min(dip.white, dip.black), max(dip.white, dip.black))
        if best is None or key < best[0]:
            best = (key, dip)
    return None if best is None else best[1]


def reduce_to_canonical(g: ColoredGraph, move_factor: int = 10, max_moves: int | None = None) -> ReductionTrace:
    """Greedily remove topological dipoles until none is left.

    The verdict is canonical-sphere iff the graph reaches the 2-vertex
    graph with all colors. A stuck verdict says nothing about topology.
    """
    if not g.is_closed or g.d != 3:
        raise MoveError("reduction works on closed graphs with colors 0..3")
    if not g.is_connected():
        raise MoveError("reduction needs a connected graph")
    budget = max_moves if max_moves is not None else move_factor * g.n
    steps = []
    cur = g
    exhausted = False
    while cur.n > 2:
        if len(steps) >= budget:
            exhausted = True
            break
        dip = _pick(cur)
        if dip is None:
            break
        res = remove_dipole(cur, dip)
        steps.append(ReductionStep(dip.white, dip.black, dip.H, res.topological, cur.n))
        cur = res.graph
    verdict = CANONICAL_SPHERE if cur.n == 2 else STUCK
    return ReductionTrace(tuple(steps), cur, verdict, exhausted)
