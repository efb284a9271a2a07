"""Exhaustive search over pairings and gluings of bubbles.

A gluing of bubbles B_1..B_N is a color-0 perfect matching between the
white and black vertices of their disjoint union. All sweeps here are
brute force; an optional symmetry filter only skips work whose outcome is
isomorphic to something already covered.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .census import c0_count
from .embedding import is_planar
from .graph import (
    COLORS_FIXED,
    Bubble,
    ColoredGraph,
    GraphError,
    canonical_form,
    canonical_labeling,
)

DEFAULT_BUDGET = 16


class BudgetExceeded(RuntimeError):
    pass


class HypothesisUnmet(ValueError):
    pass


class NotABubbleError(GraphError):
    pass


# -- disjoint unions and the sweep kernel ---------------------------------


class Union:
    """Disjoint union of bubbles with the arrays the sweep needs.

    ``whites``/``blacks`` are global vertex ids in increasing order.
    ``step[c][j]`` is the white index reached from black index j along color
    c, so the {0,c} cycles of a gluing perm are the cycles of
    ``i -> step[c][perm[i]]``.
    """

    def __init__(self, bubbles: Sequence[ColoredGraph]):
        if not bubbles:
            raise ValueError("need at least one bubble")
        d = bubbles[0].d
        for b in bubbles:
            if 0 in b.support or b.support != frozenset(range(1, d + 1)):
                raise NotABubbleError("gluings take bubbles over colors 1..d")
            if not b.is_connected():
                raise NotABubbleError("bubbles must be connected")
        self.d = d
        self.bubbles = tuple(bubbles)
        self.offsets = []
        edges, owner, parity = [], [], []
        off = 0
        for k, b in enumerate(bubbles):
            self.offsets.append(off)
            edges.extend((u + off, v + off, c) for u, v, c in b.edges)
            owner.extend([k] * b.n)
            parity.extend(b.parity)
            off += b.n
        self.n = off
        self.edges = tuple(edges)
        self.owner = tuple(owner)
        self.whites = tuple(v for v in range(off) if parity[v] == 0)
        self.blacks = tuple(v for v in range(off) if parity[v] == 1)
        widx = {v: i for i, v in enumerate(self.whites)}
        nbr = {}
        for u, v, c in edges:
            nbr[u, c] = v
            nbr[v, c] = u
        self.colors = tuple(range(1, d + 1))
        self.step = tuple(tuple(widx[nbr[b, c]] for b in self.blacks) for c in self.colors)
        self.wown = tuple(owner[v] for v in self.whites)
        self.bown = tuple(owner[v] for v in self.blacks)

    @property
    def k(self) -> int:
        return len(self.whites)

    def c0(self, perm: Sequence[int]) -> int:
        k = len(perm)
        total = 0
        for st in self.step:
            sig = [st[p] for p in perm]
            seen = bytearray(k)
            for i in range(k):
                if not seen[i]:
                    total += 1
                    j = i
                    while not seen[j]:
                        seen[j] = 1
                        j = sig[j]
        return total

    def connected(self, perm: Sequence[int]) -> bool:
        nb = len(self.bubbles)
        if nb == 1:
            return True
        parent = list(range(nb))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parts = nb
        for i, p in enumerate(perm):
            a, b = find(self.wown[i]), find(self.bown[p])
            if a != b:
                parent[a] = b
                parts -= 1
                if parts == 1:
                    return True
        return parts == 1

    def graph(self, perm: Sequence[int], name: str | None = None) -> ColoredGraph:
        edges = list(self.edges)
        edges.extend((w, self.blacks[p], 0) for w, p in zip(self.whites, perm))
        return ColoredGraph(self.d, self.n, edges, range(self.d + 1), name, _trusted=True)

    def occurrence(self, k: int) -> tuple[int, ...]:
        off = self.offsets[k]
        return tuple(range(off, off + self.bubbles[k].n))


def _perms_with_head(k: int, head: int) -> Iterator[tuple[int, ...]]:
    rest = [x for x in range(k) if x != head]
    for tail in itertools.permutations(rest):
        yield (head,) + tail


# -- pairings -------------------------------------------------------------


@dataclass(frozen=True)
class Pairing:
    """Color-0 perfect matching closing a single bubble.

    ``pairs`` lists (white, black) in increasing white order.
    """

    bubble: ColoredGraph
    pairs: tuple[tuple[int, int], ...]
    connected: bool
    c0: int

    def as_map(self) -> dict[int, int]:
        m = {}
        for w, b in self.pairs:
            m[w] = b
            m[b] = w
        return m

    def graph(self) -> ColoredGraph:
        edges = list(self.bubble.edges) + [(w, b, 0) for w, b in self.pairs]
        return ColoredGraph(self.bubble.d, self.bubble.n, edges, range(self.bubble.d + 1), _trusted=True)


def enumerate_pairings(b: ColoredGraph) -> Iterator[Pairing]:
    """Every pairing of b, in lexicographic order of the white-to-black map."""
    u = Union([b])
    for perm in itertools.permutations(range(u.k)):
        pairs = tuple((w, u.blacks[p]) for w, p in zip(u.whites, perm))
        yield Pairing(b, pairs, u.connected(perm), u.c0(perm))


@dataclass
class MaxReport:
    maximum: int | None
    raw_count: int
    dedup_count: int
    maximizers: list[ColoredGraph]          # one per colors-fixed isomorphism class
    perms: list[tuple[int, ...]] = field(default_factory=list)   # every maximizing assignment
    enumerated: int = 0
    connected: int = 0
    union: Union | None = None
    marked: int | None = None
    pruned: bool = False

    def text(self) -> str:
        return (
            f"enumerated {self.enumerated}\n"
            f"connected {self.connected}\n"
            f"maximum {self.maximum}\n"
            f"maximizers {self.raw_count}\n"
            f"maximizers_dedup {self.dedup_count}\n"
        )


def _dedup(graphs) -> list[ColoredGraph]:
    seen, out = set(), []
    for g in graphs:
        code = canonical_form(g, COLORS_FIXED)
        if code not in seen:
            seen.add(code)
            out.append(g)
    return out


def reference_pairing_maximum(b: ColoredGraph) -> tuple[int, list[dict[int, int]]]:
    """Straight-line maximum over all pairings, built and recounted graph by graph."""
    whites, blacks = b.whites(), b.blacks()
    best, arg = -1, []
    for images in itertools.permutations(blacks):
        edges = list(b.edges) + [(w, x, 0) for w, x in zip(whites, images)]
        g = ColoredGraph(b.d, b.n, edges, range(b.d + 1))
        if not g.is_connected():
            continue
        val = c0_count(g)
        if val > best:
            best, arg = val, []
        if val == best:
            arg.append(dict(zip(whites, images)))
    return best, arg


def max_pairings(b: ColoredGraph) -> MaxReport:
    return max_gluings([b])


@lru_cache(maxsize=4096)
def _max_pairing_table(code) -> tuple[int, frozenset]:
    # keyed by canonical code; entries are unordered pairs in canonical labels
    g = _CANON_GRAPHS[code]
    rep = max_gluings([g])
    out = set()
    for perm in rep.perms:
        u = rep.union
        out.add(frozenset(frozenset((w, u.blacks[p])) for w, p in zip(u.whites, perm)))
    return rep.maximum, frozenset(out)


_CANON_GRAPHS: dict = {}


@lru_cache(maxsize=4096)
def _canonical_bubble(key) -> tuple:
    d, n, _, ckeys = key
    g = Bubble(d, n, [(u, v, c) for c, u, v in ckeys], _trusted=True)
    lab = canonical_labeling(g, COLORS_FIXED)
    label = [0] * n
    for i, v in enumerate(lab.order):
        label[v] = i
    rep = Bubble(d, n, [(label[u], label[v], c) for u, v, c in g.edges], _trusted=True)
    _CANON_GRAPHS.setdefault(lab.code, rep)
    return lab.code, tuple(label)


def is_max_pairing(b: ColoredGraph, pairs) -> bool:
    """Whether the matching ``pairs`` of b lies among its maximizing pairings."""
    code, label = _canonical_bubble(b.key())
    _, table = _max_pairing_table(code)
    mapped = frozenset(frozenset((label[x], label[y])) for x, y in pairs)
    return mapped in table


def c1(b: ColoredGraph) -> int:
    """Maximum C_0 over pairings of b (memoized per isomorphism class)."""
    code, _ = _canonical_bubble(b.key())
    return _max_pairing_table(code)[0]


# -- qEdges ---------------------------------------------------------------


@dataclass(frozen=True)
class QEdgesReport:
    hypothesis_met: bool
    pairs: tuple[tuple[int, int, int], ...]     # (v, vbar, q)
    maximizers: int
    counterexamples: tuple[tuple[int, int, tuple[tuple[int, int], ...]], ...]

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def heavy_pairs(b: ColoredGraph) -> list[tuple[int, int, int]]:
    """Vertex pairs joined by more than d/2 parallel edges."""
    out = []
    for w in b.whites():
        for x in sorted({b.neighbor(w, c) for c in b.colors}):
            q = len(b.parallel_colors(w, x))
            if 2 * q > b.d:
                out.append((w, x, q))
    return out


def lemma_qedges_check(b: ColoredGraph, v: int | None = None, vbar: int | None = None) -> QEdgesReport:
    """Check that every maximizing pairing matches each heavily joined pair."""
    if v is not None or vbar is not None:
        if v is None or vbar is None:
            raise HypothesisUnmet("give both vertices or neither")
        q = len(b.parallel_colors(v, vbar))
        if 2 * q <= b.d:
            raise HypothesisUnmet(f"vertices {v}, {vbar} share {q} edges, need more than {b.d}/2")
        pairs = [(v, vbar, q)]
    else:
        pairs = heavy_pairs(b)
    if not pairs:
        return QEdgesReport(False, (), 0, ())
    rep = max_pairings(b)
    u = rep.union
    bad = []
    for perm in rep.perms:
        m = {}
        for w, p in zip(u.whites, perm):
            m[w] = u.blacks[p]
            m[u.blacks[p]] = w
        for x, y, _ in pairs:
            if m[x] != y:
                bad.append((x, y, tuple(sorted((w, m[w]) for w in u.whites))))
    return QEdgesReport(True, tuple(pairs), rep.raw_count, tuple(bad))


# -- gluings --------------------------------------------------------------


def _check_budget(bubbles, budget):
    total = sum(b.n for b in bubbles)
    if total > budget:
        raise BudgetExceeded(f"{total} vertices exceeds the budget of {budget}")


def enumerate_gluings(bubbles: Sequence[ColoredGraph], connected_only: bool = False,
                      budget: int = DEFAULT_BUDGET) -> Iterator[ColoredGraph]:
    """Every color-0 matching of the union, in lexicographic order."""
    _check_budget(bubbles, budget)
    u = Union(bubbles)
    for perm in itertools.permutations(range(u.k)):
        if connected_only and not u.connected(perm):
            continue
        yield u.graph(perm)


def iter_gluing_perms(bubbles: Sequence[ColoredGraph], budget: int = DEFAULT_BUDGET):
    """``(union, iterator of perms)``; perm[i] is the black index matched to white i."""
    _check_budget(bubbles, budget)
    u = Union(bubbles)
    return u, itertools.permutations(range(u.k))


def _sweep_part(bubbles, heads) -> tuple[int | None, list, int, int]:
    u = Union(bubbles)
    best, arg, seen, conn = None, [], 0, 0
    for head in heads:
        for perm in _perms_with_head(u.k, head):
            seen += 1
            if not u.connected(perm):
                continue
            conn += 1
            val = u.c0(perm)
            if best is None or val > best:
                best, arg = val, [perm]
            elif val == best:
                arg.append(perm)
    return best, arg, seen, conn


def _merge(parts):
    best, arg, seen, conn = None, [], 0, 0
    for b, a, s, c in parts:
        seen += s
        conn += c
        if b is None:
            continue
        if best is None or b > best:
            best, arg = b, list(a)
        elif b == best:
            arg.extend(a)
    return best, arg, seen, conn


def black_orbit_heads(u: Union) -> list[int]:
    """One black index per orbit of the automorphisms that fix white 0.

    Those automorphisms move only the bubbles not containing white 0:
    automorphisms of each such bubble and exchanges of isomorphic ones,
    all parity-preserving with colors fixed.
    """
    k = u.k
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    bidx = {v: j for j, v in enumerate(u.blacks)}
    home = u.wown[0]
    others = [i for i in range(len(u.bubbles)) if i != home]

    def rooted_codes(b):
        # BFS code from each white vertex with fixed color order
        codes = {}
        for w in b.whites():
            lab = {w: 0}
            seq = [w]
            rows = []
            for x in seq:
                row = []
                for c in b.colors:
                    y = b.neighbor(x, c)
                    if y not in lab:
                        lab[y] = len(seq)
                        seq.append(y)
                    row.append(lab[y])
                rows.append(tuple(row))
            codes[w] = (tuple(rows), tuple(seq))
        return codes

    codes = {i: rooted_codes(u.bubbles[i]) for i in others}
    for i in others:
        bi = u.bubbles[i]
        root = min(bi.whites())
        rows_i, seq_i = codes[i][root]
        for j in others:
            bj = u.bubbles[j]
            if bj.n != bi.n:
                continue
            for w, (rows_j, seq_j) in codes[j].items():
                if rows_j != rows_i:
                    continue
                # isomorphism bubble i -> bubble j sending root to w
                for x, y in zip(seq_i, seq_j):
                    if not bi.is_white(x):
                        join(bidx[x + u.offsets[i]], bidx[y + u.offsets[j]])
    return sorted({find(j) for j in range(k)})


def max_gluings(bubbles: Sequence[ColoredGraph], marked: int | None = None, jobs: int = 1,
                budget: int = DEFAULT_BUDGET, symmetry_pruning: bool = False,
                dedup: bool = True) -> MaxReport:
    """Maximum C_0 over connected gluings, with every maximizing assignment.

    Work is split by the black matched to white 0; parts merge by max.
    With ``symmetry_pruning`` only one black per orbit is tried for white
    0, which preserves the maximum and the isomorphism classes of
    maximizers but not the raw maximizer count.
    """
    _check_budget(bubbles, budget)
    if marked is not None and not 0 <= marked < len(bubbles):
        raise IndexError(f"marked index {marked} out of range")
    u = Union(bubbles)
    heads = black_orbit_heads(u) if symmetry_pruning else list(range(u.k))
    if jobs > 1 and len(heads) > 1:
        chunks = [heads[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_sweep_part, [tuple(bubbles)] * len(chunks), chunks))
        best, arg, seen, conn = _merge(parts)
        arg.sort()
    else:
        best, arg, seen, conn = _sweep_part(bubbles, heads)
    graphs = _dedup(u.graph(p) for p in arg) if dedup else []
    return MaxReport(best, len(arg), len(graphs), graphs, arg, seen, conn, u, marked, symmetry_pruning)


# -- cut structure around one bubble --------------------------------------


@dataclass(frozen=True)
class CutPartition:
    bubble: tuple[int, ...]
    internal: tuple[int, ...]                 # color-0 edges with both ends in the bubble
    classes: tuple[tuple[int, ...], ...]      # crossing edges grouped by external component
    externals: tuple[tuple[int, ...], ...]    # vertex set of each external component

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def _occurrence(g: ColoredGraph, b) -> tuple[int, ...]:
    bubbles = g.bubbles()
    if isinstance(b, int):
        if not 0 <= b < len(bubbles):
            raise NotABubbleError(f"graph has {len(bubbles)} bubbles, no index {b}")
        return bubbles[b]
    verts = tuple(sorted(set(b)))
    if verts not in bubbles:
        raise NotABubbleError(f"vertices {verts} are not a bubble of the graph")
    return verts


def edge_cut_partition(g: ColoredGraph, b) -> CutPartition:
    """Split the color-0 edges leaving bubble ``b`` by the component they reach.

    ``b`` is a bubble index (bubbles ordered by lowest vertex) or its
    vertex set.
    """
    verts = _occurrence(g, b)
    inside = set(verts)
    internal, crossing = [], []
    for e in g.edges_of_color(0):
        u, v, _ = g.edges[e]
        if u in inside and v in inside:
            internal.append(e)
        elif u in inside or v in inside:
            crossing.append(e)
    comp_of: dict[int, int] = {}
    externals = []
    for s in range(g.n):
        if s in inside or s in comp_of:
            continue
        comp_of[s] = len(externals)
        stack, comp = [s], [s]
        while stack:
            x = stack.pop()
            for c in g.colors:
                y = g.neighbor(x, c)
                if y not in inside and y not in comp_of:
                    comp_of[y] = comp_of[s]
                    stack.append(y)
                    comp.append(y)
        externals.append(tuple(sorted(comp)))
    groups: dict[int, list[int]] = {}
    for e in crossing:
        u, v, _ = g.edges[e]
        out = v if u in inside else u
        groups.setdefault(comp_of[out], []).append(e)
    order = sorted(groups, key=lambda i: min(groups[i]))
    return CutPartition(
        verts, tuple(internal),
        tuple(tuple(groups[i]) for i in order),
        tuple(externals[i] for i in order),
    )


@dataclass(frozen=True)
class MaxTwoCutVerdict:
    ok: bool
    witness: tuple[tuple[int, int], ...] | None   # (white, black) pairs, original ids
    violation: str | None                         # "cut-size" or "non-maximal"
    partition: CutPartition
    detail: str = ""


def check_max_two_cut(g: ColoredGraph, b) -> MaxTwoCutVerdict:
    """Whether bubble ``b`` of g has the maximal 2-cut property.

    Every cut class must have exactly two edges, and the pairing formed by
    the internal color-0 edges plus the bubble-side ends of each 2-cut must
    be a maximizing pairing of the bubble.
    """
    part = edge_cut_partition(g, b)
    big = [s for s in part.sizes if s != 2]
    if big:
        return MaxTwoCutVerdict(False, None, "cut-size", part,
                                f"cut classes of sizes {sorted(part.sizes)}")
    inside = set(part.bubble)
    pairs = []
    for e in part.internal:
        pairs.append((g.white_end(e), g.black_end(e)))
    for cls in part.classes:
        ends = [x for e in cls for x in g.edges[e][:2] if x in inside]
        w = next(x for x in ends if g.is_white(x))
        k = next(x for x in ends if not g.is_white(x))
        pairs.append((w, k))
    pairs.sort()
    sub, vmap = g.subgraph(part.bubble, range(1, g.d + 1))
    local = [(vmap[w], vmap[k]) for w, k in pairs]
    if is_max_pairing(sub, local):
        return MaxTwoCutVerdict(True, tuple(pairs), None, part)
    best = c1(sub)
    got = c0_count(ColoredGraph(sub.d, sub.n, list(sub.edges) + [(x, y, 0) for x, y in local],
                                range(sub.d + 1), _trusted=True))
    return MaxTwoCutVerdict(False, tuple(pairs), "non-maximal", part,
                            f"induced pairing reaches {got}, maximum is {best}")


# -- the closed-form maximum ----------------------------------------------


@dataclass
class OnlyPlanarReport:
    brute_maximum: int | None
    formula: int
    c1_values: tuple[int, ...]
    marked: int
    maximizers: int
    passing: int                       # connected gluings where every bubble passes
    iff_holds: bool
    four_cuts: int                     # cut classes of size 4 seen among maximizers
    failures: list[str]
    report: MaxReport | None = None

    @property
    def ok(self) -> bool:
        return self.brute_maximum == self.formula and self.iff_holds and not self.failures

    def text(self) -> str:
        lines = [
            f"marked {self.marked}",
            "c1 " + " ".join(map(str, self.c1_values)),
            f"brute_maximum {self.brute_maximum}",
            f"formula {self.formula}",
            f"maximizers {self.maximizers}",
            f"all_bubbles_max_two_cut {self.passing}",
            f"iff {'holds' if self.iff_holds else 'fails'}",
            f"four_cuts {self.four_cuts}",
        ]
        lines += [f"failure {f}" for f in self.failures]
        return "\n".join(lines) + "\n"


def choose_marked(bubbles: Sequence[ColoredGraph], marked: int | None) -> int:
    nonplanar = [i for i, b in enumerate(bubbles) if not is_planar(b)]
    if marked is None:
        if len(nonplanar) > 1:
            raise ValueError("more than one non-planar bubble; the formula needs all but one planar")
        return nonplanar[0] if nonplanar else 0
    stray = [i for i in nonplanar if i != marked]
    if stray:
        raise ValueError(f"bubbles {stray} are non-planar and not marked")
    return marked


def only_planar_formula(bubbles: Sequence[ColoredGraph], marked: int) -> tuple[int, tuple[int, ...]]:
    vals = tuple(c1(b) for b in bubbles)
    return vals[marked] + sum(v - 3 for i, v in enumerate(vals) if i != marked), vals


def verify_only_planar(bubbles: Sequence[ColoredGraph], marked: int | None = None, jobs: int = 1,
                       budget: int = DEFAULT_BUDGET) -> OnlyPlanarReport:
    """Brute-force maximum against the closed form, plus both directions of

    maximizer <=> every bubble has the maximal 2-cut property,
    checked over every connected gluing.
    """
    marked = choose_marked(bubbles, marked)
    formula, vals = only_planar_formula(bubbles, marked)
    rep = max_gluings(bubbles, marked, jobs=jobs, budget=budget)
    u = rep.union
    maxset = set(rep.perms)
    occ = [u.occurrence(i) for i in range(len(bubbles))]
    failures = []
    passing = 0
    four = 0
    for perm in itertools.permutations(range(u.k)):
        if not u.connected(perm):
            continue
        g = u.graph(perm)
        verdicts = [check_max_two_cut(g, o) for o in occ]
        good = all(v.ok for v in verdicts)
        passing += good
        is_max = perm in maxset
        if is_max:
            four += sum(v.partition.sizes.count(4) for v in verdicts)
        if good != is_max:
            failures.append(f"perm {perm}: maximizer={is_max} max_two_cut={good}")
    if rep.maximum != formula:
        failures.append(f"brute maximum {rep.maximum} != formula {formula}")
    return OnlyPlanarReport(rep.maximum, formula, vals, marked, rep.raw_count, passing,
                            not any(f.startswith("perm") for f in failures), four, failures, rep)
