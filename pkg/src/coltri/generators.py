"""Random and exhaustive sources of colored graphs and bubbles."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .graph import COLORS_FIXED, Bubble, ColoredGraph, canonical_form


def _from_perms(d: int, k: int, perms: dict[int, tuple[int, ...]], name=None, support=None) -> ColoredGraph:
    # whites are 0..k-1, blacks k..2k-1; perms[c][i] is the black partner of white i
    edges = [(i, k + p[i], c) for c, p in perms.items() for i in range(k)]
    return ColoredGraph(d, 2 * k, edges, support if support is not None else perms.keys(), name, _trusted=True)


def random_closed_graph(n: int, d: int = 3, rng: random.Random | None = None,
                        connected: bool = True) -> ColoredGraph:
    """Uniform color-by-color random matchings on n vertices, colors 0..d."""
    rng = rng or random.Random()
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    k = n // 2
    while True:
        perms = {}
        for c in range(d + 1):
            p = list(range(k))
            rng.shuffle(p)
            perms[c] = tuple(p)
        g = _from_perms(d, k, perms)
        if not connected or g.is_connected():
            return g


def random_bubble(n: int, d: int = 3, rng: random.Random | None = None) -> Bubble:
    rng = rng or random.Random()
    k = n // 2
    while True:
        perms = {}
        for c in range(1, d + 1):
            p = list(range(k))
            rng.shuffle(p)
            perms[c] = tuple(p)
        g = _from_perms(d, k, perms)
        if g.is_connected():
            return Bubble(d, n, g.edges, _trusted=True)


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _perm_of_type(parts: tuple[int, ...]) -> tuple[int, ...]:
    p, start = [], 0
    for size in parts:
        p.extend(range(start + 1, start + size))
        p.append(start)
        start += size
    return tuple(p)


def bubbles_with(n: int, d: int = 3, dedup: bool = True) -> list[Bubble]:
    """All connected bubbles on exactly n vertices.

    Color 1 is fixed to the matching white i - black i (any bubble can be
    relabeled so); simultaneous relabeling then lets color 2 range over one
    permutation per cycle type, and the remaining colors range freely.
    With ``dedup`` one representative per colors-fixed isomorphism class is
    kept.
    """
    k = n // 2
    ident = tuple(range(k))
    out, seen = [], set()
    for parts in _partitions(k):
        sigma2 = _perm_of_type(parts)
        for rest in itertools.product(itertools.permutations(range(k)), repeat=d - 2):
            perms = {1: ident, 2: sigma2}
            for j, p in enumerate(rest):
                perms[3 + j] = p
            g = _from_perms(d, k, perms)
            if not g.is_connected():
                continue
            if dedup:
                code = canonical_form(g, COLORS_FIXED)
                if code in seen:
                    continue
                seen.add(code)
            out.append(Bubble(d, n, g.edges, name=f"gen{n}-{len(out)}", _trusted=True))
    return out


def all_bubbles(max_vertices: int, d: int = 3, dedup: bool = True) -> list[Bubble]:
    out = []
    for n in range(2, max_vertices + 1, 2):
        out.extend(bubbles_with(n, d, dedup))
    return out


def melonic_insert(g: ColoredGraph, e: int) -> ColoredGraph:
    """Cut edge e of color c and insert a pair joined by every other color."""
    u, v, c = g.edges[e]
    a, b = g.n, g.n + 1
    w, k = (u, v) if g.is_white(u) else (v, u)
    edges = [x for i, x in enumerate(g.edges) if i != e]
    # w (white) - b (black) and a (white) - k (black) carry color c
    edges.append((w, b, c))
    edges.append((a, k, c))
    for col in g.colors:
        if col != c:
            edges.append((a, b, col))
    cls = Bubble if isinstance(g, Bubble) else ColoredGraph
    if cls is Bubble:
        return Bubble(g.d, g.n + 2, edges, _trusted=True)
    return ColoredGraph(g.d, g.n + 2, edges, g.support, _trusted=True)


def random_melonic(n: int, d: int = 3, rng: random.Random | None = None, closed: bool = False) -> ColoredGraph:
    """Random melonic bubble (or closed graph with ``closed``) on n vertices."""
    rng = rng or random.Random()
    cols = range(0 if closed else 1, d + 1)
    g: ColoredGraph = ColoredGraph(d, 2, [(0, 1, c) for c in cols], cols, _trusted=True)
    if not closed:
        g = Bubble(d, 2, g.edges, _trusted=True)
    while g.n < n:
        g = melonic_insert(g, rng.randrange(len(g.edges)))
    return g


def all_melonic_bubbles(max_vertices: int, d: int = 3) -> list[Bubble]:
    """Closure of the 2-vertex bubble under insertions, one per colors-fixed class."""
    start = Bubble(d, 2, [(0, 1, c) for c in range(1, d + 1)], name="melon2")
    layer = [start]
    out = [start]
    seen = {canonical_form(start, COLORS_FIXED)}
    while layer and layer[0].n + 2 <= max_vertices:
        nxt = []
        for b in layer:
            for e in range(len(b.edges)):
                m = melonic_insert(b, e)
                code = canonical_form(m, COLORS_FIXED)
                if code not in seen:
                    seen.add(code)
                    nxt.append(m)
        out.extend(nxt)
        layer = nxt
    return out
