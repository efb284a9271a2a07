"""Bundled reference graphs, shipped as ``.cg`` files next to this module."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..graph import Bubble, ColoredGraph, parse_graph

FILES = {
    "SUPERMELON3": "supermelon3.cg",
    "MELON_B2": "melon_b2.cg",
    "Q1_B4": "q1b4.cg",
    "MELON6A": "melon6a.cg",
    "MELON6B": "melon6b.cg",
    "K33": "k33.cg",
    "OCTA": "octa.cg",
}


def fixture_text(name: str) -> str:
    try:
        fname = FILES[name.upper()]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FILES)}") from None
    return resources.files(__name__).joinpath(fname).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str) -> ColoredGraph:
    """Parsed fixture; bubbles come back as :class:`Bubble`."""
    g = parse_graph(fixture_text(name))
    if g.is_bubble:
        return Bubble.from_graph(g)
    return g


def fixture_path(name: str):
    return resources.files(__name__).joinpath(FILES[name.upper()])


def names() -> list[str]:
    return list(FILES)
