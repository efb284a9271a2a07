import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from coltri import fixtures
from coltri.embedding import (
    NonPlanarError,
    NotCubicError,
    check_face_bound,
    embedding_stats,
    genus,
    is_melonic,
    is_planar,
    replay_melonic,
    three_bubbles,
)
from coltri.generators import all_bubbles, all_melonic_bubbles, random_bubble, random_closed_graph, random_melonic
from coltri.graph import COLORS_FIXED, ColoredGraph, GraphError, canonical_form


@pytest.mark.parametrize("name,V,E,F,g,profile", [
    ("K33", 6, 9, 3, 1, {6: 3}),
    ("OCTA", 8, 12, 6, 0, {4: 6}),
    ("MELON_B2", 2, 3, 3, 0, {2: 3}),
    ("Q1_B4", 4, 6, 4, 0, {2: 2, 4: 2}),
])
def test_embedding_goldens(name, V, E, F, g, profile):
    s = embedding_stats(fixtures.load(name))
    assert (s.V, s.E, s.F, s.genus) == (V, E, F, g)
    assert s.face_profile == profile


@pytest.mark.parametrize("name,planar", [("MELON6A", True), ("MELON6B", True), ("K33", False), ("OCTA", True)])
def test_planarity(name, planar):
    b = fixtures.load(name)
    assert is_planar(b) is planar
    assert (genus(b) == 0) is planar


def test_embedding_needs_three_colors_and_connectivity():
    with pytest.raises(NotCubicError):
        embedding_stats(fixtures.load("SUPERMELON3"))
    two = ColoredGraph(3, 4, [(0, 1, c) for c in (1, 2, 3)] + [(2, 3, c) for c in (1, 2, 3)])
    with pytest.raises(NotCubicError):
        embedding_stats(two)


def test_three_bubbles_of_the_supermelon():
    tb = three_bubbles(fixtures.load("SUPERMELON3"))
    assert [t.colors for t in tb] == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert all(t.bubble == fixtures.load("MELON_B2") for t in tb)


@given(st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_euler_invariants(seed):
    rng = random.Random(seed)
    b = random_bubble(rng.choice([2, 4, 6, 8, 10, 12]), 3, rng)
    s = embedding_stats(b)
    assert s.genus == O.euler_genus(*O.plain(b)) >= 0
    assert sum(k * f for k, f in s.face_profile.items()) == 2 * s.E
    assert all(k % 2 == 0 for k in s.face_profile)
    assert sum(s.face_profile.values()) == s.F
    assert is_planar(b) == (s.genus == 0)


def test_three_bubbles_of_closed_graphs_partition_vertices():
    rng = random.Random(5)
    for _ in range(40):
        g = random_closed_graph(rng.choice([4, 6, 8]), 3, rng)
        tb = three_bubbles(g)
        for cols in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
            verts = sorted(v for t in tb if t.colors == cols for v in t.vertices)
            assert verts == list(range(g.n))


def test_four_vertex_bubble_is_melonic_in_one_step():
    w = is_melonic(fixtures.load("Q1_B4"))
    assert w.melonic and len(w.steps) == 1
    assert replay_melonic(fixtures.load("Q1_B4"), w)


@pytest.mark.parametrize("name", ["OCTA", "K33"])
def test_non_melonic_fixtures(name):
    w = is_melonic(fixtures.load(name))
    assert not w.melonic and w.steps == ()


@pytest.mark.parametrize("name", ["MELON_B2", "MELON6A", "MELON6B"])
def test_melonic_fixtures(name):
    b = fixtures.load(name)
    w = is_melonic(b)
    assert w.melonic and len(w.steps) == (b.n - 2) // 2
    assert replay_melonic(b, w)


def test_melonic_recognition_rejects_closed_graphs():
    with pytest.raises(GraphError):
        is_melonic(fixtures.load("SUPERMELON3"))


def test_melonic_implies_planar_up_to_ten_vertices():
    for b in all_bubbles(10):
        if is_melonic(b).melonic:
            assert is_planar(b)


def test_greedy_membership_equals_insertion_closure():
    closure = {canonical_form(b, COLORS_FIXED) for b in all_melonic_bubbles(10)}
    greedy = {canonical_form(b, COLORS_FIXED) for b in all_bubbles(10) if is_melonic(b).melonic}
    assert closure == greedy
    assert len(closure) == 1 + 3 + 6 + 19 + 54


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_melonic_verdict_ignores_scan_order(seed):
    rng = random.Random(seed)
    b = random_melonic(rng.choice(range(2, 20, 2)), 3, rng) if rng.random() < 0.6 else random_bubble(
        rng.choice([4, 6, 8, 10]), 3, rng)
    first = is_melonic(b)
    other = is_melonic(b, rng)
    assert first.melonic == other.melonic
    assert replay_melonic(b, other) == other.melonic


def test_face_bound_examples():
    octa = check_face_bound(fixtures.load("OCTA"))
    assert (octa.f2, octa.f4, octa.holds, octa.tight) == (0, 6, True, True)
    q = check_face_bound(fixtures.load("Q1_B4"))
    assert (q.f2, q.f4, q.holds, q.tight) == (2, 2, True, True)
    m = check_face_bound(fixtures.load("MELON_B2"))
    assert (m.f2, m.holds, m.tight) == (3, True, True)
    with pytest.raises(NonPlanarError):
        check_face_bound(fixtures.load("K33"))


def test_face_bound_holds_on_all_planar_bubbles():
    for b in all_bubbles(10):
        if is_planar(b):
            assert check_face_bound(b).holds
