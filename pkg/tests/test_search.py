import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from coltri import fixtures
from coltri.generators import random_bubble, random_melonic
from coltri.moves import flip
from coltri.search import (
    BudgetExceeded,
    HypothesisUnmet,
    NotABubbleError,
    Union,
    c1,
    check_max_two_cut,
    choose_marked,
    edge_cut_partition,
    enumerate_gluings,
    enumerate_pairings,
    is_max_pairing,
    lemma_qedges_check,
    max_gluings,
    max_pairings,
    only_planar_formula,
    reference_pairing_maximum,
    verify_only_planar,
)

F = fixtures.load

# maxima and maximizer counts from the brute-force oracle, frozen
PAIRING_GOLDEN = {
    "MELON_B2": (3, 1),
    "Q1_B4": (5, 1),
    "MELON6A": (7, 1),
    "MELON6B": (7, 1),
    "K33": (6, 3),
    "OCTA": (8, 3),
}

GLUING_GOLDEN = [
    (("Q1_B4", "MELON_B2"), 5, 2),
    (("Q1_B4", "Q1_B4"), 7, 4),
    (("OCTA", "MELON_B2"), 8, 12),
    (("K33", "MELON_B2"), 6, 9),
    (("K33", "Q1_B4"), 8, 18),
    (("OCTA", "MELON_B2", "MELON_B2"), 8, 60),
    (("Q1_B4", "Q1_B4", "MELON_B2"), 7, 16),
]


@pytest.mark.parametrize("name,k", [("MELON_B2", 1), ("OCTA", 24), ("K33", 6), ("Q1_B4", 2)])
def test_pairing_counts(name, k):
    ps = list(enumerate_pairings(F(name)))
    assert len(ps) == k
    assert all(p.connected for p in ps)
    assert len({p.pairs for p in ps}) == k


@pytest.mark.parametrize("name", sorted(PAIRING_GOLDEN))
def test_max_pairings_golden(name):
    rep = max_pairings(F(name))
    assert (rep.maximum, rep.raw_count) == PAIRING_GOLDEN[name]
    assert c1(F(name)) == rep.maximum


@pytest.mark.parametrize("name", sorted(PAIRING_GOLDEN))
def test_max_pairings_match_oracle(name):
    b = F(name)
    best, arg = O.pairing_maximum(*O.plain(b))
    rep = max_pairings(b)
    assert rep.maximum == best and rep.raw_count == len(arg)
    ref_best, ref_arg = reference_pairing_maximum(b)
    assert ref_best == best and len(ref_arg) == len(arg)
    mine = {frozenset(frozenset((w, rep.union.blacks[p])) for w, p in zip(rep.union.whites, perm))
            for perm in rep.perms}
    assert mine == set(arg)


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_random_bubble_pairings_match_oracle(seed):
    rng = random.Random(seed)
    b = random_bubble(rng.choice([2, 4, 6, 8]), 3, rng)
    best, arg = O.pairing_maximum(*O.plain(b))
    rep = max_pairings(b)
    assert (rep.maximum, rep.raw_count) == (best, len(arg))
    for pairs in arg:
        oriented = [tuple(sorted(p, key=lambda x: not b.is_white(x))) for p in pairs]
        assert is_max_pairing(b, oriented)


def test_is_max_pairing_survives_relabeling():
    b = F("OCTA")
    rep = max_pairings(b)
    perm = list(range(b.n))
    random.Random(3).shuffle(perm)
    moved = b.relabeled(perm)
    for p in rep.perms:
        pairs = [(perm[w], perm[rep.union.blacks[j]]) for w, j in zip(rep.union.whites, p)]
        assert is_max_pairing(moved, pairs)
    bad = next(p for p in enumerate_pairings(b) if p.c0 < 8)
    assert not is_max_pairing(b, bad.pairs)


def test_melonic_bubbles_have_c1_from_the_degree():
    # melonic gluing has degree 0, so C_0 = 3 + 3n/2 - faces
    rng = random.Random(4)
    for _ in range(20):
        b = random_melonic(rng.choice([2, 4, 6, 8]), 3, rng)
        faces = sum(O.bicolored_count(b.n, list(b.edges), a, c) for a, c in [(1, 2), (1, 3), (2, 3)])
        assert c1(b) == 3 + 3 * b.n // 2 - faces


def test_qedges_examples():
    rep = lemma_qedges_check(F("MELON6A"))
    assert rep.hypothesis_met and rep.holds and len(rep.pairs) == 3
    rep = lemma_qedges_check(F("Q1_B4"))
    assert rep.hypothesis_met and rep.holds
    assert not lemma_qedges_check(F("OCTA")).hypothesis_met
    with pytest.raises(HypothesisUnmet):
        lemma_qedges_check(F("OCTA"), 0, F("OCTA").neighbor(0, 1))
    with pytest.raises(HypothesisUnmet):
        lemma_qedges_check(F("OCTA"), 0)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_qedges_hold_on_random_bubbles(seed):
    rng = random.Random(seed)
    b = random_bubble(rng.choice([4, 6, 8]), 3, rng)
    assert lemma_qedges_check(b).holds


# -- gluings --------------------------------------------------------------


@pytest.mark.parametrize("names,k", [
    (("MELON_B2", "MELON_B2"), 2),
    (("Q1_B4", "Q1_B4", "MELON_B2"), 120),
])
def test_gluing_counts(names, k):
    gs = list(enumerate_gluings([F(n) for n in names]))
    assert len(gs) == k
    assert all(g.is_closed for g in gs)


def test_octa_pair_has_all_matchings():
    u = Union([F("OCTA"), F("OCTA")])
    assert sum(1 for _ in itertools.permutations(range(u.k))) == 40320
    assert max_gluings([F("OCTA"), F("OCTA")]).enumerated == 40320


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        max_gluings([F("OCTA"), F("OCTA"), F("MELON_B2")])
    with pytest.raises(BudgetExceeded):
        list(enumerate_gluings([F("OCTA"), F("OCTA"), F("MELON_B2")]))
    assert max_gluings([F("Q1_B4"), F("MELON_B2")], budget=6).maximum == 5


def test_gluings_reject_closed_graphs():
    with pytest.raises(NotABubbleError):
        max_gluings([F("SUPERMELON3")])


@pytest.mark.parametrize("names,best,count", GLUING_GOLDEN)
def test_max_gluings_golden(names, best, count):
    rep = max_gluings([F(n) for n in names])
    assert (rep.maximum, rep.raw_count) == (best, count)
    assert all(O.c0(*O.plain(g)) == best for g in rep.maximizers)


@pytest.mark.parametrize("names,best,count", GLUING_GOLDEN[:5])
def test_max_gluings_match_oracle(names, best, count):
    bubbles = [F(n) for n in names]
    assert O.gluing_maximum([O.plain(b) for b in bubbles]) == (best, count)


def test_octa_pair_maximum():
    rep = max_gluings([F("OCTA"), F("OCTA")])
    assert (rep.maximum, rep.raw_count) == (13, 144)


@pytest.mark.parametrize("names", [g[0] for g in GLUING_GOLDEN])
def test_pruning_and_jobs_keep_maxima(names):
    bubbles = [F(n) for n in names]
    full = max_gluings(bubbles)
    pruned = max_gluings(bubbles, symmetry_pruning=True)
    assert pruned.maximum == full.maximum and pruned.dedup_count == full.dedup_count
    assert pruned.raw_count <= full.raw_count


def test_parallel_sweep_matches_sequential():
    bubbles = [F("OCTA"), F("MELON_B2"), F("MELON_B2")]
    a = max_gluings(bubbles)
    b = max_gluings(bubbles, jobs=2)
    assert (a.maximum, a.perms, a.enumerated, a.connected) == (b.maximum, b.perms, b.enumerated, b.connected)


def test_no_flip_improves_a_maximizer():
    bubbles = [F("OCTA"), F("MELON_B2")]
    rep = max_gluings(bubbles)
    for g in rep.maximizers:
        for e1, e2 in itertools.combinations(g.edges_of_color(0), 2):
            res = flip(g, e1, e2)
            if res.connected:
                assert res.c0_after <= rep.maximum


# -- cut structure --------------------------------------------------------


def _glue(bubbles, matching):
    """Gluing graph from a {white: black} map in union ids."""
    u = Union(bubbles)
    bidx = {v: j for j, v in enumerate(u.blacks)}
    return u, u.graph(tuple(bidx[matching[w]] for w in u.whites))


def test_cut_partition_of_a_fully_crossing_octa_pair():
    u = Union([F("OCTA"), F("OCTA")])
    a, b = u.occurrence(0), u.occurrence(1)
    m = {}
    bl = [v for v in b if v in u.blacks]
    wh = [v for v in b if v in u.whites]
    for w, x in zip([v for v in a if v in u.whites], bl):
        m[w] = x
    for w, x in zip(wh, [v for v in a if v in u.blacks]):
        m[w] = x
    _, g = _glue(u.bubbles, m)
    part = edge_cut_partition(g, 0)
    assert part.sizes == (8,) and part.internal == ()
    v = check_max_two_cut(g, 0)
    assert not v.ok and v.violation == "cut-size"


def test_four_cut_is_a_violation():
    u = Union([F("Q1_B4"), F("Q1_B4")])
    a, b = u.occurrence(0), u.occurrence(1)
    m = dict(zip([v for v in a if v in u.whites], [v for v in b if v in u.blacks]))
    m.update(zip([v for v in b if v in u.whites], [v for v in a if v in u.blacks]))
    _, g = _glue(u.bubbles, m)
    v = check_max_two_cut(g, 0)
    assert v.partition.sizes == (4,)
    assert v.violation == "cut-size"


def _melon_chain(name, pairing):
    """Bubble ``name`` whose pairs (w, b) are each routed through a 2-vertex bubble."""
    bubbles = [F(name)] + [F("MELON_B2")] * len(pairing)
    u = Union(bubbles)
    m = {}
    for k, (w, b) in enumerate(pairing, start=1):
        mw, mb = u.occurrence(k)
        m[w] = mb
        m[mw] = b
    return _glue(bubbles, m)[1]


def test_non_maximal_pairing_certificate():
    octa = F("OCTA")
    bad = next(p for p in enumerate_pairings(octa) if p.c0 < 8)
    g = _melon_chain("OCTA", bad.pairs)
    v = check_max_two_cut(g, 0)
    assert v.partition.sizes == (2, 2, 2, 2)
    assert not v.ok and v.violation == "non-maximal"
    assert v.witness == tuple(sorted(bad.pairs))
    assert "maximum is 8" in v.detail


def test_maximal_pairing_through_melons_passes():
    rep = max_pairings(F("OCTA"))
    u = rep.union
    pairs = tuple((w, u.blacks[p]) for w, p in zip(u.whites, rep.perms[0]))
    g = _melon_chain("OCTA", pairs)
    assert check_max_two_cut(g, 0).ok
    for k in range(1, 5):
        assert check_max_two_cut(g, k).ok


def test_bubble_lookup_errors():
    g = _melon_chain("MELON_B2", [(0, 1)])
    with pytest.raises(NotABubbleError):
        edge_cut_partition(g, 99)
    with pytest.raises(NotABubbleError):
        edge_cut_partition(g, [0, 2])


# -- closed form ----------------------------------------------------------


def test_formula_values():
    assert only_planar_formula([F("OCTA"), F("OCTA")], 0) == (13, (8, 8))
    assert only_planar_formula([F("K33"), F("MELON_B2")], 0) == (6, (6, 3))


def test_choose_marked():
    assert choose_marked([F("OCTA"), F("K33")], None) == 1
    assert choose_marked([F("OCTA"), F("Q1_B4")], None) == 0
    with pytest.raises(ValueError):
        choose_marked([F("K33"), F("K33")], None)
    with pytest.raises(ValueError):
        choose_marked([F("K33"), F("OCTA")], 1)


@pytest.mark.parametrize("names", [("Q1_B4", "Q1_B4"), ("Q1_B4", "MELON_B2"), ("K33", "MELON_B2"),
                                   ("OCTA", "MELON_B2")])
def test_verify_only_planar(names):
    rep = verify_only_planar([F(n) for n in names])
    assert rep.ok, rep.text()
    assert rep.passing == rep.maximizers
    assert rep.four_cuts == 0
