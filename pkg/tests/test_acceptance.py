"""The ten acceptance criteria, each with its time limit.

Every test prints one line ``ACCEPTANCE <k> PASS|FAIL <summary>`` to the
terminal, whether or not it passes.
"""

import random
import time

import pytest

import oracles as O
from coltri import fixtures
from coltri.embedding import embedding_stats, is_planar
from coltri.generators import all_bubbles, all_melonic_bubbles, random_closed_graph
from coltri.harness import CUT_SETS, FORMULA_SETS, HarnessConfig, run_suite
from coltri.moves import flip
from coltri.search import heavy_pairs, lemma_qedges_check, max_pairings


@pytest.fixture
def report(capsys):
    def emit(k, ok, summary, seconds, limit):
        in_time = seconds < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        with capsys.disabled():
            print(f"\nACCEPTANCE {k} {verdict} {summary} ({seconds:.2f}s, limit {limit}s)")
        assert ok, summary
        assert in_time, f"took {seconds:.2f}s, limit {limit}s"
    return emit


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _suite(name, **kw):
    return timed(lambda: run_suite(name, HarnessConfig(suites=(name,), **kw)))


def test_1_flip_delta_law(report):
    res, dt = _suite("flip-law")
    ok = res.passed and len(res.cases) >= 10000 and not res.truncated
    # an independent recount on a sample, outside the timed run
    rng = random.Random(99)
    checked = 0
    while checked < 300:
        g = random_closed_graph(rng.choice(range(4, 13, 2)), 3, rng)
        e1, e2 = rng.sample(g.edges_of_color(0), 2)
        out = flip(g, e1, e2)
        if not out.connected:
            continue
        inter = O.interaction(*O.plain(g), e1, e2)
        ok &= O.c0(*O.plain(out.graph)) == O.c0(*O.plain(g)) - 3 + 2 * len(inter)
        checked += 1
    report(1, ok, f"flip law: {len(res.cases)} connected instances, {res.failures} exceptions", dt, 10)


def test_2_gurau_nonnegativity(report):
    res, dt = _suite("gurau-nonneg")
    graphs = sum(int(c.instance.split("graphs=")[1].split()[0]) for c in res.cases)
    ok = res.passed and not res.truncated and graphs > 0
    report(2, ok, f"degree: {len(res.cases)} fixture multisets, {graphs} graphs, {res.failures} violations", dt, 60)


def test_3_melonic_c1(report):
    def run():
        return {n: max_pairings(fixtures.load(n)) for n in ("MELON_B2", "Q1_B4", "MELON6A", "MELON6B")}
    reps, dt = timed(run)
    got = {n: (r.maximum, r.raw_count) for n, r in reps.items()}
    want = {"MELON_B2": (3, 1), "Q1_B4": (5, 1), "MELON6A": (7, 1), "MELON6B": (7, 1)}
    report(3, got == want, f"melonic C_1 and maximizer counts {got}", dt, 1)


def test_4_embedding_goldens(report):
    def run():
        k33 = embedding_stats(fixtures.load("K33"))
        octa = embedding_stats(fixtures.load("OCTA"))
        mel = all_melonic_bubbles(8)
        return k33, octa, mel, [embedding_stats(b).genus for b in mel]
    (k33, octa, mel, genera), dt = timed(run)
    ok = (k33.genus, k33.face_profile) == (1, {6: 3})
    ok &= (octa.genus, octa.face_profile) == (0, {4: 6})
    ok &= len(mel) == 1 + 3 + 6 + 19 and set(genera) == {0}
    report(4, ok, f"K33 genus {k33.genus} {k33.face_profile}, OCTA genus {octa.genus} "
                  f"{octa.face_profile}, {len(mel)} melonic bubbles all genus 0", dt, 1)


def test_5_face_bound(report):
    res, dt = _suite("face-bound")
    planar = sum(1 for b in all_bubbles(10) if is_planar(b))
    ok = res.passed and len(res.cases) == planar > 0
    report(5, ok, f"face bound over {len(res.cases)} planar bubbles up to 10 vertices, "
                  f"{res.failures} violations", dt, 120)


def test_6_no_four_cuts(report):
    res, dt = _suite("four-cut")
    ok = res.passed and len(res.cases) == len(CUT_SETS) and not res.truncated
    report(6, ok, "size-4 cut classes in maximizers: "
                  + ", ".join(f"{c.instance} {c.observed}" for c in res.cases), dt, 300)


def test_7_max_two_cut_iff_maximizer(report):
    res, dt = _suite("max-two-cut")
    ok = res.passed and len(res.cases) == len(FORMULA_SETS) and not res.truncated
    report(7, ok, "2-cut property iff maximizer and closed form: "
                  + "; ".join(f"{c.instance} {c.observed}" for c in res.cases), dt, 300)


def test_8_boundary_invariance(report):
    res, dt = _suite("boundary-invariance")
    ok = res.passed and len(res.cases) >= 1000
    report(8, ok, f"boundary replacement: {len(res.cases)} instances, {res.failures} mismatches", dt, 30)


def test_9_sphere_recognition(report):
    res, dt = _suite("topology-sphere")
    ok = res.passed and not res.truncated and len(res.cases) == len(CUT_SETS) + 2
    report(9, ok, "reduction: " + "; ".join(f"{c.instance} {c.observed}" for c in res.cases), dt, 120)


def test_10_qedges(report):
    def run():
        seen = bad = 0
        for b in all_bubbles(8):
            if any(q == 2 for _, _, q in heavy_pairs(b)):
                seen += 1
                bad += not lemma_qedges_check(b).holds
        return seen, bad
    (seen, bad), dt = timed(run)
    report(10, seen > 0 and bad == 0, f"q=2 pairs: {seen} bubbles up to 8 vertices, {bad} counterexamples", dt, 60)
