"""Named verification suites with deterministic text reports."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import fixtures
from .census import (
    cycle_census,
    gurau_degree,
    induced_c0,
    interaction_colors,
    replace_with_boundary,
    split_color0_cycles,
)
from .embedding import check_face_bound, genus, is_planar, three_bubbles
from .generators import all_bubbles, random_bubble, random_closed_graph
from .graph import serialize_graph
from .moves import CANONICAL_SPHERE, flip, reduce_to_canonical
from .search import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Union,
    choose_marked,
    edge_cut_partition,
    max_gluings,
    max_pairings,
    only_planar_formula,
    verify_only_planar,
)

SUITES = (
    "flip-law",
    "gurau-nonneg",
    "melonic-c1",
    "four-cut",
    "max-two-cut",
    "only-planar-formula",
    "face-bound",
    "boundary-invariance",
    "topology-sphere",
)

# bubble multisets whose maximizer sets the cut and topology suites inspect
CUT_SETS = (("OCTA", "MELON_B2"), ("OCTA", "OCTA"), ("Q1_B4", "Q1_B4", "MELON_B2"))
# (names, marked index) for the closed-form maximum
FORMULA_SETS = CUT_SETS + (("K33", "MELON_B2"),)
FORMULA_MARKED = {("K33", "MELON_B2"): 0}
EXTRA_FORMULA_SETS = (
    ("Q1_B4", "MELON_B2"), ("Q1_B4", "Q1_B4"), ("OCTA", "MELON_B2", "MELON_B2"), ("K33", "Q1_B4"),
)
GLUING_FIXTURES = ("MELON_B2", "Q1_B4", "MELON6A", "MELON6B", "K33", "OCTA")


class UnknownSuite(ValueError):
    pass


@dataclass(frozen=True)
class HarnessConfig:
    budget: int = DEFAULT_BUDGET
    move_factor: int = 10
    jobs: int = 1
    output_dir: str | None = None
    suites: tuple[str, ...] = SUITES
    seed: int = 0
    flip_instances: int = 10_000
    flip_max_vertices: int = 12
    boundary_instances: int = 1_000
    gurau_max_vertices: int = 12
    face_bound_max_vertices: int = 10

    def __post_init__(self):
        for name in ("budget", "move_factor", "jobs", "flip_instances", "boundary_instances"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise UnknownSuite(f"unknown suites {unknown}; known: {', '.join(SUITES)}")


@dataclass(frozen=True)
class Case:
    instance: str
    expected: str
    observed: str

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


@dataclass
class SuiteResult:
    name: str
    cases: list[Case] = field(default_factory=list)
    seconds: float = 0.0
    truncated: list[str] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(not c.ok for c in self.cases) + len(self.truncated)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and bool(self.cases)

    def summary(self) -> str:
        return f"RESULT {self.name} {'pass' if self.passed else 'fail'} {len(self.cases)} {self.failures}"

    def report(self, full: bool | None = None) -> str:
        full = len(self.cases) <= 200 if full is None else full
        lines = [f"suite {self.name}"]
        for c in self.cases:
            if full or not c.ok:
                mark = "ok" if c.ok else "FAIL"
                lines.append(f"case {c.instance} expected={c.expected} observed={c.observed} {mark}")
        if not full:
            lines.append(f"cases {len(self.cases)} (mismatches listed above)")
        for t in self.truncated:
            lines.append(f"TRUNCATED {t}")
        lines.append(f"# time {self.seconds:.2f}s (timing line, excluded from comparisons)")
        lines.append(self.summary())
        return "\n".join(lines) + "\n"


def _bubbles(names) -> list:
    return [fixtures.load(n) for n in names]


def _tag(names) -> str:
    return "[" + ",".join(names) + "]"


# -- suites ---------------------------------------------------------------


def _flip_law(cfg: HarnessConfig, res: SuiteResult):
    rng = random.Random(cfg.seed)
    sizes = list(range(4, cfg.flip_max_vertices + 1, 2))
    i = 0
    while len(res.cases) < cfg.flip_instances:
        g = random_closed_graph(rng.choice(sizes), 3, rng)
        zero = g.edges_of_color(0)
        e1, e2 = rng.sample(zero, 2)
        out = flip(g, e1, e2)
        i += 1
        if not out.connected:
            continue
        # both sides by fresh census recounts
        before = cycle_census(g).c0
        after = cycle_census(out.graph).c0
        inter = interaction_colors(g, e1, e2)
        res.cases.append(Case(f"g{i}-e{e1}-e{e2}", str(before - 3 + 2 * len(inter)), str(after)))


def fixture_multisets(max_vertices: int, names=GLUING_FIXTURES) -> list[tuple[str, ...]]:
    sizes = {n: fixtures.load(n).n for n in names}
    out = []

    def grow(start, acc, total):
        if acc:
            out.append(tuple(acc))
        for j in range(start, len(names)):
            s = sizes[names[j]]
            if total + s <= max_vertices:
                grow(j, acc + [names[j]], total + s)

    grow(0, [], 0)
    return out


def _gurau(cfg: HarnessConfig, res: SuiteResult):
    for names in fixture_multisets(cfg.gurau_max_vertices):
        bubbles = _bubbles(names)
        if sum(b.n for b in bubbles) > cfg.budget:
            res.truncated.append(_tag(names))
            continue
        u = Union(bubbles)
        bad, seen, lo, hi = 0, 0, None, None
        for perm in itertools.permutations(range(u.k)):
            if not u.connected(perm):
                continue
            om = gurau_degree(u.graph(perm))
            seen += 1
            bad += not om.is_nonnegative_integer
            lo = om.value if lo is None else min(lo, om.value)
            hi = om.value if hi is None else max(hi, om.value)
        res.cases.append(Case(f"{_tag(names)} graphs={seen} omega={lo}..{hi}", "violations=0", f"violations={bad}"))


def _melonic_c1(cfg: HarnessConfig, res: SuiteResult):
    for name in ("MELON_B2", "Q1_B4", "MELON6A", "MELON6B"):
        b = fixtures.load(name)
        rep = max_pairings(b)
        res.cases.append(Case(name, f"C1={b.n + 1} maximizers=1", f"C1={rep.maximum} maximizers={rep.raw_count}"))


def _maximizer_graphs(names, cfg):
    rep = max_gluings(_bubbles(names), jobs=cfg.jobs, budget=cfg.budget)
    return rep, [rep.union.graph(p) for p in rep.perms]


def _four_cut(cfg: HarnessConfig, res: SuiteResult):
    for names in CUT_SETS:
        try:
            rep, graphs = _maximizer_graphs(names, cfg)
        except BudgetExceeded:
            res.truncated.append(_tag(names))
            continue
        occ = [rep.union.occurrence(i) for i in range(len(names))]
        fours = sum(edge_cut_partition(g, o).sizes.count(4) for g in graphs for o in occ)
        res.cases.append(Case(f"{_tag(names)} maximizers={len(graphs)}", "size4=0", f"size4={fours}"))


def _max_two_cut(cfg: HarnessConfig, res: SuiteResult):
    for names in FORMULA_SETS:
        marked = FORMULA_MARKED.get(names)
        try:
            rep = verify_only_planar(_bubbles(names), marked, jobs=cfg.jobs, budget=cfg.budget)
        except BudgetExceeded:
            res.truncated.append(_tag(names))
            continue
        res.cases.append(Case(
            f"{_tag(names)} marked={rep.marked}",
            f"maximizers=passing C={rep.formula}",
            f"maximizers={'passing' if rep.iff_holds else 'differ'} C={rep.brute_maximum}",
        ))


def _only_planar(cfg: HarnessConfig, res: SuiteResult):
    for names in FORMULA_SETS + EXTRA_FORMULA_SETS:
        bubbles = _bubbles(names)
        marked = FORMULA_MARKED.get(names, 0 if names[0] == "K33" else None)
        marked = choose_marked(bubbles, marked)
        try:
            rep = max_gluings(bubbles, marked, jobs=cfg.jobs, budget=cfg.budget)
        except BudgetExceeded:
            res.truncated.append(_tag(names))
            continue
        formula, vals = only_planar_formula(bubbles, marked)
        res.cases.append(Case(f"{_tag(names)} marked={marked} c1={','.join(map(str, vals))}",
                              str(formula), str(rep.maximum)))


def _face_bound(cfg: HarnessConfig, res: SuiteResult):
    for b in all_bubbles(cfg.face_bound_max_vertices):
        if not is_planar(b):
            continue
        rep = check_face_bound(b)
        res.cases.append(Case(f"{b.name} F2={rep.f2} F4={rep.f4}", "holds", "holds" if rep.holds else "violated"))


def random_glued_graph(rng: random.Random, max_vertices: int = 12):
    """Random connected gluing of random bubbles (returns graph and bubble vertex sets)."""
    while True:
        sizes = []
        total = 0
        while True:
            s = rng.choice((2, 2, 4, 4, 6))
            if total + s > max_vertices:
                break
            sizes.append(s)
            total += s
            if len(sizes) >= 2 and rng.random() < 0.4:
                break
        if len(sizes) < 2:
            continue
        bubbles = [random_bubble(s, 3, rng) for s in sizes]
        u = Union(bubbles)
        perm = list(range(u.k))
        rng.shuffle(perm)
        if u.connected(perm):
            return u.graph(perm), [u.occurrence(i) for i in range(len(bubbles))]


def _boundary(cfg: HarnessConfig, res: SuiteResult):
    rng = random.Random(cfg.seed + 1)
    for i in range(cfg.boundary_instances):
        g, occ = random_glued_graph(rng)
        k = rng.randrange(1, len(occ))
        chosen = rng.sample(range(len(occ)), k)
        H = sorted(v for j in chosen for v in occ[j])
        rep = replace_with_boundary(g, H)
        crossing = [e for e in g.edges_of_color(0) if (g.edges[e][0] in H) != (g.edges[e][1] in H)]
        agree = all(
            interaction_colors(g, a, b) == interaction_colors(rep.graph, rep.edge_map[a], rep.edge_map[b])
            for a, b in itertools.combinations(crossing, 2)
        )
        total = cycle_census(g).c0
        inside = induced_c0(g, H)
        outside = induced_c0(g, [v for v in range(g.n) if v not in set(H)])
        free_new = [rep.vertex_map[v] for v in rep.boundary.free_vertices]
        cross_after = split_color0_cycles(rep.graph, free_new).crossing
        cross_before = split_color0_cycles(g, H).crossing
        res.cases.append(Case(
            f"g{i} n={g.n} H={len(H)} pairs={len(crossing) * (len(crossing) - 1) // 2}",
            f"I=same C0={total} cross={cross_before}",
            f"I={'same' if agree else 'differ'} C0={inside + outside + cross_after} cross={cross_after}",
        ))


def _topology(cfg: HarnessConfig, res: SuiteResult):
    for names in CUT_SETS:
        try:
            rep, graphs = _maximizer_graphs(names, cfg)
        except BudgetExceeded:
            res.truncated.append(_tag(names))
            continue
        spheres = nonplanar = unflagged = 0
        for g in graphs:
            tr = reduce_to_canonical(g, cfg.move_factor)
            spheres += tr.verdict == CANONICAL_SPHERE
            unflagged += sum(not s.topological for s in tr.steps)
            nonplanar += sum(genus(t.bubble) != 0 for t in three_bubbles(g))
        n = len(graphs)
        res.cases.append(Case(
            f"{_tag(names)} maximizers={n}",
            f"spheres={n} nonplanar3={0} unflagged={0}",
            f"spheres={spheres} nonplanar3={nonplanar} unflagged={unflagged}",
        ))
    # soundness: graphs with a non-planar 3-bubble must never be called spheres
    for names in (("K33", "MELON_B2"), ("K33", "Q1_B4")):
        u = Union(_bubbles(names))
        claimed = checked = marked3 = 0
        for perm in itertools.permutations(range(u.k)):
            if not u.connected(perm):
                continue
            g = u.graph(perm)
            marked3 += any(genus(t.bubble) for t in three_bubbles(g))
            checked += 1
            claimed += reduce_to_canonical(g, cfg.move_factor).verdict == CANONICAL_SPHERE
        res.cases.append(Case(f"{_tag(names)} graphs={checked}", f"nonplanar3={checked} spheres=0",
                              f"nonplanar3={marked3} spheres={claimed}"))


_RUNNERS = {
    "flip-law": _flip_law,
    "gurau-nonneg": _gurau,
    "melonic-c1": _melonic_c1,
    "four-cut": _four_cut,
    "max-two-cut": _max_two_cut,
    "only-planar-formula": _only_planar,
    "face-bound": _face_bound,
    "boundary-invariance": _boundary,
    "topology-sphere": _topology,
}


def run_suite(name: str, cfg: HarnessConfig | None = None) -> SuiteResult:
    if name not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    cfg = cfg or HarnessConfig()
    res = SuiteResult(name)
    t0 = time.perf_counter()
    _RUNNERS[name](cfg, res)
    res.seconds = time.perf_counter() - t0
    if cfg.output_dir:
        out = Path(cfg.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.txt").write_text(res.report(), encoding="utf-8")
    return res


def emit_graphs(graphs, directory, prefix: str = "g") -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, g in enumerate(graphs):
        p = out / f"{prefix}{i:04d}.cg"
        p.write_text(serialize_graph(g), encoding="utf-8")
        paths.append(p)
    return paths


__all__ = [
    "HarnessConfig", "SuiteResult", "Case", "SUITES", "UnknownSuite", "run_suite",
    "fixture_multisets", "random_glued_graph", "emit_graphs",
]
