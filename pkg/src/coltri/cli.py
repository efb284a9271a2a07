"""Command-line entry point: ``coltri <command> [files...] [options]``.

Exit status: 0 on success or a passing check, 1 on a failing check,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures
from .census import cycle_census, gurau_degree
from .embedding import embedding_stats, is_melonic
from .graph import Bubble, GraphError, parse_graph, serialize_graph
from .harness import SUITES, HarnessConfig, emit_graphs, run_suite
from .moves import CANONICAL_SPHERE, EmptyContraction, MoveError, contract, flip, reduce_to_canonical
from .search import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    HypothesisUnmet,
    check_max_two_cut,
    max_gluings,
    max_pairings,
    verify_only_planar,
)

GRAMMAR = (
    "coltri (validate|census|embed|bubbles|flip|contract|reduce|maxpair|maxglue|check2cut"
    "|verify <suite>|run-all) [files...] [--budget N] [--jobs N] [--emit-graphs DIR]"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str):
    """Read a graph file; ``fixture:NAME`` loads a bundled fixture."""
    if path.startswith("fixture:"):
        return fixtures.load(path.split(":", 1)[1])
    text = Path(path).read_text(encoding="utf-8")
    g = parse_graph(text)
    return Bubble.from_graph(g) if g.is_bubble and g.is_connected() else g


def _need(files, k, what):
    if len(files) < k:
        raise UsageError(f"{what} needs {k} argument(s)")


def _ints(vals, what):
    try:
        return [int(v) for v in vals]
    except ValueError:
        raise UsageError(f"{what} must be integers") from None


def cmd_validate(args, out) -> int:
    _need(args.files, 1, "validate")
    status = 0
    for path in args.files:
        try:
            g = _read(path)
        except GraphError as exc:
            out.write(f"invalid {path}\n{exc}\n")
            status = 1
            continue
        kind = "bubble" if g.is_bubble else "closed" if g.is_closed else "partial"
        out.write(f"ok {path} d={g.d} n={g.n} edges={len(g.edges)} {kind}\n")
    return status


def cmd_census(args, out) -> int:
    _need(args.files, 1, "census")
    g = _read(args.files[0])
    cen = cycle_census(g)
    out.write(cen.text())
    if 0 in g.support:
        out.write(f"C0 {cen.c0}\n")
    out.write(f"total {cen.total}\n")
    if g.is_closed and g.is_connected():
        out.write(f"gurau_degree {gurau_degree(g).value}\n")
    return 0


def cmd_embed(args, out) -> int:
    _need(args.files, 1, "embed")
    g = _read(args.files[0])
    st = embedding_stats(g)
    out.write(f"{st.V} {st.E} {st.F} {st.genus}\n")
    out.write("profile " + " ".join(f"{k}:{v}" for k, v in sorted(st.face_profile.items())) + "\n")
    out.write(f"planar {str(st.genus == 0).lower()}\n")
    out.write(f"melonic {str(is_melonic(g).melonic).lower()}\n")
    return 0


def cmd_bubbles(args, out) -> int:
    _need(args.files, 1, "bubbles")
    g = _read(args.files[0])
    for i, comp in enumerate(g.bubbles()):
        sub, _ = g.subgraph(comp, range(1, g.d + 1))
        line = f"bubble {i} n={len(comp)} vertices={','.join(map(str, comp))}"
        if g.d == 3:
            line += f" genus={embedding_stats(sub).genus}"
        out.write(line + "\n")
    return 0


def _write_graphs(graphs, out, emit, prefix):
    for g in graphs:
        out.write(serialize_graph(g))
    if emit:
        emit_graphs(graphs, emit, prefix)


def cmd_flip(args, out) -> int:
    _need(args.files, 3, "flip")
    g = _read(args.files[0])
    e1, e2 = _ints(args.files[1:3], "edge ids")
    res = flip(g, e1, e2)
    out.write(f"connected {str(res.connected).lower()}\n")
    out.write(f"c0_before {res.c0_before}\nc0_after {res.c0_after}\n")
    out.write(f"interaction {','.join(map(str, sorted(res.interaction))) or '-'}\n")
    if res.connected:
        out.write(f"predicted {res.predicted_c0}\n")
    out.write(f"two_edge_cut {str(res.was_two_cut).lower()}\n")
    _write_graphs(res.components, out, args.emit_graphs, "flip")
    return 0


def cmd_contract(args, out) -> int:
    _need(args.files, 2, "contract")
    g = _read(args.files[0])
    (e,) = _ints(args.files[1:2], "edge id")
    res = contract(g, e)
    out.write(f"case {res.case}\n")
    out.write(f"c0_before {res.c0_before}\nc0_after {res.c0_after}\n")
    out.write(f"expected_delta {res.expected_delta if res.expected_delta is not None else '-'}\n")
    out.write(f"components {len(res.graphs)}\n")
    _write_graphs(res.graphs, out, args.emit_graphs, "contract")
    return 0 if res.expected_delta is None or res.delta == res.expected_delta else 1


def cmd_reduce(args, out) -> int:
    _need(args.files, 1, "reduce")
    g = _read(args.files[0])
    tr = reduce_to_canonical(g, args.move_factor)
    out.write(tr.text())
    if args.emit_graphs:
        emit_graphs([tr.terminal], args.emit_graphs, "terminal")
    return 0 if tr.verdict == CANONICAL_SPHERE else 1


def cmd_maxpair(args, out) -> int:
    _need(args.files, 1, "maxpair")
    b = _read(args.files[0])
    rep = max_pairings(b)
    out.write(rep.text())
    if args.emit_graphs:
        emit_graphs(rep.maximizers, args.emit_graphs, "maxpair")
    return 0


def cmd_maxglue(args, out) -> int:
    _need(args.files, 1, "maxglue")
    bubbles = [_read(p) for p in args.files]
    rep = max_gluings(bubbles, args.marked, jobs=args.jobs, budget=args.budget)
    out.write(rep.text())
    if args.emit_graphs:
        emit_graphs(rep.maximizers, args.emit_graphs, "maxglue")
    return 0


def cmd_check2cut(args, out) -> int:
    _need(args.files, 1, "check2cut")
    if args.bubble is None:
        raise UsageError("check2cut needs --bubble INDEX")
    g = _read(args.files[0])
    v = check_max_two_cut(g, args.bubble)
    out.write(f"bubble {args.bubble} vertices={','.join(map(str, v.partition.bubble))}\n")
    out.write(f"internal {len(v.partition.internal)}\n")
    out.write("cut_sizes " + (" ".join(map(str, v.partition.sizes)) or "-") + "\n")
    if v.witness is not None:
        out.write("pairing " + " ".join(f"{w}-{b}" for w, b in v.witness) + "\n")
    if v.violation:
        out.write(f"violation {v.violation} {v.detail}\n")
    out.write(f"max_two_cut {str(v.ok).lower()}\n")
    return 0 if v.ok else 1


def _config(args, suites) -> HarnessConfig:
    return HarnessConfig(budget=args.budget, move_factor=args.move_factor, jobs=args.jobs,
                         output_dir=args.out, suites=tuple(suites), seed=args.seed)


def cmd_verify(args, out) -> int:
    _need(args.files, 1, "verify")
    name, files = args.files[0], args.files[1:]
    if name == "only-planar":
        if not files:
            raise UsageError("verify only-planar needs bubble files")
        rep = verify_only_planar([_read(p) for p in files], args.marked, jobs=args.jobs, budget=args.budget)
        out.write(rep.text())
        if args.emit_graphs and rep.report is not None:
            emit_graphs(rep.report.maximizers, args.emit_graphs, "max")
        out.write(f"RESULT only-planar {'pass' if rep.ok else 'fail'} 1 {0 if rep.ok else 1}\n")
        return 0 if rep.ok else 1
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; known: only-planar, {', '.join(SUITES)}")
    if files:
        raise UsageError(f"suite {name} takes no files")
    res = run_suite(name, _config(args, [name]))
    out.write(res.report())
    return 0 if res.passed else 1


def cmd_run_all(args, out) -> int:
    cfg = _config(args, SUITES)
    status = 0
    for name in SUITES:
        res = run_suite(name, cfg)
        out.write(res.report())
        status |= not res.passed
    return status


COMMANDS = {
    "validate": cmd_validate,
    "census": cmd_census,
    "embed": cmd_embed,
    "bubbles": cmd_bubbles,
    "flip": cmd_flip,
    "contract": cmd_contract,
    "reduce": cmd_reduce,
    "maxpair": cmd_maxpair,
    "maxglue": cmd_maxglue,
    "check2cut": cmd_check2cut,
    "verify": cmd_verify,
    "run-all": cmd_run_all,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coltri", usage=GRAMMAR, description="Colored graphs of 3D colored triangulations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("files", nargs="*")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="vertex budget for exhaustive sweeps")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--emit-graphs", metavar="DIR", help="write result graphs into DIR")
    p.add_argument("--marked", type=int, help="index of the distinguished bubble")
    p.add_argument("--bubble", type=int, help="bubble index for check2cut")
    p.add_argument("--move-factor", type=int, default=10, help="reduction move budget per vertex")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--out", metavar="DIR", help="also write suite reports into DIR")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.budget <= 0 or args.jobs <= 0 or args.move_factor <= 0:
            raise UsageError("--budget, --jobs and --move-factor must be positive")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"usage: {GRAMMAR}\nerror: {exc}\n")
        return 2
    except (GraphError, MoveError, EmptyContraction, BudgetExceeded, HypothesisUnmet,
            OSError, ValueError, IndexError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
