"""Command-line entry point: ``oscm <subcommand> ...``.

Exit statuses: 0 success, 1 usage error, 2 input format error,
3 size-guard refusal. ``OSCM_JOBS`` sets the default worker count.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .core import CyclicWitness, InstanceError, SizeGuardError
from .crossings import count_crossings, crossing_matrix
from .io import FormatError, emit_two_layer_svg, parse_instance, parse_ordering, serialize_instance, serialize_ordering
from .penalty import build_penalty_graph, find_cycle, harrigan_healy_order
from .reduction import measure_offset
from .search import bipartition_minima, find_cyclic_counterexamples, matching_labelings
from .solvers import DP_LIMIT, fas_accounting, solve

JOBS_ENV = "OSCM_JOBS"
DEFAULT_SEED = 0

METHOD_ALIASES = {
    "exact": "exact-dp",
    "brute": "brute-force",
    "bary": "barycenter",
    "median": "median",
    "greedy": "greedy-switch",
    "hh": "harrigan-healy",
}

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oscm", description="One-sided crossing minimization toolkit.")
    p.add_argument("--jobs", type=_positive, default=_default_jobs(), help=f"worker processes (default ${JOBS_ENV} or 1)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="order the free layer")
    s.add_argument("instance", type=Path)
    s.add_argument("--method", choices=sorted(METHOD_ALIASES), default="exact")
    s.add_argument("--limit", type=_positive, default=DP_LIMIT, help="free-vertex limit for the exact solver")
    s.add_argument("--accounting", action="store_true", help="also print the feedback-arc-set accounting")

    s = sub.add_parser("penalty", help="print the penalty digraph")
    s.add_argument("instance", type=Path)
    s.add_argument("--witness", action="store_true", help="print a directed cycle if there is one")

    s = sub.add_parser("reduce", help="measure the apex-augmentation crossing offset")
    s.add_argument("--stars", type=_positive, required=True)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--trials", type=_positive, default=20)
    s.add_argument("-o", "--output", type=Path)

    s = sub.add_parser("search", help="search small trees for cyclic penalty digraphs")
    s.add_argument("--max-vertices", type=_positive, required=True)
    s.add_argument("--paper-profile", action="store_true", help="keep only witnesses with the published cr profile")
    s.add_argument("--out-dir", type=Path, help="write each witness as an instance file here")

    s = sub.add_parser("draw", help="write an SVG two-layer drawing")
    s.add_argument("instance", type=Path)
    s.add_argument("ordering", type=Path)
    s.add_argument("-o", "--output", type=Path)

    s = sub.add_parser("check", help="count crossings of a given ordering")
    s.add_argument("instance", type=Path)
    s.add_argument("ordering", type=Path)
    return p


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _labels(inst, ids):
    return " ".join(str(inst.n_fixed + u + 1) for u in ids)


def _cmd_solve(args, out):
    inst = parse_instance(_read(args.instance))
    method = METHOD_ALIASES[args.method]
    if method == "harrigan-healy":
        res = harrigan_healy_order(inst)
        if isinstance(res, CyclicWitness):
            out.write(f"c cyclic penalty digraph, cycle: {_labels(inst, res.cycle)}\n")
            return EXIT_OK
    res = solve(inst, method, limit=args.limit)
    out.write(serialize_ordering(res.ordering, inst))
    out.write(f"c method: {res.method}\n")
    out.write(f"c crossings: {res.crossings}\n")
    if args.accounting and res.optimal:
        out.write(f"c accounting: {fas_accounting(inst, res)}\n")
    return EXIT_OK


def _cmd_penalty(args, out):
    inst = parse_instance(_read(args.instance))
    pg = build_penalty_graph(crossing_matrix(inst))
    for u, v, w in pg.arcs:
        out.write(f"{inst.n_fixed + u + 1} {inst.n_fixed + v + 1} {w}\n")
    cyc = find_cycle(pg)
    out.write(f"acyclic: {'yes' if cyc is None else 'no'}\n")
    if args.witness and cyc is not None:
        out.write(f"cycle: {_labels(inst, cyc)}\n")
    return EXIT_OK


def _cmd_reduce(args, out):
    report = measure_offset(args.stars, args.trials, args.seed, jobs=args.jobs)
    text = report.to_text()
    if args.output:
        args.output.write_text(text)
    out.write(text)
    return EXIT_OK


def _cmd_search(args, out):
    witnesses = find_cyclic_counterexamples(args.max_vertices, jobs=args.jobs)
    if args.paper_profile:
        witnesses = [w for w in witnesses if w.instance.n_free == 3 and matching_labelings(w)]
    if not witnesses:
        out.write("no counterexamples found\n")
        return EXIT_OK
    out.write(f"{len(witnesses)} counterexample(s) found\n")
    for (a, b), k in bipartition_minima(witnesses).items():
        out.write(f"fixed={a} free={b}: {k}\n")
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
    for k, w in enumerate(witnesses, start=1):
        inst = w.instance
        comments = [f"witness {k}: {w.n_total} vertices", f"cycle: {_labels(inst, w.cycle)}"]
        if w.cr_profile is not None:
            comments.append("cr profile (01 10 02 20 12 21): " + " ".join(map(str, w.cr_profile)))
            for g, h, i in matching_labelings(w):
                comments.append(f"paper labeling g h i = {_labels(inst, (g, h, i))}")
        text = serialize_instance(inst, comments)
        if args.out_dir:
            (args.out_dir / f"witness_{k:03d}.gr").write_text(text)
        else:
            out.write(text)
    return EXIT_OK


def _cmd_draw(args, out):
    inst = parse_instance(_read(args.instance))
    ordering = parse_ordering(_read(args.ordering), inst)
    svg = emit_two_layer_svg(inst, ordering)
    if args.output:
        args.output.write_text(svg)
    else:
        out.write(svg)
    return EXIT_OK


def _cmd_check(args, out):
    inst = parse_instance(_read(args.instance))
    ordering = parse_ordering(_read(args.ordering), inst)
    out.write(f"crossings: {count_crossings(inst, ordering)}\n")
    return EXIT_OK


COMMANDS = {
    "solve": _cmd_solve,
    "penalty": _cmd_penalty,
    "reduce": _cmd_reduce,
    "search": _cmd_search,
    "draw": _cmd_draw,
    "check": _cmd_check,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (FormatError, InstanceError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FORMAT
    except SizeGuardError as exc:
        err.write(f"refused: {exc}\n")
        return EXIT_GUARD


def main():
    sys.exit(run())
