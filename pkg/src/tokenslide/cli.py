"""Command-line front end.

Exit codes: 0 yes / success, 1 no (or campaign mismatches), 2 usage or input
error, 3 resource limit, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from .errors import (
    InternalLiftFailure,
    InternalProjectFailure,
    StateLimitExceeded,
    TokenSlidingError,
    TooLargeForExact,
)
from .exact import DEFAULT_MAX_STATES, SearchLimits
from .generators import GRAPH_CLASSES, GenSpec, generate_instance
from .harness import CampaignSpec, run_campaign
from .instance import format_witness, parse_witness, read_instance, serialize_instance, write_instance
from .poly import ALGORITHMS, solve_with
from .reductions import (
    KINDS,
    ReductionPolicy,
    lift_sequence,
    project_sequence,
    read_artifact,
    reduce,
    write_artifact,
)

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_LIMIT, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _read_witness(path):
    with open(path, encoding="utf-8") as fh:
        return parse_witness(fh.read())


def cmd_solve(args) -> int:
    inst = read_instance(args.file)
    limits = SearchLimits(max_states=args.max_states)
    res = solve_with(args.algo, inst, limits, want_witness=args.witness)
    if args.witness:
        sys.stdout.write(format_witness(res.answer, res.witness))
    else:
        print("yes" if res.answer else "no")
    return EXIT_YES if res.answer else EXIT_NO


def _default_map_path(out: str) -> str:
    stem, ext = os.path.splitext(out)
    return (stem if ext == ".tsd" else out) + ".map"


def cmd_reduce(args) -> int:
    inst = read_instance(args.input)
    policy = ReductionPolicy.parse(args.policy)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        red, art = reduce(args.kind, inst, policy)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    write_instance(red, args.output)
    write_artifact(art, args.map or _default_map_path(args.output))
    return EXIT_YES


def _translate(args, lift: bool) -> int:
    art = read_artifact(args.map)
    inst = read_instance(args.instance)
    answer, moves = _read_witness(args.witness)
    if not answer:
        sys.stdout.write(format_witness(False))
        return EXIT_NO
    out = lift_sequence(art, inst, moves) if lift else project_sequence(art, inst, moves)
    sys.stdout.write(format_witness(True, out))
    return EXIT_YES


def cmd_gen(args) -> int:
    inst = generate_instance(GenSpec(args.graph_class, args.n, args.k, args.seed))
    text = serialize_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_verify(args) -> int:
    mode = {"solver": "solver_equivalence", "reduction": "reduction_soundness"}[args.mode]
    spec = CampaignSpec(
        mode=mode,
        subject=args.subject,
        trials=args.trials,
        seed=args.seed,
        graph_class=args.graph_class,
        n_min=args.nmin,
        n_max=args.nmax,
        k_max=args.kmax,
        limits=SearchLimits(max_states=args.max_states),
        policies=tuple(args.policy or ["lex"]),
        exhaustive=False if args.sample else None,
        out_dir=args.out_dir,
    )
    report = run_campaign(spec)
    text = report.dumps()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    for m in report.mismatches:
        print(f"mismatch: {m.reason} ({m.provenance})", file=sys.stderr)
    return EXIT_YES if report.passed else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tokenslide", description="Token Sliding on oriented graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide an instance (.tsd)")
    s.add_argument("--algo", choices=ALGORITHMS, default="auto")
    s.add_argument("--witness", action="store_true", help="print a .wit witness instead of yes/no")
    s.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    s.add_argument("file")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="apply a reduction; writes OUT and a .map sidecar")
    r.add_argument("--kind", choices=KINDS, required=True)
    r.add_argument("--policy", default="lex", help="lex or seed:N")
    r.add_argument("input")
    r.add_argument("output")
    r.add_argument("--map", help="sidecar path (default: OUT with .map suffix)")
    r.set_defaults(func=cmd_reduce)

    for name, lift in (("lift", True), ("project", False)):
        t = sub.add_parser(name, help=f"{name} a witness through a reduction")
        t.add_argument("--map", required=True)
        t.add_argument("instance", metavar="ORIGINAL" if lift else "REDUCED")
        t.add_argument("witness")
        t.set_defaults(func=lambda a, lift=lift: _translate(a, lift))

    g = sub.add_parser("gen", help="generate a seeded instance")
    g.add_argument("--class", dest="graph_class", choices=GRAPH_CLASSES, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=None, help="token count (default alpha for *_max_is classes)")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run an oracle-equivalence campaign")
    v.add_argument("--mode", choices=("solver", "reduction"), required=True)
    v.add_argument("--subject", required=True)
    v.add_argument("--trials", type=int, required=True)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--nmin", type=int, default=1)
    v.add_argument("--nmax", type=int, default=8)
    v.add_argument("--kmax", type=int, default=None)
    v.add_argument("--class", dest="graph_class", choices=GRAPH_CLASSES)
    v.add_argument("--policy", action="append", help="repeatable; lex or seed:N")
    v.add_argument("--max-states", type=int, default=200_000)
    v.add_argument("--sample", action="store_true", help="never enumerate exhaustively")
    v.add_argument("--out-dir", help="persist counterexamples here")
    v.add_argument("--report", help="also write the JSON report to this file")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (StateLimitExceeded, TooLargeForExact) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InternalLiftFailure, InternalProjectFailure) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (TokenSlidingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
