"""Command-line interface.

    clusterlab verify <case|all> [--json] [--seed N]
    clusterlab expand --surface <builtin|file.json> --arc 1,3 [--loop]
                      [--coeff principal|trivial] [--start-triangle T]
    clusterlab mutate --surface <...> --seq 8,9,10 --show 10
    clusterlab surface --genus g --print

Exit code 0 iff all selected verification cases pass.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .mutation import initial_seed, mutate_seq
from .snake import build_band, build_snake, expand, expand_band
from .surface import ArcCrossing, LoopCrossing, Triangulation, annulus_fixture, builtin_genus
from .verify import CASES, run_cases


def load_surface(spec):
    """A builtin name ("genus1", "genus2", ..., "annulus") or a JSON file."""
    m = re.fullmatch(r"genus(\d+)", spec)
    if m:
        return builtin_genus(int(m.group(1)))
    if spec == "annulus":
        return annulus_fixture()
    with open(spec) as fh:
        return Triangulation.from_json(fh.read())


def _int_list(text):
    return tuple(int(t) for t in text.replace(" ", "").split(",") if t)


def cmd_verify(args):
    names = None if args.case in ("all", None) else [args.case]
    try:
        reports = run_cases(names, seed=args.seed)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps([r.to_json_dict() for r in reports], indent=2))
    else:
        for r in reports:
            line = f"{r.status.upper():7s} {r.name}  ({r.elapsed_ms:.0f} ms)"
            if r.detail:
                line += f"  {r.detail}"
            print(line)
    return 0 if all(r.ok for r in reports) else 1


def cmd_expand(args):
    T = load_surface(args.surface)
    seq = _int_list(args.arc)
    if args.loop:
        poly = expand_band(build_band(T, LoopCrossing(seq)), args.coeff)
    else:
        poly = expand(
            build_snake(T, ArcCrossing(seq, start_triangle=args.start_triangle)),
            args.coeff,
        )
    print(poly.to_json() if args.json else poly.serialize())
    return 0


def cmd_mutate(args):
    T = load_surface(args.surface)
    seed = mutate_seq(initial_seed(T.exchange_matrix()), _int_list(args.seq))
    if args.show is not None:
        poly = seed.cluster[args.show - 1]
        print(poly.to_json() if args.json else poly.serialize())
    else:
        for i, poly in enumerate(seed.cluster, start=1):
            print(f"x{i}' = {poly.serialize()}")
    return 0


def cmd_surface(args):
    T = builtin_genus(args.genus)
    if args.print:
        print(T.to_json())
    problems = T.validate()
    if problems:
        print("\n".join(problems), file=sys.stderr)
        return 1
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(prog="clusterlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run named verification cases")
    p.add_argument("case", nargs="?", default="all", help=f"one of: all, {', '.join(CASES)}")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("expand", help="matching expansion of an arc or loop")
    p.add_argument("--surface", required=True)
    p.add_argument("--arc", required=True, help="comma-separated crossing sequence")
    p.add_argument("--loop", action="store_true", help="treat the sequence as cyclic")
    p.add_argument("--coeff", choices=("principal", "trivial"), default="principal")
    p.add_argument("--start-triangle", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("mutate", help="apply a mutation sequence to the initial seed")
    p.add_argument("--surface", required=True)
    p.add_argument("--seq", required=True, help="comma-separated 1-based directions")
    p.add_argument("--show", type=int, default=None, help="print only cluster entry k")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("surface", help="print a builtin triangulation")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--print", action="store_true")
    p.set_defaults(fn=cmd_surface)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
