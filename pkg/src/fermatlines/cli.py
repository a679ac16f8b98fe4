"""Command-line front end.

Exit codes: 0 success, 1 invalid family or oracle disagreement, 2 usage
error, 3 solver stopped without proving optimality.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import FermatLinesError
from .families import (
    Family,
    construct_2d,
    construct_auto,
    construct_builtin,
    construct_even,
    construct_odd_1mod4,
    construct_odd_3mod4,
    is_skew_family,
    read_family,
    read_family_header,
    render_report,
    validate_structured,
    write_family,
)
from .geometry import disagreements, primes_one_mod
from .lines import LineId, check_line, enumerate_lines, meets
from .mis import (
    DEFAULT_TIME_LIMIT,
    OPTIMAL,
    build_graph,
    export_dimacs,
    family_vertices,
    max_independent_set,
    verify_certificate,
)
from .residue import SurfaceParams

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3

METHODS = ("auto", "even", "odd1", "odd3", "builtin", "2d:A", "2d:B", "2d:C")


class UsageError(Exception):
    pass


def _params(args) -> SurfaceParams:
    return SurfaceParams(args.d, args.c)


def _line_arg(params: SurfaceParams, text: str) -> LineId:
    try:
        line = LineId.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    check_line(params, line)
    return line


def construct(d: int, method: str) -> Family:
    if method == "auto":
        return construct_auto(d)
    if method.startswith("2d:"):
        return construct_2d(d, method[3:])
    builders = {"even": construct_even, "odd1": construct_odd_1mod4,
                "odd3": construct_odd_3mod4, "builtin": construct_builtin}
    return builders[method](d)


def cmd_lines(args, out) -> int:
    for line in enumerate_lines(_params(args)):
        print(line, file=out)
    return EXIT_OK


def cmd_meet(args, out) -> int:
    params = _params(args)
    a, b = _line_arg(params, args.a), _line_arg(params, args.b)
    print("MEET" if meets(params, a, b) else "SKEW", file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    header = read_family_header(args.file)
    if header is not None and header != args.d:
        raise UsageError(f"family file declares d={header} but --d {args.d} was given")
    params = _params(args)
    family = read_family(args.file, d=args.d)
    pairwise = is_skew_family(params, family)
    report = pairwise
    if args.structural:
        report = validate_structured(params, family)
        if report.is_skew != pairwise.is_skew:
            print("validators disagree: pairwise says "
                  f"{pairwise.is_skew}, structural says {report.is_skew}", file=sys.stderr)
            return EXIT_INVALID
    print(render_report(params, report), file=out)
    return EXIT_OK if report.is_skew else EXIT_INVALID


def cmd_construct(args, out) -> int:
    family = construct(args.d, args.method)
    report = is_skew_family(SurfaceParams(args.d), family)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_family(family, fh)
        verdict = "skew" if report.is_skew else "NOT skew"
        print(f"{family.label}: {len(family)} lines, {verdict} -> {args.out}", file=out)
    else:
        write_family(family, out)
    return EXIT_OK if report.is_skew else EXIT_INVALID


def cmd_mis(args, out) -> int:
    params = _params(args)
    graph = build_graph(params)
    seed = None
    if args.seed_construction:
        try:
            family = construct_auto(params.d)
        except FermatLinesError:
            family = construct_2d(params.d, "A")
        if params.canonical and is_skew_family(params, family).is_skew:
            seed = family_vertices(params.d, family.lines)
    cert = max_independent_set(graph, time_limit=args.time_limit, initial_solution=seed,
                               deterministic=True, node_limit=args.node_limit)
    if not verify_certificate(graph, cert):
        raise AssertionError("solver returned a set that is not skew")
    if args.certificate:
        Path(args.certificate).write_text(cert.to_text(params.d), encoding="utf-8")
    print(f"size={cert.size} status={cert.status}", file=out)
    print(f"nodes={cert.nodes} elapsed={cert.elapsed:.2f}s", file=sys.stderr)
    return EXIT_OK if cert.status == OPTIMAL else EXIT_TIMEOUT


def cmd_oracle(args, out) -> int:
    params = _params(args)
    primes = primes_one_mod(2 * params.d, args.primes) if args.fast else None
    bad = disagreements(params, primes)
    for a, b in bad:
        print(f"DISAGREE {a} | {b}", file=out)
    print(f"{len(bad)} disagreements", file=out)
    return EXIT_INVALID if bad else EXIT_OK


def cmd_export(args, out) -> int:
    graph = build_graph(_params(args))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            export_dimacs(graph, fh)
    else:
        export_dimacs(graph, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, required=True, help="surface degree (>= 3)")
    common.add_argument("--c", type=int, default=None,
                        help="exponent c with v^2 = eta^c (default: 0 for odd d, 1 for even d)")

    parser = argparse.ArgumentParser(prog="fermatlines",
                                     description="Lines and skew-line families on Fermat surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lines", parents=[common], help="list all 3d^2 lines")
    p.set_defaults(func=cmd_lines)

    p = sub.add_parser("meet", parents=[common], help="decide whether two lines meet")
    p.add_argument("--a", required=True, help='first line as "s k i"')
    p.add_argument("--b", required=True, help='second line as "s k i"')
    p.set_defaults(func=cmd_meet)

    p = sub.add_parser("check", parents=[common], help="validate a family file")
    p.add_argument("--file", required=True)
    p.add_argument("--structural", action="store_true",
                   help="decide by the residue criteria and cross-check against the pairwise test")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", parents=[common], help="write a skew family")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--out", help="output file (default: standard output)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("mis", parents=[common], help="exact maximum skew set")
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--seed-construction", action="store_true",
                   help="start from the explicit construction for this degree")
    p.add_argument("--certificate", help="write the certificate to this file")
    p.add_argument("--deterministic", action="store_true",
                   help="accepted for compatibility; the solver is always deterministic")
    p.set_defaults(func=cmd_mis)

    p = sub.add_parser("oracle", parents=[common], help="cross-check incidence against exact geometry")
    p.add_argument("--fast", action="store_true", help="screen pairs modulo primes first")
    p.add_argument("--primes", type=int, default=3, help="number of primes for --fast (>= 3)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export", parents=[common], help="export the intersection graph")
    p.add_argument("--format", choices=("dimacs",), default="dimacs")
    p.add_argument("--out", help="output file (default: standard output)")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, FermatLinesError, OSError) as exc:
        print(f"fermatlines {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


run = main

if __name__ == "__main__":
    sys.exit(main())
