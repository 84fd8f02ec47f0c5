"""Command-line front end: ``diffinv {reproduce,invariants,molien,hilbert,relations}``.

Exit codes: 0 success, 1 a certificate failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .fixtures import RELATIONS, Setup, load_config
from .invariants import ModularGroupError
from .modstruct import relation_extract
from .pipeline import dumps, format_text, reproduce
from .series import format_hsop_form, format_series, molien, reconstruct_from_dims, rewrite_over_hsop

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_HSOP = {"G": [2, 3, 4], "H": [2, 2, 2], "Hbar": [2, 2, 2]}


class UsageError(Exception):
    pass


def _bidegree(text: str) -> tuple[int, int]:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}") from None
    if x < 0 or y < 0:
        raise argparse.ArgumentTypeError("bidegree entries must be non-negative")
    return x, y


def _degrees(text: str) -> list[int]:
    try:
        out = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated degrees, got {text!r}") from None
    if any(d <= 0 for d in out):
        raise argparse.ArgumentTypeError("hsop degrees must be positive")
    return out


def _setup(args) -> Setup:
    if getattr(args, "config", None):
        try:
            return load_config(args.config)
        except (OSError, ValueError) as exc:
            raise UsageError(f"bad config: {exc}") from None
    return Setup()


def _action(setup: Setup, group: str, character: str):
    try:
        return setup.action(group, character)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_reproduce(args) -> int:
    if args.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    report = reproduce(args.max_degree, _setup(args))
    if args.no_timing:
        report.pop("timing", None)
    text = dumps(report) if args.format == "json" else format_text(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if not report["pass"]:
        print(f"certificate failed: {report['first_failure']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_invariants(args) -> int:
    setup = _setup(args)
    fs = _action(setup, args.group, args.character).fixed_space(args.bidegree)
    for f in fs.basis:
        print(f)
    if not fs.basis:
        print(f"(empty basis at bidegree {args.bidegree[0]},{args.bidegree[1]})", file=sys.stderr)
    return EXIT_OK


def _group_data(setup: Setup, group: str, character: str):
    if character not in ("trivial", "chi"):
        raise UsageError(f"unknown character {character!r}")
    if group == "G":
        if character == "chi":
            raise UsageError("chi is defined on H only")
        return setup.G, setup.rho, None
    if group == "H":
        return setup.H, setup.rho_H, setup.chi if character == "chi" else None
    if group == "Hbar":
        return setup.Hbar, None, setup.chi_bar if character == "chi" else None
    raise UsageError(f"unknown group {group!r}")


def cmd_molien(args) -> int:
    setup = _setup(args)
    group, rep, chi = _group_data(setup, args.group, args.character)
    try:
        series = molien(group, rep, chi)
    except ModularGroupError as exc:
        raise UsageError(f"{exc}; use 'hilbert' for modular groups") from None
    degrees = args.hsop_degrees or DEFAULT_HSOP[args.group]
    try:
        print(format_hsop_form(rewrite_over_hsop(series, degrees), degrees))
    except ArithmeticError:
        print(format_series(series))
    return EXIT_OK


def cmd_hilbert(args) -> int:
    setup = _setup(args)
    if not 0 <= args.ydeg <= setup.n or args.max_degree < 0:
        raise UsageError(f"--ydeg must lie in 0..{setup.n} and --max-degree must be non-negative")
    action = _action(setup, args.group, args.character)
    degrees = args.hsop_degrees or DEFAULT_HSOP[args.group]
    dims = [action.fixed_space((x, args.ydeg)).dim for x in range(args.max_degree + 1)]
    try:
        num = reconstruct_from_dims(dims, degrees)
    except ArithmeticError as exc:
        print(f"reconstruction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(format_hsop_form(num, degrees))
    return EXIT_OK


def cmd_relations(args) -> int:
    setup = _setup(args)
    N = setup.named
    dgens = {f"d{k}": N[f"d{k}"] for k in range(1, 7)}
    status = EXIT_OK
    for (u, v), reference in RELATIONS.items():
        rec = relation_extract(N[u] * N[v], dgens, setup.hsop, f"{u}*{v}")
        if rec is None:
            print(f"{u}*{v}: not in the A-span of d1..d6")
            status = EXIT_FAIL
            continue
        note = "" if rec.matches(reference, setup.p) else "  [erratum: differs from reference coefficients]"
        residual = 0 if rec.residual_zero else "nonzero"
        print(f"{rec.left} = {rec.right_side_text(setup.p)}  (residual {residual}, "
              f"{'unique' if rec.unique else 'not unique'}){note}")
        if not (rec.unique and rec.residual_zero):
            status = EXIT_FAIL
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diffinv", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key/value file overriding the default fixtures")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce", help="run every certificate and emit a report")
    p.add_argument("--max-degree", type=int, default=20)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock timings")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("invariants", help="print an echelon basis of a fixed space")
    p.add_argument("--group", choices=["G", "H", "Hbar"], default="G")
    p.add_argument("--character", choices=["trivial", "chi"], default="trivial")
    p.add_argument("--bidegree", type=_bidegree, required=True, metavar="X,Y")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("molien", help="Molien series of a non-modular group")
    p.add_argument("--group", choices=["H", "Hbar"], default="Hbar")
    p.add_argument("--character", choices=["trivial", "chi"], default="trivial")
    p.add_argument("--hsop-degrees", type=_degrees, metavar="D1,D2,...")
    p.set_defaults(func=cmd_molien)

    p = sub.add_parser("hilbert", help="Hilbert series reconstructed from fixed-space dimensions")
    p.add_argument("--group", choices=["G", "H", "Hbar"], default="G")
    p.add_argument("--character", choices=["trivial", "chi"], default="trivial")
    p.add_argument("--ydeg", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=20)
    p.add_argument("--hsop-degrees", type=_degrees, metavar="D1,D2,...")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("relations", help="express c_i c_j over A in d1..d6")
    p.set_defaults(func=cmd_relations)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"diffinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
