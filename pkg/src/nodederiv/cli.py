"""Command-line front end.

Subcommands: `study` (convergence ladder -> CSV, optional SVG chart),
`field-dump` (per-node numeric vs exact jets at one resolution, for
external surface plotting) and `selftest`. Every flag defaults to the
power-function study preset: sizes 26,51,101,201, dr_frac 0.25,
r_frac 2.5, MPS weight, seed 42, interior-only RMS, all three methods.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import (
    DEFAULT_DR_FRAC,
    DEFAULT_R_FRAC,
    DEFAULT_SEED,
    DEFAULT_SIZES,
    Method,
    StudyConfig,
    run_study,
)
from .errors import NodederivError
from .fields import FUNCTIONS, get_function
from .regular_fd import FdScheme
from .reporting import emit_csv, emit_field_dump
from .selfcheck import run_selfchecks
from .svgplot import emit_svg_plot
from .weighting import WeightKind


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--sizes wants a comma list of integers, got {text!r}"
        ) from None
    if not sizes:
        raise argparse.ArgumentTypeError("--sizes must not be empty")
    return sizes


def _parse_methods(text: str) -> tuple[Method, ...]:
    methods = []
    for tok in text.split(","):
        try:
            method = Method(tok.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"unknown method {tok!r}; choose from ddin,ddinw,fd"
            ) from None
        if method not in methods:
            methods.append(method)
    return tuple(methods)


def _parse_seed(text: str) -> int:
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--seed wants an integer, got {text!r}")
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("--seed must fit in an unsigned 64-bit int")
    return seed


def _add_config_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--function", choices=sorted(FUNCTIONS), default="power",
        help="analytic test field (default: %(default)s)",
    )
    sp.add_argument(
        "--sizes", type=_parse_sizes, default=DEFAULT_SIZES, metavar="N1,N2,...",
        help="per-axis node counts of the ladder (default: 26,51,101,201)",
    )
    sp.add_argument(
        "--dr-frac", type=float, default=DEFAULT_DR_FRAC, metavar="F",
        help="perturbation amplitude as a fraction of dx (default: %(default)s)",
    )
    sp.add_argument(
        "--r-frac", type=float, default=DEFAULT_R_FRAC, metavar="F",
        help="cutoff radius as a fraction of dx (default: %(default)s)",
    )
    sp.add_argument(
        "--weight", choices=("none", "mps"), default="mps",
        help="weight kernel used by the ddinw method (default: %(default)s)",
    )
    sp.add_argument(
        "--seed", type=_parse_seed, default=DEFAULT_SEED,
        help="perturbation RNG seed (default: %(default)s)",
    )
    sp.add_argument(
        "--include-boundary", choices=("true", "false"), default="false",
        help="count boundary-layer nodes in the RMS (default: %(default)s)",
    )
    sp.add_argument(
        "--methods", type=_parse_methods,
        default=(Method.DDIN, Method.DDINW, Method.FD), metavar="M1,M2,...",
        help="comma subset of ddin,ddinw,fd (default: all three)",
    )
    sp.add_argument(
        "--fd-second", choices=("central", "onesided"), default="central",
        help="fd scheme for fxx/fyy (default: %(default)s)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nodederiv",
        description="Derivative estimation on irregular node sets, with a "
        "convergence-study harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    study = sub.add_parser("study", help="run a convergence ladder, write CSV/SVG")
    _add_config_flags(study)
    study.add_argument("--out", default="study.csv", help="CSV output path")
    study.add_argument("--svg", default=None, help="optional SVG chart path")

    dump = sub.add_parser(
        "field-dump",
        help="write per-node numeric and exact jets at the first ladder size",
    )
    _add_config_flags(dump)
    dump.add_argument("--out", default="fields.csv", help="CSV output path")

    sub.add_parser("selftest", help="run the built-in property checks")
    return parser


def _config_from(args) -> StudyConfig:
    return StudyConfig(
        function=get_function(args.function),
        sizes=args.sizes,
        dr_frac=args.dr_frac,
        r_frac=args.r_frac,
        weight=WeightKind.MPS if args.weight == "mps" else WeightKind.UNIFORM,
        seed=args.seed,
        include_boundary=args.include_boundary == "true",
        methods=args.methods,
        fd_second=FdScheme.CENTRAL_SECOND
        if args.fd_second == "central"
        else FdScheme.ONESIDED_SECOND,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "selftest":
        failures = 0
        for name, passed, detail in run_selfchecks():
            print(f"{'ok  ' if passed else 'FAIL'} {name}: {detail}")
            failures += 0 if passed else 1
        if failures:
            print(f"{failures} check(s) failed", file=sys.stderr)
            return 1
        print("all checks passed")
        return 0

    try:
        config = _config_from(args)
    except ValueError as exc:
        parser.error(str(exc))  # exits 2

    try:
        if args.command == "study":
            report = run_study(config)
            emit_csv(report, args.out)
            print(f"wrote {args.out}")
            if args.svg:
                emit_svg_plot(report, args.svg)
                print(f"wrote {args.svg}")
            for fit in report.fits:
                slope = "n/a" if fit.slope is None else f"{fit.slope:.3f}"
                print(f"{fit.method.value:6s} {fit.quantity:4s} slope {slope}")
        else:  # field-dump
            emit_field_dump(config, args.out)
            print(f"wrote {args.out}")
    except (NodederivError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
