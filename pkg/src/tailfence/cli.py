"""Command-line interface.

Exit status: 0 on success, 1 on a usage error, 2 on a data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, replace
from typing import Sequence

from . import __version__
from .diagnose import diagnose
from .distributions import Distribution, parse_distribution
from .empirical import count_outliers, empirical_boxplot, read_sample
from .errors import DomainError, EstimatorUndefined, TailFenceError
from .estimators import EstimateResult, Method, estimate_all, parse_methods, sample_statistics
from .measures import ASPECTS, catalog, sort_catalog, tail_profile, theoretical_boxplot
from .montecarlo import load_study, run_study
from . import render

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _emit(fmt: str, payload: dict, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _load_sample(args):
    if args.input in (None, "-"):
        return read_sample(sys.stdin, args.column)
    return read_sample(args.input, args.column)


def cmd_catalog(args) -> int:
    entries = catalog()
    if args.sort:
        entries = sort_catalog(entries, args.sort)
    _emit(args.format, [e.as_dict() for e in entries], render.render_catalog(entries))
    return EXIT_OK


def cmd_measures(args) -> int:
    model = args.dist
    prof = tail_profile(model)
    box = theoretical_boxplot(model)
    payload = {"dist": model.spec(), "family": model.family, "params": model.params,
               **prof.as_dict(), "boxplot": box.as_dict()}
    _emit(args.format, payload, render.render_profile(model.spec(), prof, box))
    return EXIT_OK


def cmd_boxplot(args) -> int:
    sample = _load_sample(args)
    box = empirical_boxplot(sample)
    _emit(args.format, {"n": sample.n, "boxplot": box.as_dict()},
          f"n = {sample.n}\n" + render.render_boxplot(box))
    return EXIT_OK


def cmd_outliers(args) -> int:
    sample = _load_sample(args)
    box = empirical_boxplot(sample)
    counts = count_outliers(sample, box)
    _emit(args.format, {"boxplot": box.as_dict(), "counts": counts.as_dict()}, render.render_counts(counts))
    return EXIT_OK


def cmd_estimate(args) -> int:
    methods = parse_methods(args.method or ["all"])
    sample = _load_sample(args)
    results = estimate_all(sample, methods)
    payload = {"n": sample.n, "estimates": {}}
    for m, r in results.items():
        if isinstance(r, EstimateResult):
            payload["estimates"][m.value] = {"alpha_hat": r.alpha_hat, "reason": None}
            payload["inputs"] = r.as_dict()["inputs"]
        else:
            payload["estimates"][m.value] = {"alpha_hat": None, "reason": r.reason}
    if "inputs" not in payload:
        payload["inputs"] = asdict(sample_statistics(sample))
    _emit(args.format, payload, render.render_estimates(results))
    failed = all(isinstance(r, EstimatorUndefined) for r in results.values())
    return EXIT_DATA if failed else EXIT_OK


def cmd_simulate(args) -> int:
    config = load_study(args.study)
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    report = run_study(config, workers=args.workers)
    if args.format == "json":
        sys.stdout.write(report.to_json() + "\n")
    else:
        sys.stdout.write(render.render_study(report) + "\n")
    return EXIT_OK


def cmd_diagnose(args) -> int:
    sample = _load_sample(args)
    report = diagnose(sample, args.confidence, min_compatible=args.min_compatible)
    _emit(args.format, report.as_dict(), render.render_diagnosis(report))
    return EXIT_OK


def _dist(text: str) -> Distribution:
    try:
        return parse_distribution(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _method(text: str) -> str:
    if text != "all" and text not in {m.value for m in Method}:
        valid = ", ".join([m.value for m in Method] + ["all"])
        raise argparse.ArgumentTypeError(f"unknown estimator {text!r} (valid: {valid})")
    return text


def _probability(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1): {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tailfence", description="Fence-based heavy-tail measures and tail-index estimation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    src = _Parser(add_help=False)
    src.add_argument("input", nargs="?", help="sample file, one value per line ('-' or omitted: stdin)")
    src.add_argument("--column", help="read CSV with a header and use this column")

    p = sub.add_parser("catalog", parents=[fmt], help="tail measures of the built-in distributions")
    p.add_argument("--sort", choices=ASPECTS, help="order rows from lightest to heaviest on this aspect")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("measures", parents=[fmt], help="theoretical box-plot and tail measures of one law")
    p.add_argument("--dist", required=True, type=_dist, help="e.g. pareto(1,1), frechet(0.5), normal(0,1), gumbel")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("boxplot", parents=[fmt, src], help="empirical quartiles and fences")
    p.set_defaults(func=cmd_boxplot)

    p = sub.add_parser("outliers", parents=[fmt, src], help="mild/extreme outlier counts")
    p.set_defaults(func=cmd_outliers)

    p = sub.add_parser("estimate", parents=[fmt, src], help="tail-index estimates")
    p.add_argument("--method", action="append", default=None, type=_method,
                   help="par-fence, par-quartile, frech-fence, frech-quartile, hillhorror-quartile or all "
                        "(repeatable; default all)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", parents=[fmt], help="Monte Carlo study of the estimators")
    p.add_argument("--study", required=True, help="JSON study definition")
    p.add_argument("--seed", type=int, help="override the study's master seed")
    p.add_argument("--workers", type=_positive_int, default=1, help="worker processes (default 1)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("diagnose", parents=[fmt, src], help="match a sample against the catalog")
    p.add_argument("--confidence", type=_probability, default=0.95)
    p.add_argument("--min-compatible", type=int, choices=range(0, 5), default=4,
                   help="measures a candidate must match to be shortlisted (default 4)")
    p.set_defaults(func=cmd_diagnose)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (TailFenceError, OSError) as exc:
        print(f"tailfence: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
