"""Command-line interface.

Subcommands::

    pmfstack fit       --input FILE --loss {l1,l2} --seed N [--alpha F] [--mc N]
    pmfstack simulate  --model {M1,M2,M3,M4} --n N --reps N --seed N
    pmfstack coverage  --model {M1,M2,M3,M4} --n N --reps N --seed N [--alpha F] [--mc N]
    pmfstack risk      --model {M1,M2,M3,M4} --sizes LIST --reps N --seed N

All output is CSV on stdout with LF line endings and floats at 17 significant
digits, so repeated invocations with identical flags are byte-identical.
``fit`` reads a frequency table: one "index count" pair per line, '#'
comments allowed, duplicate indices summed, order irrelevant.

Exit codes: 0 ok, 2 usage or parse error, 3 domain error (sample size < 2).
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .bands import confidence_band
from .pmf import FrequencyVector
from .simulation import (
    MODEL_NAMES,
    coverage_experiment,
    risk_curve,
    run_replications,
)
from .stacking import fit_stacked

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

_MAX_INDEX = 5_000_000  # guards against absurd allocations from bad input


class UsageError(Exception):
    """Malformed input or flags: exit code 2."""


class DomainError(Exception):
    """Valid input outside the estimator's domain (n < 2): exit code 3."""


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _any_int(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc


def _alpha_value(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}") from exc
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"--alpha must lie strictly in (0, 1), got {text}")
    return value


def _mc_value(text: str) -> int:
    value = _positive_int(text)
    if value < 100:
        raise argparse.ArgumentTypeError(f"--mc must be >= 100, got {value}")
    return value


def _sizes_list(text: str) -> list[int]:
    items = [part for part in text.split(",") if part.strip() != ""]
    if not items:
        raise argparse.ArgumentTypeError("--sizes must list at least one sample size")
    sizes = []
    for part in items:
        try:
            sizes.append(int(part))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(
                f"--sizes entries must be integers, got {part.strip()!r}"
            ) from exc
    return sizes


def read_frequency_table(path: str) -> FrequencyVector:
    """Parse an "index count" table into a FrequencyVector.

    Raises UsageError for unreadable or malformed files and DomainError when
    the total count is below 2.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc.strerror or exc}") from exc
    totals: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise UsageError(f"{path}:{lineno}: expected 'index count', got {raw!r}")
        try:
            index, count = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: non-integer field in {raw!r}") from exc
        if index < 0 or count < 0:
            raise UsageError(f"{path}:{lineno}: negative index or count in {raw!r}")
        if index > _MAX_INDEX:
            raise UsageError(f"{path}:{lineno}: index {index} exceeds limit {_MAX_INDEX}")
        totals[index] = totals.get(index, 0) + count
    if not totals:
        raise UsageError(f"{path}: no data rows found")
    total = sum(totals.values())
    if total < 2:
        raise DomainError(f"{path}: sample size n={total} is below 2")
    counts = np.zeros(max(totals) + 1, dtype=np.int64)
    for index, count in totals.items():
        counts[index] = count
    return FrequencyVector(counts)


def _writer(stream):
    return csv.writer(stream, lineterminator="\n")


def cmd_fit(args) -> int:
    freq = read_frequency_table(args.input)
    mix = fit_stacked(freq, args.loss)
    band = confidence_band(mix.theta, freq.n, args.alpha, args.mc, args.seed)
    out = sys.stdout
    diag = mix.beta
    out.write(f"# n={freq.n}\n")
    out.write(f"# t_n={freq.t_n}\n")
    out.write(f"# loss={diag.loss}\n")
    out.write(f"# beta={_fmt(diag.beta)}\n")
    out.write(f"# branch={diag.branch}\n")
    out.write(f"# alpha={_fmt(band.alpha)}\n")
    out.write(f"# q_hat={_fmt(band.q_hat)}\n")
    out.write(f"# mc_reps={band.mc_reps}\n")
    out.write(f"# seed={args.seed}\n")
    writer = _writer(out)
    writer.writerow(
        ["index", "count", "empirical", "grenander", "theta", "band_lower", "band_upper"]
    )
    for j in range(freq.t_n + 1):
        writer.writerow(
            [
                j,
                int(freq.counts[j]),
                _fmt(mix.empirical_part[j]),
                _fmt(mix.grenander_part[j]),
                _fmt(mix.theta[j]),
                _fmt(band.lower[j]),
                _fmt(band.upper[j]),
            ]
        )
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.n < 2:
        raise DomainError(f"--n must be >= 2, got {args.n}")
    rows = run_replications(args.model, args.n, args.reps, args.seed)
    writer = _writer(sys.stdout)
    writer.writerow(["model", "estimator", "rep", "l2_distance", "s2_score", "beta"])
    for row in rows:
        writer.writerow(
            [
                row.model,
                row.estimator,
                row.rep,
                _fmt(row.l2_distance),
                _fmt(row.s2_score),
                _fmt(row.beta),
            ]
        )
    return EXIT_OK


def cmd_coverage(args) -> int:
    if args.n < 2:
        raise DomainError(f"--n must be >= 2, got {args.n}")
    rows = coverage_experiment(args.model, args.n, args.reps, args.alpha, args.mc, args.seed)
    writer = _writer(sys.stdout)
    writer.writerow(["model", "estimator", "n", "reps", "covered_fraction"])
    for row in rows:
        writer.writerow(
            [row.model, row.estimator, row.n, row.reps, _fmt(row.covered_fraction)]
        )
    return EXIT_OK


def cmd_risk(args) -> int:
    if any(s < 2 for s in args.sizes):
        raise DomainError("--sizes entries must be >= 2")
    rows = risk_curve(args.model, args.sizes, args.reps, args.seed)
    writer = _writer(sys.stdout)
    writer.writerow(["model", "estimator", "n", "scaled_risk"])
    for row in rows:
        writer.writerow([row.model, row.estimator, row.n, _fmt(row.scaled_risk)])
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmfstack",
        description="Shape-constrained discrete pmf estimation and its simulation harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit a frequency table and print a report")
    fit.add_argument("--input", required=True, help="path to an 'index count' table")
    fit.add_argument("--loss", choices=("l1", "l2"), default="l2")
    fit.add_argument("--alpha", type=_alpha_value, default=0.05)
    fit.add_argument("--mc", type=_mc_value, default=100_000)
    fit.add_argument("--seed", type=_any_int, required=True)
    fit.set_defaults(func=cmd_fit)

    simulate = sub.add_parser("simulate", help="replication study: distances and scores")
    simulate.add_argument("--model", choices=MODEL_NAMES, required=True)
    simulate.add_argument("--n", type=_any_int, required=True)
    simulate.add_argument("--reps", type=_positive_int, required=True)
    simulate.add_argument("--seed", type=_any_int, required=True)
    simulate.set_defaults(func=cmd_simulate)

    coverage = sub.add_parser("coverage", help="empirical coverage of the global bands")
    coverage.add_argument("--model", choices=MODEL_NAMES, required=True)
    coverage.add_argument("--n", type=_any_int, required=True)
    coverage.add_argument("--reps", type=_positive_int, required=True)
    coverage.add_argument("--alpha", type=_alpha_value, default=0.05)
    coverage.add_argument("--mc", type=_mc_value, default=100_000)
    coverage.add_argument("--seed", type=_any_int, required=True)
    coverage.set_defaults(func=cmd_coverage)

    risk = sub.add_parser("risk", help="scaled-risk curve over sample sizes")
    risk.add_argument("--model", choices=MODEL_NAMES, required=True)
    risk.add_argument("--sizes", type=_sizes_list, required=True)
    risk.add_argument("--reps", type=_positive_int, required=True)
    risk.add_argument("--seed", type=_any_int, required=True)
    risk.set_defaults(func=cmd_risk)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pmfstack: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"pmfstack: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
