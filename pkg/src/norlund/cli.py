"""Command-line interface.

Exit codes: 0 success, 1 I/O or parse error, 2 weight validation failure,
3 internal consistency failure, 4 means-of-means identity violation.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import families
from .comparison import comparison_coefficients
from .kernel import (
    DEFAULT_DIGITS,
    DEFAULT_THRESHOLD,
    SequencePrefix,
    WeightError,
    format_scalar,
    limit_probe,
    load_sequence,
    to_decimal,
    to_scalar,
)
from .matrix import DEFAULT_GROWTH, DEFAULT_HOLDS_BAND, first_identity_violation, inclusion_rows, sst_diagnostics
from .means import NorlundMethod, norlund_means, partial_sums
from .riesz import inclusion_report, regularity_report
from .series import named_terms

DEFAULT_HORIZON = 256
HORIZON_ENV = "NORLUND_HORIZON"

EXIT_OK, EXIT_IO, EXIT_VALIDATION, EXIT_INTERNAL, EXIT_IDENTITY = 0, 1, 2, 3, 4


class InternalConsistencyError(RuntimeError):
    pass


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    horizon: int = DEFAULT_HORIZON
    arithmetic: str = "exact"  # or "display-decimal"
    digits: int = DEFAULT_DIGITS
    window: int | None = None
    threshold: Fraction = DEFAULT_THRESHOLD
    growth: Fraction = DEFAULT_GROWTH
    holds_band: Fraction = DEFAULT_HOLDS_BAND
    output: str = "json"
    mode: str = "strict"

    def __post_init__(self):
        if self.horizon < 1:
            raise UsageError("horizon must be at least 1")
        if self.threshold <= 0 or self.growth <= 0 or self.holds_band <= 0:
            raise UsageError("thresholds must be positive")
        if self.window is not None and self.window < 2:
            raise UsageError("window must be at least 2")

    @property
    def display_digits(self) -> int | None:
        return self.digits if self.arithmetic == "display-decimal" else None

    def fmt(self, x: Fraction) -> str:
        d = self.display_digits
        return format_scalar(x) if d is None else to_decimal(x, d)

    @property
    def probe(self) -> dict:
        return {"window": self.window, "threshold": self.threshold}


def resolve_horizon(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(HORIZON_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{HORIZON_ENV}={env!r} is not an integer") from None
    return DEFAULT_HORIZON


def load_method(source: str, cfg: RunConfig) -> NorlundMethod:
    """A family spec such as ``cesaro:2`` or a path to a JSON weight array."""
    path = Path(source)
    if source.endswith(".json") or path.exists():
        w = load_sequence(path)
        return NorlundMethod.from_weights(path.stem, w.truncate(cfg.horizon), cfg.mode)
    return families.generate(families.parse_family(source, cfg.horizon), cfg.mode)


def load_terms(args, cfg: RunConfig, series_attr: str, file_attr: str) -> SequencePrefix | None:
    name, path = getattr(args, series_attr, None), getattr(args, file_attr, None)
    if name:
        return named_terms(name, cfg.horizon)
    if path:
        return load_sequence(path).truncate(cfg.horizon)
    return None


def emit(obj, out) -> None:
    json.dump(obj, out, indent=2, sort_keys=True)
    out.write("\n")


def emit_csv(header, rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_means(args, cfg: RunConfig, out) -> int:
    method = load_method(args.family or args.weights, cfg)
    seq = load_terms(args, cfg, "seq", "seq_file")
    if seq is None:
        terms = load_terms(args, cfg, "series", "terms_file")
        if terms is None:
            raise UsageError("means needs --seq, --seq-file, --series or --terms-file")
        seq = partial_sums(terms)
    means = norlund_means(method, seq)
    diag = limit_probe(means, **cfg.probe)
    if cfg.output == "csv":
        emit_csv(["m", "mean"], [(m, to_decimal(x, cfg.digits)) for m, x in enumerate(means)], out)
    else:
        emit(
            {
                "diagnostic": diag.to_dict(cfg.display_digits),
                "horizon": means.horizon,
                "means": [cfg.fmt(x) for x in means],
                "method": method.name,
                "nonconforming": not method.conforming,
                "truncated": method.horizon != seq.horizon,
            },
            out,
        )
    return EXIT_OK


def cmd_sum(args, cfg: RunConfig, out) -> int:
    method = load_method(args.family or args.weights, cfg)
    terms = load_terms(args, cfg, "series", "terms_file")
    if terms is None:
        raise UsageError("sum needs --series or --terms-file")
    sums = partial_sums(terms)
    means = norlund_means(method, sums)
    diag = limit_probe(means, **cfg.probe)
    if cfg.output == "csv":
        emit_csv(
            ["m", "partial_sum", "mean"],
            [(m, to_decimal(s, cfg.digits), to_decimal(x, cfg.digits)) for m, (s, x) in enumerate(zip(sums, means))],
            out,
        )
    else:
        emit(
            {
                "diagnostic": diag.to_dict(cfg.display_digits),
                "horizon": means.horizon,
                "method": method.name,
                "nonconforming": not method.conforming,
                "series": args.series or args.terms_file,
                "sum_estimate": cfg.fmt(diag.estimated_limit),
            },
            out,
        )
    return EXIT_OK


def _riesz_kwargs(cfg: RunConfig) -> dict:
    return dict(window=cfg.window, threshold=cfg.threshold, growth=cfg.growth, holds_band=cfg.holds_band)


def _emit_riesz(report, cfg: RunConfig, out, extra: dict | None = None) -> None:
    if cfg.output == "csv":
        emit_csv(["m", "A_m", "B_m"], report.csv_rows(cfg.digits), out)
        return
    body = report.to_dict(cfg.display_digits)
    if extra:
        body.update(extra)
    emit(body, out)


def cmd_compare(args, cfg: RunConfig, out) -> int:
    p, q = load_method(args.p, cfg), load_method(args.q, cfg)
    if args.emit_k:
        emit(comparison_coefficients(p, q).values.to_strings(), out)
        return EXIT_OK
    report = inclusion_report(p, q, **_riesz_kwargs(cfg))
    sst = sst_diagnostics(inclusion_rows(p, q, report.k), **_riesz_kwargs(cfg))
    if report.r1_profile.values != sst.row_abs_sums.values:
        raise InternalConsistencyError("R1 profile differs from SST absolute row sums")
    _emit_riesz(report, cfg, out, {"sst": sst.to_dict(cfg.display_digits)})
    return EXIT_OK


def cmd_riesz(args, cfg: RunConfig, out) -> int:
    p, q = load_method(args.p_source, cfg), load_method(args.q_source, cfg)
    _emit_riesz(inclusion_report(p, q, **_riesz_kwargs(cfg)), cfg, out)
    return EXIT_OK


def cmd_regularity(args, cfg: RunConfig, out) -> int:
    q = load_method(args.q, cfg)
    _emit_riesz(regularity_report(q, **_riesz_kwargs(cfg)), cfg, out)
    return EXIT_OK


def cmd_matrix(args, cfg: RunConfig, out) -> int:
    p, q = load_method(args.p, cfg), load_method(args.q, cfg)
    n = args.rows if args.rows is not None else cfg.horizon
    rows = inclusion_rows(p.truncate(min(n, p.horizon)), q.truncate(min(n, q.horizon)))
    emit([[cfg.fmt(c) for c in row.entries] for row in rows], out)
    return EXIT_OK


def random_sequence(rng: random.Random, horizon: int) -> SequencePrefix:
    return SequencePrefix(tuple(Fraction(rng.randint(-100, 100), rng.randint(1, 100)) for _ in range(horizon + 1)))


def cmd_identity_check(args, cfg: RunConfig, out) -> int:
    if args.trials < 1:
        raise UsageError("trials must be at least 1")
    p, q = load_method(args.p, cfg), load_method(args.q, cfg)
    rows = inclusion_rows(p, q)
    M = len(rows) - 1
    rng = random.Random(args.seed)
    for trial in range(args.trials):
        m = first_identity_violation(rows, p, q, random_sequence(rng, M))
        if m is not None:
            emit({"identity": "violated", "m": m, "trial": trial}, out)
            return EXIT_IDENTITY
    emit({"horizon": M, "identity": "holds", "trials": args.trials}, out)
    return EXIT_OK


def cmd_family(args, cfg: RunConfig, out) -> int:
    if args.kind == "list":
        emit(families.DESCRIPTIONS, out)
        return EXIT_OK
    param = args.alpha if args.kind == "cesaro" else args.ratio
    spec = families.FamilySpec(args.kind, cfg.horizon, to_scalar(param) if param is not None else None)
    emit(families.generate(spec, cfg.mode).p.to_strings(), out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", type=int, help=f"prefix length M (default ${HORIZON_ENV} or {DEFAULT_HORIZON})")
    common.add_argument("--window", type=int, help="tail window for limit probes (default max(8, M/10))")
    common.add_argument("--threshold", default=str(DEFAULT_THRESHOLD), help="oscillation threshold (rational)")
    common.add_argument("--growth", default=str(DEFAULT_GROWTH), help="sup growth ratio counted as unbounded")
    common.add_argument("--holds-band", default=str(DEFAULT_HOLDS_BAND), help="sup growth ratio counted as bounded")
    common.add_argument("--decimal", action="store_true", help="render numbers as decimals")
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="significant digits for decimals")
    common.add_argument("--csv", action="store_true", help="emit decimal CSV rows instead of JSON")
    common.add_argument("--relaxed", action="store_true", help="accept weights breaking the sign constraints")

    parser = _Parser(prog="norlund", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def method_group(sp, flag_family="--family"):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument(flag_family, help="family spec, e.g. cesaro:1, harmonic, geometric:1/2")
        g.add_argument("--weights", help="JSON weight file")

    sp = sub.add_parser("means", parents=[common], help="Nörlund means of a sequence")
    method_group(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--seq", help="named sequence used directly, e.g. const:3")
    g.add_argument("--seq-file", help="JSON sequence file")
    g.add_argument("--series", help="named series whose partial sums are averaged, e.g. grandi")
    g.add_argument("--terms-file", help="JSON file of series terms")
    sp.set_defaults(func=cmd_means)

    sp = sub.add_parser("sum", parents=[common], help="summability of a series")
    method_group(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--series", help="named series: grandi, natural-alternating, const:c, powers:r")
    g.add_argument("--terms-file", help="JSON file of series terms")
    sp.set_defaults(func=cmd_sum)

    sp = sub.add_parser("compare", parents=[common], help="Riesz and SST evidence for inclusion p -> q")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--emit-k", action="store_true", help="print only the comparison coefficients")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("riesz", parents=[common], help="Riesz report for two weight sources")
    sp.add_argument("p_source")
    sp.add_argument("q_source")
    sp.set_defaults(func=cmd_riesz)

    sp = sub.add_parser("regularity", parents=[common], help="regularity evidence for q")
    sp.add_argument("--q", required=True)
    sp.set_defaults(func=cmd_regularity)

    sp = sub.add_parser("matrix", parents=[common], help="rows of the inclusion matrix")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--rows", type=int, help="last row index to emit (default: horizon)")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("identity-check", parents=[common], help="exact means-of-means check on random sequences")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_identity_check)

    sp = sub.add_parser("family", parents=[common], help="print a built-in weight family")
    sp.add_argument("kind", choices=("list",) + families.KINDS[:-1])
    sp.add_argument("--alpha", help="Cesàro order")
    sp.add_argument("--ratio", help="geometric ratio")
    sp.set_defaults(func=cmd_family)
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        horizon=resolve_horizon(args.horizon),
        arithmetic="display-decimal" if args.decimal else "exact",
        digits=args.digits,
        window=args.window,
        threshold=to_scalar(args.threshold),
        growth=to_scalar(args.growth),
        holds_band=to_scalar(args.holds_band),
        output="csv" if args.csv else "json",
        mode="relaxed" if args.relaxed else "strict",
    )


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return args.func(args, cfg, out)
    except WeightError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OSError, ValueError, TypeError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
