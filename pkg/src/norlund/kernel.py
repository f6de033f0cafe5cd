"""Exact scalars, sequence prefixes, weight validation and the limit probe.

Every quantity is a :class:`fractions.Fraction`. Decimal rendering exists
only for display and never feeds back into a computation.
"""
from __future__ import annotations

import decimal
import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, str, Fraction]

DEFAULT_THRESHOLD = Fraction(1, 100)
DEFAULT_DIGITS = 12


class WeightError(ValueError):
    """Raised when a weight sequence violates the Nörlund sign constraints."""


def to_scalar(x: ScalarLike) -> Fraction:
    """Coerce an int, a ``"num/den"`` string or a Fraction to an exact scalar.

    Floats are refused: their binary expansion is almost never what the
    caller meant.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {x!r} as a rational") from exc
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def fsum(xs: Iterable[Fraction]) -> Fraction:
    """Exact sum over a single common denominator.

    Much cheaper than repeated Fraction addition when many terms share
    denominators, which is the usual case for convolution rows.
    """
    xs = list(xs)
    if not xs:
        return Fraction(0)
    d = math.lcm(*{x.denominator for x in xs})
    return Fraction(sum(x.numerator * (d // x.denominator) for x in xs), d)


def scale(values: Iterable[Fraction]) -> tuple[list[int], int]:
    """Write ``values`` as integers over one common denominator D.

    Returns (ints, D) with values[i] == ints[i] / D. Inner products of scaled
    sequences are then plain integer arithmetic with a single reduction.
    """
    values = list(values)
    if not values:
        return [], 1
    d = math.lcm(*{x.denominator for x in values})
    return [x.numerator * (d // x.denominator) for x in values], d


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_decimal(x: Fraction, digits: int = DEFAULT_DIGITS) -> str:
    """Render ``x`` with ``digits`` significant digits (display only)."""
    ctx = decimal.Context(prec=digits)
    return str(ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator)))


@dataclass(frozen=True)
class SequencePrefix:
    """Terms 0..M of a sequence; ``horizon`` is M."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(to_scalar(v) for v in self.values))

    @classmethod
    def of(cls, *values: ScalarLike) -> "SequencePrefix":
        return cls(values)

    @property
    def horizon(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return SequencePrefix(self.values[i])
        return self.values[i]

    def truncate(self, horizon: int) -> "SequencePrefix":
        return SequencePrefix(self.values[: horizon + 1])

    def scaled(self, c: ScalarLike) -> "SequencePrefix":
        c = to_scalar(c)
        return SequencePrefix(c * v for v in self.values)

    def __add__(self, other: "SequencePrefix") -> "SequencePrefix":
        return SequencePrefix(a + b for a, b in zip(self.values, other.values))

    def to_strings(self) -> list[str]:
        return [format_scalar(v) for v in self.values]


def as_prefix(seq: Union[SequencePrefix, Iterable[ScalarLike]]) -> SequencePrefix:
    return seq if isinstance(seq, SequencePrefix) else SequencePrefix(tuple(seq))


@dataclass(frozen=True)
class WeightSequence:
    """Weights p_0..p_M with their prefix sums P_0..P_M.

    ``conforming`` is False when the weights were accepted in relaxed mode
    and break the sign constraints p_0 > 0, p_n >= 0.
    """

    weights: SequencePrefix
    prefix_sums: SequencePrefix
    conforming: bool = True

    @property
    def horizon(self) -> int:
        return self.weights.horizon

    def truncate(self, horizon: int) -> "WeightSequence":
        return WeightSequence(
            self.weights.truncate(horizon), self.prefix_sums.truncate(horizon), self.conforming
        )


def validate_weights(raw, mode: str = "strict") -> WeightSequence:
    raw = as_prefix(raw)
    if len(raw) == 0:
        raise WeightError("weight sequence must be nonempty")
    if mode not in ("strict", "relaxed"):
        raise ValueError(f"unknown validation mode {mode!r}")

    p0 = raw[0]
    if mode == "strict":
        if p0 <= 0:
            raise WeightError("p_0 must be positive")
        for n, w in enumerate(raw.values[1:], start=1):
            if w < 0:
                raise WeightError(f"p_{n} must be nonnegative (got {format_scalar(w)})")
        conforming = True
    else:
        if p0 == 0:
            raise WeightError("p_0 must be nonzero")
        conforming = p0 > 0 and all(w >= 0 for w in raw.values[1:])

    sums = []
    total = Fraction(0)
    for n, w in enumerate(raw):
        total += w
        # a vanishing prefix sum leaves the mean at that index undefined
        if total == 0:
            raise WeightError(f"prefix sum P_{n} vanishes")
        sums.append(total)
    return WeightSequence(raw, SequencePrefix(tuple(sums)), conforming)


class Evidence(str, enum.Enum):
    CONVERGING = "converging-evidence"
    DIVERGING = "diverging-evidence"
    INCONCLUSIVE = "inconclusive"


class Verdict(str, enum.Enum):
    HOLDS = "holds-evidence"
    FAILS = "fails-evidence"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConvergenceDiagnostic:
    estimated_limit: Fraction
    tail_window: int
    max_tail_oscillation: Fraction
    verdict: Evidence
    target: Fraction | None = None

    def to_dict(self, digits: int | None = None) -> dict:
        fmt = format_scalar if digits is None else (lambda x: to_decimal(x, digits))
        return {
            "estimated_limit": fmt(self.estimated_limit),
            "max_tail_oscillation": fmt(self.max_tail_oscillation),
            "tail_window": self.tail_window,
            "target": None if self.target is None else fmt(self.target),
            "verdict": self.verdict.value,
        }


def default_window(horizon: int) -> int:
    return min(max(8, horizon // 10), horizon + 1)


def _strictly_decreasing(xs: Sequence[Fraction]) -> bool:
    return all(b < a for a, b in zip(xs, xs[1:]))


def limit_probe(
    seq,
    window: int | None = None,
    threshold: ScalarLike = DEFAULT_THRESHOLD,
    target: ScalarLike | None = None,
) -> ConvergenceDiagnostic:
    """Judge from the last ``window`` terms whether ``seq`` settles.

    The oscillation is the largest distance from a tail term to the
    reference, which is ``target`` if given and the final term otherwise.
    Oscillation within ``threshold`` is converging evidence. Otherwise the
    verdict is inconclusive while the tail is still strictly contracting and
    diverging evidence when it is not. Without a target, contracting means
    the step sizes shrink. With a target, the distances must shrink and a
    linear continuation of the tail's trend over another M steps must reach
    the threshold band; a tail creeping toward some other value is
    diverging evidence.
    """
    seq = as_prefix(seq)
    threshold = to_scalar(threshold)
    if window is None:
        if len(seq) < 2:
            if not seq.values:
                raise ValueError("cannot probe an empty sequence")
            # a single term carries no evidence either way
            return ConvergenceDiagnostic(
                seq[0], len(seq), Fraction(0), Evidence.INCONCLUSIVE,
                None if target is None else to_scalar(target),
            )
        window = default_window(seq.horizon)
    if window < 2:
        raise ValueError("window must be at least 2")
    if window > len(seq):
        raise ValueError(f"window {window} exceeds the {len(seq)} available terms")
    if threshold <= 0:
        raise ValueError("threshold must be positive")

    tail = seq.values[-window:]
    ref = tail[-1] if target is None else to_scalar(target)
    dev = [abs(v - ref) for v in tail]
    osc = max(dev)
    if osc <= threshold:
        verdict = Evidence.CONVERGING
    else:
        if target is None:
            contracting = _strictly_decreasing([abs(b - a) for a, b in zip(tail, tail[1:])])
        else:
            pace = (dev[0] - dev[-1]) / (window - 1)
            contracting = _strictly_decreasing(dev) and dev[-1] - pace * seq.horizon <= threshold
        verdict = Evidence.INCONCLUSIVE if contracting else Evidence.DIVERGING
    return ConvergenceDiagnostic(
        estimated_limit=tail[-1],
        tail_window=window,
        max_tail_oscillation=osc,
        verdict=verdict,
        target=None if target is None else ref,
    )


def parse_sequence(items) -> SequencePrefix:
    """Parse the JSON wire format: a list of integers or ``"num/den"`` strings."""
    if not isinstance(items, list):
        raise ValueError("expected a JSON array of rationals")
    for item in items:
        if isinstance(item, float) or isinstance(item, bool) or not isinstance(item, (int, str)):
            raise ValueError(f"entry {item!r} is not an integer or rational string")
    return SequencePrefix(tuple(items))


def load_sequence(path) -> SequencePrefix:
    with open(Path(path), encoding="utf-8") as fh:
        return parse_sequence(json.load(fh))


def dump_sequence(seq, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        json.dump(as_prefix(seq).to_strings(), fh)
        fh.write("\n")
