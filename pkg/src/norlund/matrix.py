"""The inclusion matrix expressing q-means through p-means, and regularity
diagnostics for lower-triangular summation matrices.

Row m of the inclusion matrix has entries c_{m,n} = k_{m-n} P_n / Q_m for
n <= m and zeros beyond, so that N^q r = C (N^p r) for every sequence r.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .comparison import ComparisonCoefficients, comparison_coefficients
from .kernel import (
    DEFAULT_THRESHOLD,
    ConvergenceDiagnostic,
    Evidence,
    SequencePrefix,
    Verdict,
    as_prefix,
    default_window,
    format_scalar,
    fsum,
    limit_probe,
    scale,
    to_decimal,
    to_scalar,
)
from .means import norlund_means

DEFAULT_GROWTH = Fraction(11, 10)
DEFAULT_HOLDS_BAND = Fraction(101, 100)


@dataclass(frozen=True)
class InclusionMatrixRow:
    row_index: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.row_index + 1:
            raise ValueError(f"row {self.row_index} needs {self.row_index + 1} entries")
        object.__setattr__(self, "entries", tuple(to_scalar(c) for c in self.entries))

    def __getitem__(self, n: int) -> Fraction:
        return self.entries[n] if n <= self.row_index else Fraction(0)

    def row_sum(self) -> Fraction:
        return fsum(self.entries)

    def abs_sum(self) -> Fraction:
        return fsum([abs(c) for c in self.entries])


def inclusion_matrix_row(p, q, k: ComparisonCoefficients, m: int) -> InclusionMatrixRow:
    if m < 0 or m > k.horizon:
        raise IndexError(f"row {m} is outside horizon {k.horizon}")
    P, Qm = p.P.values, q.P[m]
    return InclusionMatrixRow(m, tuple(k[m - n] * P[n] / Qm for n in range(m + 1)))


def inclusion_rows(p, q, k: ComparisonCoefficients | None = None) -> list[InclusionMatrixRow]:
    """Rows 0..M of C_pq, M being the common horizon of p and q."""
    if k is None:
        k = comparison_coefficients(p, q)
    return [inclusion_matrix_row(p, q, k, m) for m in range(k.horizon + 1)]


def identity_rows(horizon: int) -> list[InclusionMatrixRow]:
    return [
        InclusionMatrixRow(m, tuple(Fraction(int(n == m)) for n in range(m + 1)))
        for m in range(horizon + 1)
    ]


def apply_matrix(rows, s) -> SequencePrefix:
    """t_m = sum_n c_{m,n} s_n for each supplied row."""
    s = as_prefix(s)
    if len(rows) > len(s):
        raise ValueError(f"{len(rows)} rows but only {len(s)} sequence terms")
    sv, ds = scale(s.values[: len(rows)])
    out = []
    for m, row in enumerate(rows):
        if row.row_index != m:
            raise ValueError(f"row {row.row_index} found at position {m}")
        C, dc = scale(row.entries)
        out.append(Fraction(sum(c * x for c, x in zip(C, sv)), dc * ds))
    return SequencePrefix(tuple(out))


def growth_ratio(profile) -> Fraction | None:
    """sup over (M/2, M] divided by sup over (M/4, M/2]; None if undefined."""
    v = as_prefix(profile).values
    M = len(v) - 1
    lo, mid = M // 4, M // 2
    first, second = v[lo + 1 : mid + 1], v[mid + 1 :]
    if not first or not second:
        return None
    den = max(first)
    if den <= 0:
        return None
    return max(second) / den


def boundedness_probe(
    profile, growth=DEFAULT_GROWTH, holds_band=DEFAULT_HOLDS_BAND
) -> tuple[Verdict, Fraction | None]:
    """Grade whether a nonnegative profile stays bounded at this horizon.

    A growth ratio at or above ``growth`` is failing evidence, one at or below
    ``holds_band`` is holding evidence, anything in between is inconclusive.
    """
    growth, holds_band = to_scalar(growth), to_scalar(holds_band)
    ratio = growth_ratio(profile)
    if ratio is None:
        return Verdict.INCONCLUSIVE, None
    if ratio >= growth:
        return Verdict.FAILS, ratio
    if ratio <= holds_band:
        return Verdict.HOLDS, ratio
    return Verdict.INCONCLUSIVE, ratio


def evidence_to_verdict(e: Evidence) -> Verdict:
    return {
        Evidence.CONVERGING: Verdict.HOLDS,
        Evidence.DIVERGING: Verdict.FAILS,
        Evidence.INCONCLUSIVE: Verdict.INCONCLUSIVE,
    }[e]


def combine(verdicts) -> Verdict:
    verdicts = list(verdicts)
    if any(v is Verdict.FAILS for v in verdicts):
        return Verdict.FAILS
    if all(v is Verdict.HOLDS for v in verdicts):
        return Verdict.HOLDS
    return Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class SSTReport:
    row_abs_sums: SequencePrefix
    row_sum_deviation: SequencePrefix
    # column n -> its last `window` entries c_{m,n}
    column_profiles: dict = field(repr=False)
    column_diagnostics: dict = field(repr=False)
    growth_ratio: Fraction | None
    verdicts: dict

    @property
    def horizon(self) -> int:
        return self.row_abs_sums.horizon

    @property
    def h_at_horizon(self) -> Fraction:
        return max(self.row_abs_sums.values)

    @property
    def verdict(self) -> Verdict:
        return combine(self.verdicts.values())

    def to_dict(self, digits: int | None = None) -> dict:
        fmt = format_scalar if digits is None else (lambda x: to_decimal(x, digits))
        return {
            "column_verdicts": {str(n): d.verdict.value for n, d in self.column_diagnostics.items()},
            "growth_ratio": None if self.growth_ratio is None else fmt(self.growth_ratio),
            "h_at_horizon": fmt(self.h_at_horizon),
            "horizon": self.horizon,
            "row_abs_sums": [fmt(x) for x in self.row_abs_sums],
            "row_sum_deviation": [fmt(x) for x in self.row_sum_deviation],
            "verdict": self.verdict.value,
            "verdicts": {key: v.value for key, v in self.verdicts.items()},
        }


def sst_diagnostics(
    rows,
    window: int | None = None,
    threshold=DEFAULT_THRESHOLD,
    growth=DEFAULT_GROWTH,
    holds_band=DEFAULT_HOLDS_BAND,
) -> SSTReport:
    """Finite-horizon profiles for the three regularity conditions.

    (i) bounded absolute row sums, via :func:`boundedness_probe`;
    (ii) every column tends to 0, probed for columns n <= M/2 so each has a
    full tail window after the diagonal;
    (iii) row sums tend to 1, holding outright when the deviation is
    identically zero.
    """
    M = len(rows) - 1
    if M < 0:
        raise ValueError("no rows")
    if window is None:
        window = default_window(M)

    abs_sums = SequencePrefix(tuple(r.abs_sum() for r in rows))
    deviation = SequencePrefix(tuple(abs(r.row_sum() - 1) for r in rows))

    v1, ratio = boundedness_probe(abs_sums, growth, holds_band)

    columns: dict[int, tuple] = {}
    col_diag: dict[int, ConvergenceDiagnostic] = {}
    for n in range(M // 2 + 1):
        if M - window + 1 <= n:
            break
        column = tuple(rows[m][n] for m in range(n, M + 1))
        columns[n] = column[-window:]
        col_diag[n] = limit_probe(column, window, threshold, target=0)
    if col_diag:
        v2 = combine(evidence_to_verdict(d.verdict) for d in col_diag.values())
    else:
        v2 = Verdict.INCONCLUSIVE

    if all(d == 0 for d in deviation):
        v3 = Verdict.HOLDS
    else:
        v3 = evidence_to_verdict(limit_probe(deviation, window, threshold, target=0).verdict)

    return SSTReport(
        row_abs_sums=abs_sums,
        row_sum_deviation=deviation,
        column_profiles=columns,
        column_diagnostics=col_diag,
        growth_ratio=ratio,
        verdicts={"bounded_rows": v1, "columns_vanish": v2, "rows_sum_to_one": v3},
    )


def first_identity_violation(rows, p, q, r) -> int | None:
    """First m where (C N^p r)_m != (N^q r)_m, or None if the identity holds."""
    lhs = apply_matrix(rows, norlund_means(p, r))
    rhs = norlund_means(q, r)
    for m, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return m
    if len(lhs) != len(rhs):
        return min(len(lhs), len(rhs))
    return None
