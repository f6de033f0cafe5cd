"""Riesz inclusion conditions as finite-horizon profiles.

For methods p and q with comparison coefficients k:

* R1 profile  A_m = (|k_0| P_m + ... + |k_m| P_0) / Q_m, which must stay bounded;
* R2 profile  B_m = k_m / Q_m, which must tend to zero.

Both together are equivalent to (N, p) being included in (N, q), with no
regularity assumption on either method. Verdicts here are evidence at the
chosen horizon, never proofs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .comparison import ComparisonCoefficients, comparison_coefficients
from .families import delta
from .kernel import (
    DEFAULT_THRESHOLD,
    ConvergenceDiagnostic,
    SequencePrefix,
    Verdict,
    format_scalar,
    limit_probe,
    scale,
    to_decimal,
)
from .matrix import DEFAULT_GROWTH, DEFAULT_HOLDS_BAND, boundedness_probe, combine, evidence_to_verdict


def r1_profile(p, q, k: ComparisonCoefficients | None = None) -> SequencePrefix:
    if k is None:
        k = comparison_coefficients(p, q)
    n = len(k)
    K, dk = scale(k.values)
    P, dp = scale(p.P.values[:n])
    Q = q.P.values
    out = []
    for m in range(n):
        # |k_i P_{m-i}| and |Q_m| coincide with the textbook form when P, Q > 0
        total = sum(abs(K[i] * P[m - i]) for i in range(m + 1))
        out.append(Fraction(total, dk * dp) / abs(Q[m]))
    return SequencePrefix(tuple(out))


def r2_profile(p, q, k: ComparisonCoefficients | None = None) -> SequencePrefix:
    if k is None:
        k = comparison_coefficients(p, q)
    Q = q.P.values
    return SequencePrefix(tuple(km / Q[m] for m, km in enumerate(k.values)))


@dataclass(frozen=True)
class RieszReport:
    source_p: str
    source_q: str
    k: ComparisonCoefficients
    r1_profile: SequencePrefix
    r2_profile: SequencePrefix
    r1_verdict: Verdict
    r2_verdict: Verdict
    growth_ratio: Fraction | None
    r2_diagnostic: ConvergenceDiagnostic
    nonconforming_flag: bool

    @property
    def horizon(self) -> int:
        return self.r1_profile.horizon

    @property
    def h_at_horizon(self) -> Fraction:
        """sup of A_m for m <= M; not claimed to bound the whole sequence."""
        return max(self.r1_profile.values)

    @property
    def verdict(self) -> Verdict:
        return combine([self.r1_verdict, self.r2_verdict])

    def summary(self) -> str:
        flag = " [non-conforming weights]" if self.nonconforming_flag else ""
        return (
            f"({self.source_p}) -> ({self.source_q}): {self.verdict.value} "
            f"at horizon M={self.horizon}{flag}"
        )

    def to_dict(self, digits: int | None = None) -> dict:
        fmt = format_scalar if digits is None else (lambda x: to_decimal(x, digits))
        return {
            "growth_ratio": None if self.growth_ratio is None else fmt(self.growth_ratio),
            "h_at_horizon": fmt(self.h_at_horizon),
            "horizon": self.horizon,
            "k": [fmt(x) for x in self.k.values],
            "nonconforming": self.nonconforming_flag,
            "p": self.source_p,
            "q": self.source_q,
            "r1_profile": [fmt(x) for x in self.r1_profile],
            "r1_verdict": self.r1_verdict.value,
            "r2_probe": self.r2_diagnostic.to_dict(digits),
            "r2_profile": [fmt(x) for x in self.r2_profile],
            "r2_verdict": self.r2_verdict.value,
            "summary": self.summary(),
            "verdict": self.verdict.value,
        }

    def csv_rows(self, digits: int = 12) -> list[tuple[int, str, str]]:
        return [
            (m, to_decimal(a, digits), to_decimal(b, digits))
            for m, (a, b) in enumerate(zip(self.r1_profile, self.r2_profile))
        ]


def inclusion_report(
    p,
    q,
    window: int | None = None,
    threshold=DEFAULT_THRESHOLD,
    growth=DEFAULT_GROWTH,
    holds_band=DEFAULT_HOLDS_BAND,
) -> RieszReport:
    """Evidence for (N, p) being included in (N, q).

    Holds when the R1 profile looks bounded and the R2 profile looks like it
    vanishes; fails when either probe says otherwise.
    """
    k = comparison_coefficients(p, q)
    A = r1_profile(p, q, k)
    B = r2_profile(p, q, k)
    v1, ratio = boundedness_probe(A, growth, holds_band)
    diag = limit_probe(B, window, threshold, target=0)
    return RieszReport(
        source_p=p.name,
        source_q=q.name,
        k=k,
        r1_profile=A,
        r2_profile=B,
        r1_verdict=v1,
        r2_verdict=evidence_to_verdict(diag.verdict),
        growth_ratio=ratio,
        r2_diagnostic=diag,
        nonconforming_flag=not (p.conforming and q.conforming),
    )


def regularity_report(q, **probe) -> RieszReport:
    """Regularity of q is inclusion of the identity method (delta weights) in q."""
    return inclusion_report(delta(q.horizon), q, **probe)
