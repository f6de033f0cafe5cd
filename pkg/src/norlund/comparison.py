"""Comparison coefficients k with q = k * p, and the identities they satisfy."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .kernel import SequencePrefix, as_prefix, scale


def convolve(a, b) -> SequencePrefix:
    """Cauchy product of two prefixes, up to their common horizon.

    Coefficient-wise this is the product of the generating functions
    truncated at x**M.
    """
    a, b = as_prefix(a).values, as_prefix(b).values
    n = min(len(a), len(b))
    A, da = scale(a[:n])
    B, db = scale(b[:n])
    d = da * db
    return SequencePrefix(
        tuple(Fraction(sum(A[i] * B[j - i] for i in range(j + 1)), d) for j in range(n))
    )


def deconvolve(c, a) -> SequencePrefix:
    """Solve ``convolve(b, a) == c`` for b by forward substitution.

    The system is lower-triangular Toeplitz with diagonal a[0], so it has a
    unique solution whenever a[0] != 0.
    """
    c, a = as_prefix(c).values, as_prefix(a).values
    if not a or a[0] == 0:
        raise ZeroDivisionError("leading coefficient must be nonzero")
    n = min(len(a), len(c))
    a0 = a[0]
    A, da = scale(a[:n])
    # solved terms kept as integers over a running common denominator db
    b: list[Fraction] = []
    B: list[int] = []
    db = 1
    for j in range(n):
        acc = sum(B[i] * A[j - i] for i in range(j))
        bj = (c[j] - Fraction(acc, da * db)) / a0
        if db % bj.denominator:
            grow = bj.denominator // math.gcd(db, bj.denominator)
            B = [x * grow for x in B]
            db *= grow
        B.append(bj.numerator * (db // bj.denominator))
        b.append(bj)
    return SequencePrefix(tuple(b))


@dataclass(frozen=True)
class ComparisonCoefficients:
    values: SequencePrefix
    source_p: str
    source_q: str

    @property
    def horizon(self) -> int:
        return self.values.horizon

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


def comparison_coefficients(p, q) -> ComparisonCoefficients:
    """Coefficients k_0..k_M with q_n = k_0 p_n + ... + k_n p_0.

    k may be negative; only p and q carry sign constraints.
    """
    k = deconvolve(q.p, p.p)
    return ComparisonCoefficients(k, p.name, q.name)


def verify_Q_identity(k: ComparisonCoefficients, p, q) -> bool:
    """Check Q_n = k_0 P_n + ... + k_n P_0 exactly at every index."""
    return convolve(k.values, p.P).values == q.P.values[: len(k)]
