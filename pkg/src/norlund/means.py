"""Nörlund means, their inverse, and series-to-sequence helpers."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from .comparison import deconvolve
from .kernel import (
    DEFAULT_THRESHOLD,
    ConvergenceDiagnostic,
    SequencePrefix,
    WeightSequence,
    as_prefix,
    limit_probe,
    scale,
    validate_weights,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NorlundMethod:
    name: str
    weights: WeightSequence

    @classmethod
    def from_weights(cls, name: str, raw, mode: str = "strict") -> "NorlundMethod":
        return cls(name, validate_weights(raw, mode))

    @property
    def p(self) -> SequencePrefix:
        return self.weights.weights

    @property
    def P(self) -> SequencePrefix:
        return self.weights.prefix_sums

    @property
    def horizon(self) -> int:
        return self.weights.horizon

    @property
    def conforming(self) -> bool:
        return self.weights.conforming

    def truncate(self, horizon: int) -> "NorlundMethod":
        return NorlundMethod(self.name, self.weights.truncate(horizon))


class MethodRegistry:
    """Name -> method lookup; names must be unique."""

    def __init__(self):
        self._methods: dict[str, NorlundMethod] = {}

    def register(self, method: NorlundMethod) -> NorlundMethod:
        if method.name in self._methods:
            raise KeyError(f"method {method.name!r} already registered")
        self._methods[method.name] = method
        return method

    def __getitem__(self, name: str) -> NorlundMethod:
        return self._methods[name]

    def __contains__(self, name: str) -> bool:
        return name in self._methods

    def names(self) -> list[str]:
        return sorted(self._methods)


def _common(method: NorlundMethod, s: SequencePrefix) -> int:
    m = min(method.horizon, s.horizon)
    if method.horizon != s.horizon:
        log.info(
            "horizon mismatch (method %d, sequence %d); truncating to %d",
            method.horizon, s.horizon, m,
        )
    return m


def norlund_means(method: NorlundMethod, s) -> SequencePrefix:
    """(N^p s)_m = (p_0 s_m + ... + p_m s_0) / P_m for m up to the common horizon."""
    s = as_prefix(s)
    M = _common(method, s)
    p, dp = scale(method.p.values[: M + 1])
    sv, ds = scale(s.values[: M + 1])
    P = method.P.values
    out = []
    for m in range(M + 1):
        acc = sum(p[m - n] * sv[n] for n in range(m + 1))
        out.append(Fraction(acc, dp * ds) / P[m])
    return SequencePrefix(tuple(out))


def unmean(method: NorlundMethod, target) -> SequencePrefix:
    """The unique r whose Nörlund means are ``target``.

    Solves P_n t_n = p_0 r_n + ... + p_n r_0 by forward substitution.
    """
    target = as_prefix(target)
    M = _common(method, target)
    P = method.P.values
    rhs = SequencePrefix(tuple(P[n] * target[n] for n in range(M + 1)))
    return deconvolve(rhs, method.p.truncate(M))


def partial_sums(terms) -> SequencePrefix:
    return SequencePrefix(tuple(accumulate(as_prefix(terms).values)))


def summability_report(
    method: NorlundMethod,
    terms,
    window: int | None = None,
    threshold=DEFAULT_THRESHOLD,
) -> ConvergenceDiagnostic:
    """Probe the Nörlund means of the partial sums of ``terms``."""
    return limit_probe(norlund_means(method, partial_sums(terms)), window, threshold)
