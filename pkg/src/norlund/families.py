"""Built-in weight families: delta, Cesàro, harmonic, geometric, custom."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kernel import ScalarLike, WeightError, format_scalar, to_scalar
from .means import NorlundMethod

KINDS = ("delta", "cesaro", "harmonic", "geometric", "custom")

DESCRIPTIONS = {
    "delta": "p = (1, 0, 0, ...); the identity method (ordinary convergence)",
    "cesaro": "cesaro:alpha, p_n = p_{n-1} (n + alpha - 1) / n with p_0 = 1",
    "harmonic": "p_n = 1 / (n + 1)",
    "geometric": "geometric:r, p_n = r**n",
    "custom": "weights read from a JSON array",
}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    horizon: int
    parameter: Fraction | None = None
    weights: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.horizon < 0:
            raise ValueError("horizon must be nonnegative")
        if self.parameter is not None:
            object.__setattr__(self, "parameter", to_scalar(self.parameter))
        if self.kind == "cesaro":
            if self.parameter is None:
                object.__setattr__(self, "parameter", Fraction(1))
            if self.parameter < 0:
                raise WeightError("cesaro requires alpha >= 0")
        elif self.kind == "geometric":
            if self.parameter is None:
                raise ValueError("geometric requires a ratio")
            if self.parameter <= 0:
                raise WeightError("geometric requires ratio > 0")
        elif self.kind == "custom" and self.weights is None:
            raise ValueError("custom family requires weights")

    @property
    def name(self) -> str:
        if self.kind in ("cesaro", "geometric"):
            return f"{self.kind}:{format_scalar(self.parameter)}"
        return self.kind


def cesaro_weights(alpha: ScalarLike, horizon: int) -> list[Fraction]:
    alpha = to_scalar(alpha)
    w = [Fraction(1)]
    for n in range(1, horizon + 1):
        w.append(w[-1] * (n + alpha - 1) / n)
    return w


def generate(spec: FamilySpec, mode: str = "strict") -> NorlundMethod:
    M = spec.horizon
    if spec.kind == "delta":
        w = [Fraction(int(n == 0)) for n in range(M + 1)]
    elif spec.kind == "cesaro":
        w = cesaro_weights(spec.parameter, M)
    elif spec.kind == "harmonic":
        w = [Fraction(1, n + 1) for n in range(M + 1)]
    elif spec.kind == "geometric":
        r = spec.parameter
        w = [r**n for n in range(M + 1)]
    else:
        w = list(spec.weights)[: M + 1]
    return NorlundMethod.from_weights(spec.name, w, mode)


def parse_family(text: str, horizon: int) -> FamilySpec:
    """Parse ``kind`` or ``kind:param``, e.g. ``cesaro:2`` or ``geometric:1/2``."""
    kind, _, param = text.partition(":")
    kind = kind.strip().lower()
    return FamilySpec(kind, horizon, to_scalar(param) if param else None)


def delta(horizon: int) -> NorlundMethod:
    return generate(FamilySpec("delta", horizon))


def cesaro(alpha: ScalarLike, horizon: int) -> NorlundMethod:
    return generate(FamilySpec("cesaro", horizon, to_scalar(alpha)))


def harmonic(horizon: int) -> NorlundMethod:
    return generate(FamilySpec("harmonic", horizon))


def geometric(ratio: ScalarLike, horizon: int) -> NorlundMethod:
    return generate(FamilySpec("geometric", horizon, to_scalar(ratio)))
