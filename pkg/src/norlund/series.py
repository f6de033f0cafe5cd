"""Named series used for demonstrations: each name yields terms a_0..a_M."""
from __future__ import annotations

from fractions import Fraction

from .kernel import SequencePrefix, to_scalar

NAMES = ("grandi", "natural-alternating", "const:c", "powers:r")


def named_terms(text: str, horizon: int) -> SequencePrefix:
    """Terms of a named series.

    ``grandi`` is 1 - 1 + 1 - ..., ``natural-alternating`` is
    1 - 2 + 3 - 4 + ..., ``const:c`` repeats c and ``powers:r`` is
    1 + r + r**2 + ...
    """
    name, _, arg = text.partition(":")
    n = range(horizon + 1)
    if name == "grandi":
        vals = [Fraction((-1) ** i) for i in n]
    elif name == "natural-alternating":
        vals = [Fraction((-1) ** i * (i + 1)) for i in n]
    elif name == "const":
        c = to_scalar(arg or "1")
        vals = [c for _ in n]
    elif name == "powers":
        if not arg:
            raise ValueError("powers needs a ratio, e.g. powers:1/2")
        r = to_scalar(arg)
        vals = [r**i for i in n]
    else:
        raise ValueError(f"unknown series {text!r}; known: {', '.join(NAMES)}")
    return SequencePrefix(tuple(vals))
