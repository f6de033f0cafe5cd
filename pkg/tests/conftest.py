import sys
from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from norlund import NorlundMethod

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda l: int(l.split()[1][2:])):
        terminalreporter.write_line(line)


def rationals(lo=-3, hi=3, max_den=12):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


def weight_lists(min_size=1, max_size=12):
    """Strict-mode weights: p_0 in (0, 1], p_n in [0, 1]."""
    head = st.fractions(min_value=Fraction(1, 12), max_value=1, max_denominator=12)
    tail = st.lists(st.fractions(min_value=0, max_value=1, max_denominator=12), min_size=min_size - 1, max_size=max_size - 1)
    return st.builds(lambda h, t: [h] + t, head, tail)


def methods(name="m", min_size=1, max_size=12):
    return weight_lists(min_size, max_size).map(lambda w: NorlundMethod.from_weights(name, w))


@st.composite
def method_pairs(draw, max_size=12):
    n = draw(st.integers(1, max_size))
    p = draw(methods("p", n, n))
    q = draw(methods("q", n, n))
    return p, q


@st.composite
def method_and_sequence(draw, max_size=12):
    p = draw(methods("p", 1, max_size))
    s = draw(st.lists(rationals(), min_size=len(p.p), max_size=len(p.p)))
    return p, s


# Oracles below follow the defining formulas term by term with plain
# Fraction arithmetic; they share no code with the package.

def brute_means(p, s):
    out = []
    for m in range(min(len(p), len(s))):
        num = sum((Fraction(p[m - n]) * Fraction(s[n]) for n in range(m + 1)), Fraction(0))
        out.append(num / sum((Fraction(x) for x in p[: m + 1]), Fraction(0)))
    return out


def brute_convolve(a, b):
    n = min(len(a), len(b))
    return [sum((Fraction(a[i]) * Fraction(b[j - i]) for i in range(j + 1)), Fraction(0)) for j in range(n)]


def brute_prefix_sums(p):
    return [sum((Fraction(x) for x in p[: n + 1]), Fraction(0)) for n in range(len(p))]
