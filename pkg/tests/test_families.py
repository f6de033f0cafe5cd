from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from norlund import FamilySpec, WeightError, generate, parse_family, validate_weights
from norlund.families import cesaro, cesaro_weights, delta, geometric, harmonic
from norlund.series import named_terms

F = Fraction


def test_cesaro_examples():
    assert list(cesaro(1, 4).p) == [1, 1, 1, 1, 1]
    assert list(cesaro(0, 5).p) == list(delta(5).p) == [1, 0, 0, 0, 0, 0]
    assert list(cesaro(2, 3).p) == [1, 2, 3, 4]


def test_geometric_and_harmonic():
    assert list(geometric(F(1, 2), 3).p) == [1, F(1, 2), F(1, 4), F(1, 8)]
    assert list(harmonic(3).p) == [1, F(1, 2), F(1, 3), F(1, 4)]


@given(st.fractions(min_value=0, max_value=5, max_denominator=7), st.integers(0, 30))
def test_cesaro_recurrence_and_positivity(alpha, M):
    w = cesaro_weights(alpha, M)
    assert w[0] == 1
    for n in range(1, M + 1):
        assert w[n] * n == w[n - 1] * (n + alpha - 1)
    if alpha > 0:
        assert all(x > 0 for x in w)
    validate_weights(w)


@pytest.mark.parametrize("alpha", [1, 2, 3, 4])
def test_cesaro_integer_order_matches_binomial(alpha):
    from math import comb

    assert cesaro_weights(alpha, 20) == [comb(n + alpha - 1, alpha - 1) for n in range(21)]


def test_cesaro_prefix_sum_closed_forms():
    assert list(cesaro(1, 50).P) == [n + 1 for n in range(51)]
    assert list(cesaro(2, 50).P) == [F((n + 1) * (n + 2), 2) for n in range(51)]


def test_invalid_parameters():
    with pytest.raises(WeightError):
        FamilySpec("cesaro", 5, F(-1))
    with pytest.raises(WeightError):
        FamilySpec("geometric", 5, F(0))
    with pytest.raises(ValueError):
        FamilySpec("geometric", 5)
    with pytest.raises(ValueError):
        FamilySpec("abel", 5)
    with pytest.raises(ValueError):
        FamilySpec("custom", 5)


def test_parse_family_names():
    assert parse_family("cesaro:2", 4).name == "cesaro:2"
    assert parse_family("geometric:1/2", 4).parameter == F(1, 2)
    assert parse_family("cesaro", 4).parameter == 1
    assert parse_family("delta", 4).name == "delta"


def test_custom_family():
    m = generate(FamilySpec("custom", 2, weights=(1, 2, 3, 4)))
    assert list(m.p) == [1, 2, 3]


def test_named_series():
    assert list(named_terms("grandi", 3)) == [1, -1, 1, -1]
    assert list(named_terms("natural-alternating", 3)) == [1, -2, 3, -4]
    assert list(named_terms("const:3", 2)) == [3, 3, 3]
    assert list(named_terms("powers:1/2", 2)) == [1, F(1, 2), F(1, 4)]
    with pytest.raises(ValueError):
        named_terms("nope", 2)
