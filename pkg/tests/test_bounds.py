import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from urm.bounds import (
    AT_OR_ABOVE_BOUNDARY,
    N_EQUALS_2,
    SMALL,
    THEOREM29,
    analytic_lower,
    beats_analytic,
    binary_entropy,
    bounds_report,
    closed_form_k,
    closed_form_upper,
    entropy_k,
    exact_value,
    exceeds_entropy_power,
    hamming_ball_bound,
    lower_bound,
    regime,
    upper_bound,
)
from urm.constructions import best_construction_size, boundary
from urm.errors import DomainError, RegimeError


def test_binary_entropy():
    assert binary_entropy(Fraction(1, 2)) == 1.0
    assert binary_entropy(0) == 0.0 and binary_entropy(1) == 0.0
    assert binary_entropy(Fraction(1, 4)) == pytest.approx(0.8112781244591328, abs=1e-9)
    with pytest.raises(DomainError):
        binary_entropy(Fraction(3, 2))
    with pytest.raises(DomainError):
        binary_entropy(-0.1)


def test_hamming_ball_examples():
    assert hamming_ball_bound(4, 2) == (11, 16.0)
    exact, cap = hamming_ball_bound(10, 5)
    assert exact == 56 and cap == pytest.approx(149.0116, abs=1e-3)
    for m in range(2, 9):
        assert hamming_ball_bound(m, m)[0] == 1 + m
    with pytest.raises(DomainError):
        hamming_ball_bound(4, 1)


@pytest.mark.parametrize("m", range(2, 25))
def test_hamming_ball_inequality(m):
    for k in range(2, m + 1):
        exact, cap = hamming_ball_bound(m, k)
        assert exact <= cap * (1 + 1e-12)


@given(st.integers(1, 60), st.integers(1, 40), st.integers(2, 12))
def test_exact_entropy_comparison_agrees_with_floats(value, m, k):
    cap = 2 ** (m * binary_entropy(Fraction(1, k)))
    if abs(value - cap) > 1e-6 * cap:
        assert exceeds_entropy_power(value, m, k) == (value > cap)


@given(st.integers(1, 2000), st.integers(2, 40), st.integers(1, 40))
def test_exact_analytic_comparison_agrees_with_floats(n, m, k):
    a = analytic_lower(n, m)
    if abs(k * n - a) > 1e-9 * a:
        assert beats_analytic(k, n, m) == (k * n > a)


def test_lower_bound_examples():
    lb = lower_bound(7, 10)
    assert (lb.constructive, lb.k_used) == (21, 3)
    assert lb.analytic == pytest.approx(15.4)
    lb = lower_bound(1, 2)
    assert (lb.constructive, lb.k_used) == (2, 2) and lb.analytic == pytest.approx(1.0)
    assert lower_bound(15, 5).constructive == 30
    with pytest.raises(RegimeError):
        lower_bound(8, 4)


def test_upper_bound_examples():
    ub = upper_bound(512, 12)
    assert ub.candidates["entropy"] == 2560
    assert entropy_k(512, 12) == 5
    ub = upper_bound(64, 12)
    assert ub.candidates["closed_form"] == 1178
    for m in range(2, 8):
        assert upper_bound(1, m).value == m


def test_upper_bound_picks_minimum():
    for m in range(2, 13):
        for n in range(1, boundary(m) + 1, max(1, boundary(m) // 17)):
            ub = upper_bound(n, m)
            assert ub.value == min(ub.candidates.values())
            assert ub.candidates["trivial"] == n * m


def test_exact_value_examples():
    assert exact_value(2, 5) == 6
    assert exact_value(5, 4) == 11
    assert exact_value(8, 4) == 15
    assert exact_value(1, 7) == 7
    assert exact_value(4, 5) is None
    with pytest.raises(DomainError):
        exact_value(0, 3)


@pytest.mark.parametrize("m", range(4, 15))
def test_formulas_agree_at_the_seam(m):
    top = boundary(m)
    assert exact_value(top, m) == (1 << m) - 2
    assert 2 * top + (boundary(m) - top) // 2 == top + boundary(m)


def test_regimes():
    assert regime(2, 5) == N_EQUALS_2
    assert regime(13, 5) == THEOREM29
    assert regime(16, 5) == AT_OR_ABOVE_BOUNDARY
    assert regime(3, 3) == AT_OR_ABOVE_BOUNDARY
    assert regime(7, 10) == SMALL


def test_report_examples():
    rep = bounds_report(7, 10)
    assert rep.lower == 21 and rep.regime == SMALL
    rep = bounds_report(2, 5)
    assert rep.exact == 6 and rep.regime == N_EQUALS_2
    rep = bounds_report(13, 5)
    assert rep.exact == 27 and rep.regime == THEOREM29
    rep = bounds_report(20, 4)
    assert rep.lower == rep.upper == rep.exact == 27
    assert rep.lower_analytic is None
    assert all(isinstance(s, str) and s for s in rep.sources)


def test_report_dict_keys():
    assert list(bounds_report(3, 5).as_dict()) == [
        "n", "m", "lower", "lower_analytic", "upper", "exact", "regime", "sources",
    ]


@pytest.mark.parametrize("m", range(2, 15))
def test_sandwich(m):
    for n in range(1, boundary(m) + 1, max(1, boundary(m) // 40)):
        lb, ub = lower_bound(n, m), upper_bound(n, m)
        assert lb.constructive <= ub.value
        ex = exact_value(n, m)
        if ex is not None:
            assert lb.constructive <= ex <= ub.value
        assert best_construction_size(n, m) >= lb.constructive
        if lb.from_log_ratio:
            assert lb.constructive > lb.analytic


@pytest.mark.parametrize("m", range(3, 15))
def test_closed_form_k_fires(m):
    # the k behind the closed form satisfies the entropy condition everywhere,
    # not only where the closed form is the smallest candidate
    for n in range(2, boundary(m) + 1):
        assert exceeds_entropy_power(n, m, closed_form_k(n, m))


def test_closed_form_value():
    assert closed_form_upper(64, 12) == math.ceil(64 / 0.5 * (6 - 3.2 * math.log2(0.5)))
