from __future__ import annotations

import math
from unittest.mock import patch

import pytest
from scipy.stats import norm

from ransacsi.exceptions import (
    DegenerateDirectionError,
    NumericMassError,
    RegionInconsistencyError,
)
from ransacsi.inference import (
    bonferroni_p_value,
    log_gaussian_mass,
    log_interval_mass,
    naive_p_value,
    selective_p_value,
)
from ransacsi.intervals import IntervalSet

INF = math.inf

#######################################
#     Tests for log_interval_mass     #
#######################################


def test_log_interval_mass_half_line() -> None:
    assert log_interval_mass(0.0, INF) == pytest.approx(math.log(0.5), rel=1e-12)


def test_log_interval_mass_real_line() -> None:
    assert log_interval_mass(-INF, INF) == pytest.approx(0.0, abs=1e-12)


def test_log_interval_mass_across_zero() -> None:
    assert math.exp(log_interval_mass(-1.0, 2.0)) == pytest.approx(
        norm.cdf(2.0) - norm.cdf(-1.0), rel=1e-12
    )


def test_log_interval_mass_negative() -> None:
    assert log_interval_mass(-2.0, -1.0) == pytest.approx(log_interval_mass(1.0, 2.0), rel=1e-12)


def test_log_interval_mass_far_tail() -> None:
    assert log_interval_mass(40.0, 41.0) == pytest.approx(-804.61, abs=0.01)


def test_log_interval_mass_matches_scipy() -> None:
    assert log_interval_mass(0.5, 3.0) == pytest.approx(
        math.log(norm.sf(0.5) - norm.sf(3.0)), rel=1e-12
    )


@pytest.mark.parametrize(("lo", "hi"), [(1.0, 1.0), (2.0, 1.0)])
def test_log_interval_mass_empty(lo: float, hi: float) -> None:
    assert log_interval_mass(lo, hi) == -INF


#######################################
#     Tests for log_gaussian_mass     #
#######################################


def test_log_gaussian_mass_real_line() -> None:
    assert log_gaussian_mass(IntervalSet.real_line()) == pytest.approx(0.0, abs=1e-12)


def test_log_gaussian_mass_empty() -> None:
    assert log_gaussian_mass(IntervalSet.empty()) == -INF


def test_log_gaussian_mass_union() -> None:
    region = IntervalSet([(-INF, -1.0), (1.0, INF)])
    assert math.exp(log_gaussian_mass(region)) == pytest.approx(2.0 * norm.sf(1.0), rel=1e-12)


def test_log_gaussian_mass_sd() -> None:
    assert log_gaussian_mass(IntervalSet([(0.0, 2.0)]), sd=2.0) == pytest.approx(
        log_interval_mass(0.0, 1.0), rel=1e-12
    )


#######################################
#     Tests for selective_p_value     #
#######################################


def test_selective_p_value_half_line() -> None:
    assert selective_p_value(1.0, 1.0, IntervalSet([(0.0, INF)])) == pytest.approx(
        0.31731, abs=1e-5
    )


def test_selective_p_value_symmetric_boundary() -> None:
    assert selective_p_value(1.0, 1.0, IntervalSet([(-INF, -1.0), (1.0, INF)])) == 1.0


def test_selective_p_value_real_line_is_naive() -> None:
    assert selective_p_value(1.3, 2.0, IntervalSet.real_line()) == pytest.approx(
        naive_p_value(1.3, 2.0), rel=1e-10
    )


def test_selective_p_value_two_sided() -> None:
    # P(|Z| >= 10 | |Z| >= 1) with Z ~ N(0, 2)
    sd = math.sqrt(2.0)
    region = IntervalSet([(-INF, -1.0), (1.0, INF)])
    assert selective_p_value(10.0, 2.0, region) == pytest.approx(
        norm.sf(10.0 / sd) / norm.sf(1.0 / sd), rel=1e-8
    )


def test_selective_p_value_negative_statistic() -> None:
    region = IntervalSet([(-INF, -1.0), (1.0, INF)])
    assert selective_p_value(-3.0, 1.0, region) == pytest.approx(
        selective_p_value(3.0, 1.0, region), rel=1e-12
    )


def test_selective_p_value_far_tail() -> None:
    p = selective_p_value(40.5, 1.0, IntervalSet([(40.0, 41.0)]))
    assert p == pytest.approx(math.exp(-20.125) * 40.0 / 40.5, rel=1e-2)


def test_selective_p_value_boundary_tolerance() -> None:
    region = IntervalSet([(0.0, 1.0)])
    assert 0.0 <= selective_p_value(1.0 + 1e-12, 1.0, region) <= 1.0


def test_selective_p_value_not_in_region() -> None:
    with pytest.raises(RegionInconsistencyError, match="is not in the truncation region"):
        selective_p_value(0.5, 1.0, IntervalSet([(1.0, 2.0)]))


def test_selective_p_value_empty_region() -> None:
    with pytest.raises(RegionInconsistencyError, match="is not in the truncation region"):
        selective_p_value(0.5, 1.0, IntervalSet.empty())


def test_selective_p_value_underflow() -> None:
    with (
        patch("ransacsi.inference.pvalue.log_gaussian_mass", lambda *args: -INF),  # noqa: ARG005
        pytest.raises(NumericMassError, match="underflows"),
    ):
        selective_p_value(1.5, 1.0, IntervalSet([(1.0, 2.0)]))


@pytest.mark.parametrize("var", [0.0, -1.0, INF])
def test_selective_p_value_incorrect_variance(var: float) -> None:
    with pytest.raises(DegenerateDirectionError, match="must be positive"):
        selective_p_value(1.0, var, IntervalSet.real_line())


###################################
#     Tests for naive_p_value     #
###################################


def test_naive_p_value_zero() -> None:
    assert naive_p_value(0.0, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_naive_p_value() -> None:
    assert naive_p_value(2.0, 4.0) == pytest.approx(2.0 * norm.sf(1.0), rel=1e-12)


def test_naive_p_value_196() -> None:
    assert naive_p_value(1.959963984540054, 1.0) == pytest.approx(0.05, rel=1e-10)


def test_naive_p_value_symmetric() -> None:
    assert naive_p_value(-2.0, 4.0) == naive_p_value(2.0, 4.0)


def test_naive_p_value_far_tail() -> None:
    assert 0.0 <= naive_p_value(50.0, 1.0) < 1e-300


def test_naive_p_value_incorrect_variance() -> None:
    with pytest.raises(DegenerateDirectionError, match="must be positive"):
        naive_p_value(1.0, 0.0)


########################################
#     Tests for bonferroni_p_value     #
########################################


def test_bonferroni_p_value() -> None:
    assert bonferroni_p_value(1e-9, 10) == pytest.approx(1.024e-06, rel=1e-10)


def test_bonferroni_p_value_capped() -> None:
    assert bonferroni_p_value(0.5, 3) == 1.0


def test_bonferroni_p_value_zero() -> None:
    assert bonferroni_p_value(0.0, 500) == 0.0


def test_bonferroni_p_value_large_n() -> None:
    # 2^2000 overflows a float but not its logarithm
    assert bonferroni_p_value(1e-300, 2000) == 1.0


@pytest.mark.parametrize("p", [1e-12, 1e-6, 0.01, 0.3])
def test_bonferroni_p_value_not_smaller_than_naive(p: float) -> None:
    assert bonferroni_p_value(p, 5) >= p
