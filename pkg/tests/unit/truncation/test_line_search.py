from __future__ import annotations

import math

import numpy as np
import pytest
from coola import objects_are_equal

from ransacsi.exceptions import InvalidInputError, TruncatedSearchError
from ransacsi.inference import TestContext, build_context, selective_p_value
from ransacsi.intervals import IntervalSet
from ransacsi.linreg import Dataset
from ransacsi.ransac import RansacConfig, SubsetPlan, detect
from ransacsi.truncation import (
    LineSearchRegionFinder,
    ctrl_ransac_region,
    default_search_range,
    line_search_region,
    selected_anomalies,
)

##########################################
#     Tests for default_search_range     #
##########################################


def test_default_search_range(toy_ctx: TestContext) -> None:
    z_min, z_max = default_search_range(toy_ctx)
    assert z_min == pytest.approx(-20.0 * math.sqrt(2.0))
    assert z_max == pytest.approx(20.0 * math.sqrt(2.0) + 10.0)


def test_default_search_range_width(toy_ctx: TestContext) -> None:
    z_min, z_max = default_search_range(toy_ctx, range_sd=1.0)
    assert z_min == pytest.approx(-math.sqrt(2.0))
    assert z_max == pytest.approx(math.sqrt(2.0) + 10.0)


########################################
#     Tests for selected_anomalies     #
########################################


def test_selected_anomalies() -> None:
    mask = np.array([[True, False, True], [False, True, True]])
    assert objects_are_equal(selected_anomalies(mask), np.array([1]))


def test_selected_anomalies_largest_consensus() -> None:
    mask = np.array([[True, False, False], [True, True, False]])
    assert objects_are_equal(selected_anomalies(mask), np.array([2]))


def test_selected_anomalies_none() -> None:
    assert selected_anomalies(np.ones((2, 3), dtype=bool)).size == 0


########################################
#     Tests for line_search_region     #
########################################


def test_line_search_region(toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext) -> None:
    region = line_search_region(
        toy_data, RansacConfig(tau=1.0), toy_plan, np.array([1]), toy_ctx, z_min=-5.0, z_max=15.0
    )
    assert region == IntervalSet([(-5.0, -1.0), (1.0, 15.0)])


def test_line_search_region_default_range(
    toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext
) -> None:
    region = line_search_region(toy_data, RansacConfig(tau=1.0), toy_plan, np.array([1]), toy_ctx)
    z_min, z_max = default_search_range(toy_ctx)
    assert region == IntervalSet([(z_min, -1.0), (1.0, z_max)])


def test_line_search_region_z_obs_outside(
    toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext
) -> None:
    with pytest.raises(InvalidInputError, match="must be in the search range"):
        line_search_region(
            toy_data, RansacConfig(tau=1.0), toy_plan, np.array([1]), toy_ctx, z_min=0.0, z_max=5.0
        )


def test_line_search_region_max_steps(
    toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext
) -> None:
    with pytest.raises(TruncatedSearchError, match="visited more than 2 cells") as exc_info:
        line_search_region(
            toy_data,
            RansacConfig(tau=1.0),
            toy_plan,
            np.array([1]),
            toy_ctx,
            z_min=-5.0,
            z_max=15.0,
            max_steps=2,
        )
    assert exc_info.value.partial_region == IntervalSet([(-5.0, -1.0)])


def test_line_search_region_matches_ctrl(line_data: Dataset) -> None:
    cfg = RansacConfig(tau=1.0)
    plan = SubsetPlan(subsets=np.array([[1, 2], [0, 11], [3, 7], [4, 9]]), num_samples=12)
    anomalies = detect(line_data, cfg, plan=plan).anomalies
    for index in anomalies.tolist():
        ctx = build_context(line_data, anomalies, index=index)
        z_min, z_max = default_search_range(ctx)
        expected = ctrl_ransac_region(line_data, cfg, plan, anomalies, ctx).clip(z_min, z_max)
        region = line_search_region(line_data, cfg, plan, anomalies, ctx)
        assert selective_p_value(ctx.z_obs, ctx.var, region) == pytest.approx(
            selective_p_value(ctx.z_obs, ctx.var, expected), abs=1e-6
        )


############################################
#     Tests for LineSearchRegionFinder     #
############################################


def test_line_search_region_finder_repr() -> None:
    assert repr(LineSearchRegionFinder(range_sd=5.0, max_steps=10)) == (
        "LineSearchRegionFinder(range_sd=5.0, max_steps=10)"
    )


def test_line_search_region_finder_incorrect_range() -> None:
    with pytest.raises(InvalidInputError, match="range_sd must be positive"):
        LineSearchRegionFinder(range_sd=0.0)


def test_line_search_region_finder_find(
    toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext
) -> None:
    finder = LineSearchRegionFinder(range_sd=1.0)
    region = finder.find(toy_data, RansacConfig(tau=1.0), toy_plan, np.array([1]), toy_ctx)
    z_min, z_max = default_search_range(toy_ctx, range_sd=1.0)
    assert region == IntervalSet([(z_min, -1.0), (1.0, z_max)])
