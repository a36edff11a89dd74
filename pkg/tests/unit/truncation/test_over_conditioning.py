from __future__ import annotations

import math

import numpy as np
import pytest

from ransacsi.exceptions import RegionInconsistencyError
from ransacsi.inference import TestContext, build_context
from ransacsi.intervals import IntervalSet, subtract
from ransacsi.linreg import Dataset
from ransacsi.ransac import RansacConfig, SubsetPlan, detect
from ransacsi.truncation import (
    OverConditioningRegionFinder,
    ctrl_ransac_region,
    oc_region,
    residual_region_table,
)

INF = math.inf
OUTSIDE = IntervalSet([(-INF, -1.0), (1.0, INF)])

###############################
#     Tests for oc_region     #
###############################


def test_oc_region(toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext) -> None:
    assert oc_region(toy_data, RansacConfig(tau=1.0), toy_plan, np.array([1]), toy_ctx) == OUTSIDE


def test_oc_region_with_table(
    toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext
) -> None:
    table = residual_region_table(toy_data.X, toy_plan, toy_ctx.a, toy_ctx.b_dir, tau=1.0)
    region = oc_region(
        toy_data, RansacConfig(tau=1.0), toy_plan, np.array([1]), toy_ctx, table=table
    )
    assert region == OUTSIDE


def test_oc_region_wrong_anomalies(
    toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext
) -> None:
    with pytest.raises(RegionInconsistencyError, match="does not select the observed anomalies"):
        oc_region(toy_data, RansacConfig(tau=1.0), toy_plan, np.array([0]), toy_ctx)


def test_oc_region_contains_z_obs(line_data: Dataset) -> None:
    cfg = RansacConfig(tau=1.0)
    plan = SubsetPlan(subsets=np.array([[1, 2], [0, 11], [3, 7], [4, 9]]), num_samples=12)
    anomalies = detect(line_data, cfg, plan=plan).anomalies
    ctx = build_context(line_data, anomalies, index=int(anomalies[0]))
    assert ctx.z_obs in oc_region(line_data, cfg, plan, anomalies, ctx)


def test_oc_region_subset_of_ctrl(line_data: Dataset) -> None:
    cfg = RansacConfig(tau=1.0)
    plan = SubsetPlan(subsets=np.array([[1, 2], [0, 11], [3, 7], [4, 9]]), num_samples=12)
    anomalies = detect(line_data, cfg, plan=plan).anomalies
    for index in anomalies.tolist():
        ctx = build_context(line_data, anomalies, index=index)
        oc = oc_region(line_data, cfg, plan, anomalies, ctx)
        ctrl = ctrl_ransac_region(line_data, cfg, plan, anomalies, ctx)
        assert subtract(oc, ctrl).measure() == pytest.approx(0.0, abs=1e-8)


##################################################
#     Tests for OverConditioningRegionFinder     #
##################################################


def test_over_conditioning_region_finder_repr() -> None:
    assert repr(OverConditioningRegionFinder()) == "OverConditioningRegionFinder()"


def test_over_conditioning_region_finder_find(
    toy_data: Dataset, toy_plan: SubsetPlan, toy_ctx: TestContext
) -> None:
    region = OverConditioningRegionFinder().find(
        toy_data, RansacConfig(tau=1.0), toy_plan, np.array([1]), toy_ctx
    )
    assert region == OUTSIDE
