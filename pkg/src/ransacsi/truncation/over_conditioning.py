r"""Implement the over-conditioning truncation region finder, which
conditions on the whole RANSAC trajectory at the observed statistic."""

from __future__ import annotations

__all__ = ["OverConditioningRegionFinder", "oc_region"]

import logging
from typing import TYPE_CHECKING

import numpy as np

from ransacsi.exceptions import RegionInconsistencyError
from ransacsi.truncation.base import BaseRegionFinder
from ransacsi.truncation.line_search import selected_anomalies
from ransacsi.truncation.tables import residual_region_table, trajectory_cell

if TYPE_CHECKING:
    from ransacsi.inference.direction import TestContext
    from ransacsi.intervals import IntervalSet
    from ransacsi.linreg import Dataset
    from ransacsi.ransac import RansacConfig, SubsetPlan
    from ransacsi.truncation.tables import ResidualRegionTable

logger = logging.getLogger(__name__)


def oc_region(
    data: Dataset,
    cfg: RansacConfig,
    plan: SubsetPlan,
    anomalies: np.ndarray,
    ctx: TestContext,
    table: ResidualRegionTable | None = None,
) -> IntervalSet:
    r"""Compute the region where every model classifies every point as
    at the observed statistic.

    The selected model only depends on the classification, so the
    region is contained in the exact truncation region.

    Args:
        data: The dataset.
        cfg: The RANSAC configuration.
        plan: The subset plan used by the observed detection.
        anomalies: The indices of the observed anomalies.
        ctx: The test context of the tested anomaly.
        table: The precomputed inlier region table, if any.

    Returns:
        The region.

    Raises:
        RegionInconsistencyError: if the trajectory at ``z_obs`` does
            not select the observed anomalies, or the region is empty.
    """
    if table is None:
        table = residual_region_table(data.X, plan, ctx.a, ctx.b_dir, cfg.tau)
    cell, mask = trajectory_cell(table, ctx.z_obs)
    if not np.array_equal(selected_anomalies(mask), np.unique(anomalies)):
        msg = "the RANSAC trajectory at z_obs does not select the observed anomalies"
        raise RegionInconsistencyError(msg)
    if not cell:
        msg = "the over-conditioned region is empty"
        raise RegionInconsistencyError(msg)
    return cell


class OverConditioningRegionFinder(BaseRegionFinder):
    r"""Implement the over-conditioning truncation region finder.

    Example usage:

    ```pycon

    >>> from ransacsi.truncation import OverConditioningRegionFinder
    >>> OverConditioningRegionFinder()
    OverConditioningRegionFinder()

    ```
    """

    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}()"

    def find(
        self,
        data: Dataset,
        cfg: RansacConfig,
        plan: SubsetPlan,
        anomalies: np.ndarray,
        ctx: TestContext,
        table: ResidualRegionTable | None = None,
    ) -> IntervalSet:
        return oc_region(data, cfg, plan, anomalies, ctx, table=table)
