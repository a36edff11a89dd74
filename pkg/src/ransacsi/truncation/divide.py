r"""Implement the divide-and-conquer construction of the exact truncation
region."""

from __future__ import annotations

__all__ = ["COUNTING_METHODS", "DivideConquerRegionFinder", "ctrl_ransac_region"]

import logging
from typing import TYPE_CHECKING

from ransacsi.exceptions import InvalidInputError, NoAnomalyError, RegionInconsistencyError
from ransacsi.intervals import contains, intersect, union_all
from ransacsi.truncation.base import BaseRegionFinder
from ransacsi.truncation.tables import (
    dp_count_regions,
    region_z1,
    region_z2,
    residual_region_table,
    sweep_count_regions,
)

if TYPE_CHECKING:
    import numpy as np

    from ransacsi.inference.direction import TestContext
    from ransacsi.intervals import IntervalSet
    from ransacsi.linreg import Dataset
    from ransacsi.ransac import RansacConfig, SubsetPlan
    from ransacsi.truncation.tables import ResidualRegionTable

logger = logging.getLogger(__name__)

COUNTING_METHODS = {"dp": dp_count_regions, "sweep": sweep_count_regions}


def ctrl_ransac_region(
    data: Dataset,
    cfg: RansacConfig,
    plan: SubsetPlan,
    anomalies: np.ndarray,
    ctx: TestContext,
    counting: str = "dp",
    symmetric: bool = False,
    table: ResidualRegionTable | None = None,
) -> IntervalSet:
    r"""Compute the exact truncation region by dividing it over the
    index of the selected model.

    The region is the union over the models ``b`` of the region where
    ``b`` is the selected model with exactly ``K`` outliers, intersected
    with the region where the inliers of ``b`` are the observed
    inliers. The inlier regions and count regions are computed once
    before the loop over ``b``.

    Args:
        data: The dataset.
        cfg: The RANSAC configuration.
        plan: The subset plan used by the observed detection.
        anomalies: The indices of the observed anomalies.
        ctx: The test context of the tested anomaly.
        counting: The method used to compute the count regions,
            ``"dp"`` or ``"sweep"``.
        symmetric: If ``True``, the optimality region ignores the order
            of the models.
        table: The precomputed inlier region table, if any.

    Returns:
        The truncation region.

    Raises:
        NoAnomalyError: if there is no anomaly.
        RegionInconsistencyError: if the region is empty or does not
            contain the observed statistic.
    """
    if counting not in COUNTING_METHODS:
        msg = (
            f"Incorrect counting method: {counting}. "
            f"Valid values are: {sorted(COUNTING_METHODS)}"
        )
        raise InvalidInputError(msg)
    K = len(anomalies)  # noqa: N806
    if K == 0:
        msg = "no anomaly was detected so there is no hypothesis to test"
        raise NoAnomalyError(msg)
    if table is None:
        table = residual_region_table(data.X, plan, ctx.a, ctx.b_dir, cfg.tau)
    count_regions = COUNTING_METHODS[counting]
    S = [count_regions(table.row(u), K) for u in range(table.num_models)]  # noqa: N806

    pieces = []
    for b in range(table.num_models):
        z2 = region_z2(b, table, anomalies)
        if not z2:
            continue
        piece = intersect(region_z1(b, S, K, symmetric=symmetric), z2)
        if piece:
            logger.debug(f"model {b} contributes {len(piece):,} interval(s)")
            pieces.append(piece)
    region = union_all(pieces)
    if not region:
        msg = "the truncation region is empty"
        raise RegionInconsistencyError(msg)
    if not contains(region, ctx.z_obs, tol=1e-8 * (1.0 + abs(ctx.z_obs))):
        msg = (
            f"the truncation region {region!r} does not contain the observed statistic "
            f"{ctx.z_obs!r}"
        )
        raise RegionInconsistencyError(msg)
    return region


class DivideConquerRegionFinder(BaseRegionFinder):
    r"""Implement the exact truncation region finder based on the
    divide-and-conquer construction.

    Args:
        counting: The method used to compute the count regions,
            ``"dp"`` (dynamic programming) or ``"sweep"``.
        symmetric: If ``True``, the optimality region ignores the order
            of the models.

    Example usage:

    ```pycon

    >>> from ransacsi.truncation import DivideConquerRegionFinder
    >>> DivideConquerRegionFinder(counting="sweep")
    DivideConquerRegionFinder(counting=sweep, symmetric=False)

    ```
    """

    def __init__(self, counting: str = "dp", symmetric: bool = False) -> None:
        if counting not in COUNTING_METHODS:
            msg = (
                f"Incorrect counting method: {counting}. "
                f"Valid values are: {sorted(COUNTING_METHODS)}"
            )
            raise InvalidInputError(msg)
        self._counting = counting
        self._symmetric = bool(symmetric)

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__qualname__}(counting={self._counting}, "
            f"symmetric={self._symmetric})"
        )

    def find(
        self,
        data: Dataset,
        cfg: RansacConfig,
        plan: SubsetPlan,
        anomalies: np.ndarray,
        ctx: TestContext,
        table: ResidualRegionTable | None = None,
    ) -> IntervalSet:
        return ctrl_ransac_region(
            data,
            cfg,
            plan,
            anomalies,
            ctx,
            counting=self._counting,
            symmetric=self._symmetric,
            table=table,
        )
