r"""Implement the line-search truncation region finder.

The line is walked from ``z_min`` to ``z_max``. At each pivot, the
finder conditions on the whole RANSAC trajectory (the classification of
every point by every model) to obtain a cell, keeps the cell if its
anomaly set is the observed one, and jumps past the cell.
"""

from __future__ import annotations

__all__ = [
    "DEFAULT_MAX_STEPS",
    "DEFAULT_RANGE_SD",
    "LineSearchRegionFinder",
    "default_search_range",
    "line_search_region",
    "selected_anomalies",
]

import logging
from typing import TYPE_CHECKING

import numpy as np

from ransacsi.exceptions import InvalidInputError, TruncatedSearchError
from ransacsi.intervals import union_all
from ransacsi.truncation.base import BaseRegionFinder
from ransacsi.truncation.tables import residual_region_table, trajectory_cell

if TYPE_CHECKING:
    from ransacsi.inference.direction import TestContext
    from ransacsi.intervals import IntervalSet
    from ransacsi.linreg import Dataset
    from ransacsi.ransac import RansacConfig, SubsetPlan
    from ransacsi.truncation.tables import ResidualRegionTable

logger = logging.getLogger(__name__)

DEFAULT_RANGE_SD = 20.0
DEFAULT_MAX_STEPS = 100_000
STEP_RTOL = 1e-9


def default_search_range(
    ctx: TestContext, range_sd: float = DEFAULT_RANGE_SD
) -> tuple[float, float]:
    r"""Return the default search range ``[z_min, z_max]`` of a test
    statistic.

    The range spans ``range_sd`` standard deviations on both sides of
    zero, extended to contain the observed statistic.

    Args:
        ctx: The test context.
        range_sd: The half-width of the range in standard deviations.

    Returns:
        The tuple ``(z_min, z_max)``.
    """
    half = range_sd * ctx.sd
    return -half + min(0.0, ctx.z_obs), half + max(0.0, ctx.z_obs)


def selected_anomalies(mask: np.ndarray) -> np.ndarray:
    r"""Return the anomalies selected by RANSAC from an inlier mask.

    Args:
        mask: The ``(B, n)`` boolean inlier mask of every model.

    Returns:
        The indices of the points that are not inliers of the first
        model with the largest consensus set.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.truncation import selected_anomalies
    >>> selected_anomalies(np.array([[True, False, True], [False, True, True]]))
    array([1])

    ```
    """
    best = int(np.argmax(mask.sum(axis=1)))
    return np.flatnonzero(~mask[best])


def line_search_region(
    data: Dataset,
    cfg: RansacConfig,
    plan: SubsetPlan,
    anomalies: np.ndarray,
    ctx: TestContext,
    z_min: float | None = None,
    z_max: float | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    table: ResidualRegionTable | None = None,
) -> IntervalSet:
    r"""Compute the truncation region by walking along the line.

    Args:
        data: The dataset.
        cfg: The RANSAC configuration.
        plan: The subset plan used by the observed detection.
        anomalies: The indices of the observed anomalies.
        ctx: The test context of the tested anomaly.
        z_min: The start of the search. ``None`` means the default
            range.
        z_max: The end of the search. ``None`` means the default
            range.
        max_steps: The maximum number of visited cells.
        table: The precomputed inlier region table, if any.

    Returns:
        The truncation region clipped to ``[z_min, z_max]``.

    Raises:
        InvalidInputError: if ``z_obs`` is not in ``(z_min, z_max)``.
        TruncatedSearchError: if more than ``max_steps`` cells are
            visited. The region found so far is attached to the error.
    """
    default_min, default_max = default_search_range(ctx)
    z_min = default_min if z_min is None else float(z_min)
    z_max = default_max if z_max is None else float(z_max)
    if not z_min < ctx.z_obs < z_max:
        msg = f"z_obs ({ctx.z_obs}) must be in the search range ({z_min}, {z_max})"
        raise InvalidInputError(msg)
    if table is None:
        table = residual_region_table(data.X, plan, ctx.a, ctx.b_dir, cfg.tau)
    target = np.unique(np.asarray(anomalies, dtype=np.int64))

    kept = []
    z = z_min
    steps = 0
    while z <= z_max:
        if steps >= max_steps:
            partial = union_all(kept).clip(z_min, z_max)
            msg = f"the line search visited more than {max_steps:,} cells before z={z}"
            raise TruncatedSearchError(msg, partial_region=partial)
        steps += 1
        cell, mask = trajectory_cell(table, z)
        if cell and np.array_equal(selected_anomalies(mask), target):
            kept.append(cell)
        component = cell.component_containing(z)
        end = z if component is None else component.hi
        z = end + STEP_RTOL * (1.0 + abs(end))
    logger.debug(f"the line search visited {steps:,} cells")
    return union_all(kept).clip(z_min, z_max)


class LineSearchRegionFinder(BaseRegionFinder):
    r"""Implement the line-search truncation region finder.

    Args:
        range_sd: The half-width of the search range in standard
            deviations of the test statistic.
        max_steps: The maximum number of visited cells.

    Example usage:

    ```pycon

    >>> from ransacsi.truncation import LineSearchRegionFinder
    >>> LineSearchRegionFinder()
    LineSearchRegionFinder(range_sd=20.0, max_steps=100000)

    ```
    """

    def __init__(
        self, range_sd: float = DEFAULT_RANGE_SD, max_steps: int = DEFAULT_MAX_STEPS
    ) -> None:
        if range_sd <= 0:
            msg = f"range_sd must be positive (received: {range_sd})"
            raise InvalidInputError(msg)
        self._range_sd = float(range_sd)
        self._max_steps = int(max_steps)

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__qualname__}(range_sd={self._range_sd}, "
            f"max_steps={self._max_steps})"
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
        z_min, z_max = default_search_range(ctx, self._range_sd)
        return line_search_region(
            data,
            cfg,
            plan,
            anomalies,
            ctx,
            z_min=z_min,
            z_max=z_max,
            max_steps=self._max_steps,
            table=table,
        )
