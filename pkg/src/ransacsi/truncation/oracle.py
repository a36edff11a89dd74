r"""Implement a brute-force oracle of the truncation region, which re-runs
the detection on a grid of the line parameter."""

from __future__ import annotations

__all__ = ["brute_force_region_oracle"]

import logging
from typing import TYPE_CHECKING

import numpy as np

from ransacsi.exceptions import InvalidInputError
from ransacsi.ransac import run_ransac

if TYPE_CHECKING:
    from ransacsi.inference.direction import TestContext
    from ransacsi.linreg import Dataset
    from ransacsi.ransac import RansacConfig, SubsetPlan

logger = logging.getLogger(__name__)


def brute_force_region_oracle(
    data: Dataset,
    cfg: RansacConfig,
    plan: SubsetPlan,
    anomalies: np.ndarray,
    ctx: TestContext,
    z_min: float,
    z_max: float,
    grid_points: int = 1000,
) -> list[tuple[float, bool]]:
    r"""Check on a grid whether the detection on ``Y(z)`` selects the
    observed anomalies.

    Args:
        data: The dataset.
        cfg: The RANSAC configuration.
        plan: The subset plan used by the observed detection.
        anomalies: The indices of the observed anomalies.
        ctx: The test context of the tested anomaly.
        z_min: The first grid point.
        z_max: The last grid point.
        grid_points: The number of grid points.

    Returns:
        The list of ``(z, selected)`` pairs where ``selected`` is
            ``True`` iff the anomaly set at ``z`` is the observed one.

    Raises:
        InvalidInputError: if ``grid_points < 2``.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.inference import build_context
    >>> from ransacsi.linreg import Dataset
    >>> from ransacsi.ransac import RansacConfig, SubsetPlan
    >>> from ransacsi.truncation import brute_force_region_oracle
    >>> data = Dataset(X=np.ones((2, 1)), Y=np.array([0.0, 10.0]), Sigma=1.0)
    >>> plan = SubsetPlan(subsets=np.array([[0], [1]]), num_samples=2)
    >>> ctx = build_context(data, anomalies=np.array([1]), index=1)
    >>> brute_force_region_oracle(
    ...     data, RansacConfig(tau=1.0), plan, np.array([1]), ctx, -2.0, 2.0, grid_points=5
    ... )
    [(-2.0, True), (-1.0, False), (0.0, False), (1.0, False), (2.0, True)]

    ```
    """
    if grid_points < 2:
        msg = f"grid_points must be at least 2 (received: {grid_points})"
        raise InvalidInputError(msg)
    target = np.unique(np.asarray(anomalies, dtype=np.int64))
    out = []
    for z in np.linspace(z_min, z_max, grid_points).tolist():
        result = run_ransac(data.X, ctx.response(z), plan, cfg.tau)
        out.append((z, bool(np.array_equal(result.anomalies, target))))
    return out
