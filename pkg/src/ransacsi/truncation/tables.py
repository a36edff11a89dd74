r"""Implement the tables of regions of the line parameter ``z`` shared by
the truncation region finders.

``R[u][i]`` is the region where the point ``i`` is an inlier of the
model ``u``. ``S[u][j][k]`` is the region where more than ``k`` of the
first ``j`` points are outliers of the model ``u``; ``k = -1`` is the
whole real line.
"""

from __future__ import annotations

__all__ = [
    "CountRegionTable",
    "ResidualRegionTable",
    "dp_count_regions",
    "region_z1",
    "region_z2",
    "residual_region_table",
    "sweep_count_regions",
    "trajectory_cell",
]

import logging
import math
from typing import TYPE_CHECKING

import numpy as np

from ransacsi.exceptions import InvalidInputError, NoAnomalyError
from ransacsi.intervals import (
    INF,
    IntervalSet,
    QuadCoeffs,
    complement,
    contains,
    intersect,
    intersect_all,
    solve_quadratic_leq,
    subtract,
    union,
)
from ransacsi.linreg import residual_line_coeffs

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ransacsi.linreg import LinearResidualCoeffs
    from ransacsi.ransac import SubsetPlan

logger = logging.getLogger(__name__)


class ResidualRegionTable:
    r"""Store the inlier regions ``R[u][i]`` of every model ``u`` and
    point ``i``.

    Args:
        regions: The regions, one row of ``n`` sets per model.
        coeffs: The residual coefficients of each model along the line.
    """

    def __init__(
        self,
        regions: Sequence[Sequence[IntervalSet]],
        coeffs: Sequence[LinearResidualCoeffs] = (),
    ) -> None:
        self._regions = tuple(tuple(row) for row in regions)
        self._coeffs = tuple(coeffs)
        self._complements: dict[tuple[int, int], IntervalSet] = {}

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__qualname__}(num_models={self.num_models:,}, "
            f"num_samples={self.num_samples:,})"
        )

    @property
    def num_models(self) -> int:
        return len(self._regions)

    @property
    def num_samples(self) -> int:
        return len(self._regions[0]) if self._regions else 0

    @property
    def coeffs(self) -> tuple[LinearResidualCoeffs, ...]:
        return self._coeffs

    def row(self, u: int) -> tuple[IntervalSet, ...]:
        r"""Return the regions of all the points for the model ``u``."""
        return self._regions[u]

    def get(self, u: int, i: int) -> IntervalSet:
        r"""Return the region where the point ``i`` is an inlier of the
        model ``u``."""
        return self._regions[u][i]

    def get_complement(self, u: int, i: int) -> IntervalSet:
        r"""Return the region where the point ``i`` is an outlier of the
        model ``u``."""
        key = (u, i)
        if key not in self._complements:
            self._complements[key] = complement(self._regions[u][i])
        return self._complements[key]

    def classify(self, z: float) -> np.ndarray:
        r"""Return the ``(B, n)`` boolean inlier mask at ``z``."""
        return np.array([[contains(r, z) for r in row] for row in self._regions], dtype=bool)


def residual_region_table(
    X: np.ndarray,  # noqa: N803
    plan: SubsetPlan,
    a: np.ndarray,
    b_dir: np.ndarray,
    tau: float,
) -> ResidualRegionTable:
    r"""Compute the inlier region of every point under every model along
    the line ``Y(z) = a + b_dir * z``.

    The residual of the point ``i`` under the model ``u`` is
    ``c_i + d_i * z`` so the point is an inlier iff
    ``(c_i + d_i * z)^2 <= tau``.

    Args:
        X: The feature matrix of shape ``(n, p)``.
        plan: The subset plan.
        a: The line anchor.
        b_dir: The line direction.
        tau: The threshold on the squared residual.

    Returns:
        The table of regions.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.ransac import SubsetPlan
    >>> from ransacsi.truncation import residual_region_table
    >>> plan = SubsetPlan(subsets=np.array([[0]]), num_samples=2)
    >>> table = residual_region_table(
    ...     np.ones((2, 1)), plan, a=np.array([2.0, 2.0]), b_dir=np.array([-0.5, 0.5]), tau=4.0
    ... )
    >>> table.get(0, 0), table.get(0, 1)
    (IntervalSet([-inf, inf]), IntervalSet([-2.0, 2.0]))

    ```
    """
    regions = []
    coeffs = []
    for subset in plan:
        line = residual_line_coeffs(X, subset, a, b_dir)
        coeffs.append(line)
        regions.append(
            [
                solve_quadratic_leq(QuadCoeffs(w=c * c - tau, r=2.0 * c * d, o=d * d))
                for c, d in zip(line.c.tolist(), line.d.tolist())
            ]
        )
    return ResidualRegionTable(regions, coeffs)


class CountRegionTable:
    r"""Store the count regions ``S[j][k]`` of one model.

    ``S[j][k]`` is the region where more than ``k`` of the first ``j``
    points are outliers, for ``k`` in ``-1..max_count``. Only some rows
    ``j`` may be stored; the last row ``j = n`` is always stored.

    Args:
        rows: The stored rows, indexed by ``j``. Each row is the sequence
            ``S[j][-1], S[j][0], ..., S[j][max_count]``.
        max_count: The largest count ``K`` of the table.
    """

    def __init__(self, rows: dict[int, Sequence[IntervalSet]], max_count: int) -> None:
        self._rows = {j: tuple(row) for j, row in rows.items()}
        self._max_count = max_count
        self._num_samples = max(self._rows)

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__qualname__}(num_samples={self._num_samples:,}, "
            f"max_count={self._max_count:,}, num_rows={len(self._rows):,})"
        )

    @property
    def max_count(self) -> int:
        return self._max_count

    @property
    def num_samples(self) -> int:
        return self._num_samples

    def get(self, j: int, k: int) -> IntervalSet:
        r"""Return ``S[j][k]``.

        Raises:
            InvalidInputError: if the row ``j`` is not stored or ``k`` is
                out of range.
        """
        if not -1 <= k <= self._max_count:
            msg = f"k must be in [-1, {self._max_count}] (received: {k})"
            raise InvalidInputError(msg)
        if j not in self._rows:
            msg = f"the row j={j} is not stored in the table"
            raise InvalidInputError(msg)
        return self._rows[j][k + 1]

    def last(self, k: int) -> IntervalSet:
        r"""Return ``S[n][k]``, the region where the model has more than
        ``k`` outliers."""
        return self.get(self._num_samples, k)


def _check_max_count(K: int) -> None:  # noqa: N803
    if K < 0:
        msg = f"K must be non-negative (received: {K})"
        raise InvalidInputError(msg)


def dp_count_regions(
    R_row: Sequence[IntervalSet],  # noqa: N803
    K: int,  # noqa: N803
    keep_all_rows: bool = False,
) -> CountRegionTable:
    r"""Compute the count regions of one model by dynamic programming.

    The recursion is ``S[j][k] = (R_j & S[j-1][k]) | (~R_j & S[j-1][k-1])``
    with ``S[j][-1] = R`` and ``S[j][k] = {}`` when ``j <= k``.

    Args:
        R_row: The inlier regions of the ``n`` points for the model.
        K: The largest count to compute.
        keep_all_rows: If ``True``, all the rows ``j`` are stored,
            otherwise only the last row ``j = n``.

    Returns:
        The count region table.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet
    >>> from ransacsi.truncation import dp_count_regions
    >>> table = dp_count_regions([IntervalSet([(0, 1)]), IntervalSet([(2, 3)])], K=1)
    >>> table.last(1)
    IntervalSet([-inf, 0.0], [1.0, 2.0], [3.0, inf])

    ```
    """
    _check_max_count(K)
    real, empty = IntervalSet.real_line(), IntervalSet.empty()
    prev = [real] + [empty] * (K + 1)
    rows = {0: prev} if keep_all_rows else {}
    for j, region in enumerate(R_row, start=1):
        outside = complement(region)
        cur = [real]
        for k in range(K + 1):
            if j <= k:
                cur.append(empty)
            else:
                cur.append(union(intersect(region, prev[k + 1]), intersect(outside, prev[k])))
        if keep_all_rows:
            rows[j] = cur
        prev = cur
    rows[len(R_row)] = prev
    return CountRegionTable(rows, max_count=K)


def _segment_midpoint(lo: float, hi: float) -> float:
    if math.isinf(lo) and math.isinf(hi):
        return 0.0
    if math.isinf(lo):
        return hi - 1.0
    if math.isinf(hi):
        return lo + 1.0
    return 0.5 * (lo + hi)


def sweep_count_regions(R_row: Sequence[IntervalSet], K: int) -> CountRegionTable:  # noqa: N803
    r"""Compute the last row of the count regions of one model by
    sweeping the breakpoints of the inlier regions.

    Between two consecutive breakpoints the classification of every
    point is constant, so the number of outliers is counted once per
    elementary segment.

    Args:
        R_row: The inlier regions of the ``n`` points for the model.
        K: The largest count to compute.

    Returns:
        The count region table with only the row ``j = n``.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet
    >>> from ransacsi.truncation import sweep_count_regions
    >>> table = sweep_count_regions([IntervalSet([(0, 1)]), IntervalSet([(2, 3)])], K=1)
    >>> table.last(1)
    IntervalSet([-inf, 0.0], [1.0, 2.0], [3.0, inf])

    ```
    """
    _check_max_count(K)
    points = sorted(
        {e for region in R_row for interval in region for e in interval if math.isfinite(e)}
    )
    edges = [-INF, *points, INF]
    segments = list(zip(edges[:-1], edges[1:]))
    mids = np.array([_segment_midpoint(lo, hi) for lo, hi in segments])
    counts = np.zeros(mids.shape[0], dtype=np.int64)
    for region in R_row:
        inside = np.zeros(mids.shape[0], dtype=bool)
        for lo, hi in region:
            inside |= (mids >= lo) & (mids <= hi)
        counts += ~inside
    row = [
        IntervalSet([seg for seg, count in zip(segments, counts.tolist()) if count > k])
        for k in range(-1, K + 1)
    ]
    return CountRegionTable({len(R_row): row}, max_count=K)


def region_z1(
    b: int,
    S: Sequence[CountRegionTable],  # noqa: N803
    K: int,  # noqa: N803
    symmetric: bool = False,
) -> IntervalSet:
    r"""Compute the region where the model ``b`` is the selected model and
    has exactly ``K`` outliers.

    The selected model is the first model with the largest consensus
    set, so every earlier model must have more than ``K`` outliers and
    every later model at least ``K`` outliers. With ``symmetric=True``
    every other model must have at least ``K`` outliers, which is the
    same region when the optimal model is unique.

    Args:
        b: The index of the model.
        S: The count region tables of all the models.
        K: The number of detected anomalies.
        symmetric: If ``True``, ignore the order of the models.

    Returns:
        The region.

    Raises:
        NoAnomalyError: if ``K = 0``.
    """
    if K < 1:
        msg = "no anomaly was detected so there is no hypothesis to test"
        raise NoAnomalyError(msg)
    out = subtract(S[b].last(K - 1), S[b].last(K))
    for u, table in enumerate(S):
        if u == b or not out:
            continue
        out = intersect(out, table.last(K if u < b and not symmetric else K - 1))
    return out


def region_z2(b: int, R: ResidualRegionTable, anomalies: np.ndarray) -> IntervalSet:  # noqa: N803
    r"""Compute the region where the inliers of the model ``b`` are
    exactly the points that are not anomalies.

    Args:
        b: The index of the model.
        R: The inlier region table.
        anomalies: The indices of the observed anomalies.

    Returns:
        The region.
    """
    is_anomaly = np.zeros(R.num_samples, dtype=bool)
    is_anomaly[np.asarray(anomalies, dtype=np.int64)] = True
    return intersect_all(
        R.get_complement(b, i) if flag else R.get(b, i) for i, flag in enumerate(is_anomaly)
    )


def trajectory_cell(R: ResidualRegionTable, z: float) -> tuple[IntervalSet, np.ndarray]:  # noqa: N803
    r"""Compute the region where every model classifies every point as it
    does at ``z``.

    Args:
        R: The inlier region table.
        z: The value of the line parameter.

    Returns:
        The region and the ``(B, n)`` boolean inlier mask at ``z``.
    """
    mask = R.classify(z)
    sets = (
        R.get(u, i) if mask[u, i] else R.get_complement(u, i)
        for u in range(R.num_models)
        for i in range(R.num_samples)
    )
    return intersect_all(sets), mask
