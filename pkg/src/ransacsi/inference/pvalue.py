r"""Implement the naive, Bonferroni and selective p-values of the test
statistic.

The selective p-value is the two-sided tail probability of a zero-mean
normal distribution truncated to a region. The Gaussian masses are
accumulated in log-space so regions far in the tails do not underflow.
"""

from __future__ import annotations

__all__ = [
    "bonferroni_p_value",
    "log_gaussian_mass",
    "log_interval_mass",
    "naive_p_value",
    "selective_p_value",
]

import logging
import math

from scipy.special import log_ndtr, logsumexp

from ransacsi.exceptions import (
    DegenerateDirectionError,
    NumericMassError,
    RegionInconsistencyError,
)
from ransacsi.intervals import INF, IntervalSet, contains, intersect

logger = logging.getLogger(__name__)

CONTAINS_RTOL = 1e-8


def _log_sf(x: float) -> float:
    return float(log_ndtr(-x))


def _log_mass_positive(lo: float, hi: float) -> float:
    # 0 <= lo < hi: sf(lo) - sf(hi) = sf(lo) * (1 - sf(hi) / sf(lo))
    log_lo = _log_sf(lo)
    delta = _log_sf(hi) - log_lo
    if delta >= 0.0:
        return -INF
    return log_lo + math.log(-math.expm1(delta))


def log_interval_mass(lo: float, hi: float) -> float:
    r"""Compute the log of the standard normal probability of ``[lo,
    hi]``.

    Args:
        lo: The lower bound, possibly ``-inf``.
        hi: The upper bound, possibly ``inf``.

    Returns:
        The log-probability. It is ``-inf`` if the interval is empty.

    Example usage:

    ```pycon

    >>> from ransacsi.inference import log_interval_mass
    >>> round(log_interval_mass(0.0, float("inf")), 6)
    -0.693147
    >>> round(log_interval_mass(40.0, 41.0), 2)
    -804.61

    ```
    """
    if lo >= hi:
        return -INF
    if lo >= 0.0:
        return _log_mass_positive(lo, hi)
    if hi <= 0.0:
        return _log_mass_positive(-hi, -lo)
    return float(logsumexp([_log_mass_positive(0.0, hi), _log_mass_positive(0.0, -lo)]))


def log_gaussian_mass(region: IntervalSet, sd: float = 1.0) -> float:
    r"""Compute the log of the probability of a region under
    ``N(0, sd^2)``.

    Args:
        region: The region.
        sd: The standard deviation.

    Returns:
        The log-probability. It is ``-inf`` if the region is empty.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet
    >>> from ransacsi.inference import log_gaussian_mass
    >>> round(log_gaussian_mass(IntervalSet.real_line()), 12)
    0.0

    ```
    """
    if not region:
        return -INF
    terms = [log_interval_mass(lo / sd, hi / sd) for lo, hi in region]
    return float(logsumexp(terms))


def _check_variance(var: float) -> float:
    if not (math.isfinite(var) and var > 0.0):
        msg = f"the variance of the test statistic must be positive (received: {var})"
        raise DegenerateDirectionError(msg)
    return math.sqrt(var)


def selective_p_value(z_obs: float, var: float, region: IntervalSet) -> float:
    r"""Compute the selective p-value of a test statistic truncated to a
    region.

    The p-value is ``P(|Z| >= |z_obs| and Z in region) / P(Z in
    region)`` with ``Z ~ N(0, var)``.

    Args:
        z_obs: The observed test statistic.
        var: The variance of the test statistic.
        region: The truncation region. It must contain ``z_obs``.

    Returns:
        The p-value in ``[0, 1]``.

    Raises:
        RegionInconsistencyError: if ``z_obs`` is not in the region.
        NumericMassError: if the probability of the region underflows.
        DegenerateDirectionError: if ``var <= 0``.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet
    >>> from ransacsi.inference import selective_p_value
    >>> round(selective_p_value(1.0, 1.0, IntervalSet([(0.0, float("inf"))])), 5)
    0.31731
    >>> selective_p_value(1.0, 1.0, IntervalSet([(-float("inf"), -1.0), (1.0, float("inf"))]))
    1.0

    ```
    """
    sd = _check_variance(var)
    z_obs = float(z_obs)
    if not contains(region, z_obs, tol=CONTAINS_RTOL * (1.0 + abs(z_obs))):
        msg = f"the observed statistic {z_obs!r} is not in the truncation region {region!r}"
        raise RegionInconsistencyError(msg)
    log_den = log_gaussian_mass(region, sd)
    if log_den == -INF:
        msg = (
            f"the Gaussian mass of the truncation region underflows "
            f"(region={region!r}, var={var!r})"
        )
        raise NumericMassError(msg)
    z_abs = abs(z_obs)
    tails = IntervalSet([(-INF, -z_abs), (z_abs, INF)])
    log_num = log_gaussian_mass(intersect(region, tails), sd)
    return min(1.0, max(0.0, math.exp(log_num - log_den)))


def naive_p_value(z_obs: float, var: float) -> float:
    r"""Compute the naive two-sided p-value ``2 * (1 - Phi(|z_obs| /
    sd))``.

    Args:
        z_obs: The observed test statistic.
        var: The variance of the test statistic.

    Returns:
        The p-value in ``[0, 1]``.

    Example usage:

    ```pycon

    >>> from ransacsi.inference import naive_p_value
    >>> round(naive_p_value(0.0, 1.0), 12)
    1.0
    >>> round(naive_p_value(2.0, 4.0), 4)
    0.3173

    ```
    """
    sd = _check_variance(var)
    return min(1.0, math.exp(math.log(2.0) + _log_sf(abs(z_obs) / sd)))


def bonferroni_p_value(p_naive: float, n: int) -> float:
    r"""Compute the Bonferroni-corrected p-value ``min(1, 2^n *
    p_naive)``.

    The correction factor is the number of possible anomaly sets of
    ``n`` points. The product is computed in log-space.

    Args:
        p_naive: The naive p-value.
        n: The number of points.

    Returns:
        The corrected p-value.

    Example usage:

    ```pycon

    >>> from ransacsi.inference import bonferroni_p_value
    >>> round(bonferroni_p_value(1e-9, 10), 12)
    1.024e-06
    >>> bonferroni_p_value(0.5, 3)
    1.0
    >>> bonferroni_p_value(0.0, 500)
    0.0

    ```
    """
    if p_naive <= 0.0:
        return 0.0
    log_p = math.log(p_naive) + n * math.log(2.0)
    if log_p >= 0.0:
        return 1.0
    return math.exp(log_p)
