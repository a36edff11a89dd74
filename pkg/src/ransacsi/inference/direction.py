r"""Implement the test direction of an anomaly and the parametrization of
the response along a line."""

from __future__ import annotations

__all__ = ["TestContext", "build_context", "line_params", "test_direction"]

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ransacsi.exceptions import DegenerateDirectionError, InvalidInputError, NoInliersError
from ransacsi.linreg import pseudo_inverse

if TYPE_CHECKING:
    from ransacsi.linreg import Dataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TestContext:
    r"""Define the quantities needed to test one anomaly.

    The response is restricted to the line ``Y(z) = a + b_dir * z``,
    on which the test statistic ``eta^T Y(z)`` equals ``z``.

    Args:
        eta: The test direction of shape ``(n,)``.
        a: The line anchor of shape ``(n,)``.
        b_dir: The line direction of shape ``(n,)``.
        z_obs: The observed test statistic.
        var: The variance of the test statistic ``eta^T Sigma eta``.
        index: The index of the tested anomaly, if known.
    """

    __test__ = False  # not a pytest class

    eta: np.ndarray
    a: np.ndarray
    b_dir: np.ndarray
    z_obs: float
    var: float
    index: int | None = None

    @property
    def sd(self) -> float:
        r"""The standard deviation of the test statistic."""
        return math.sqrt(self.var)

    def response(self, z: float) -> np.ndarray:
        r"""Return the response ``a + b_dir * z`` on the line."""
        return self.a + self.b_dir * z


def test_direction(X: np.ndarray, anomalies: np.ndarray, index: int) -> np.ndarray:  # noqa: N803
    r"""Compute the direction of the test statistic of an anomaly.

    The statistic ``eta^T Y`` is the difference between the response
    of the anomaly and its prediction by the least-squares fit on the
    inliers, i.e. the points that are not anomalies.

    Args:
        X: The feature matrix of shape ``(n, p)``.
        anomalies: The indices of the detected anomalies.
        index: The index of the tested anomaly.

    Returns:
        The test direction ``eta`` of shape ``(n,)``.

    Raises:
        NoInliersError: if every point is an anomaly.
        InvalidInputError: if ``index`` is not an anomaly.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.inference import test_direction
    >>> test_direction(np.ones((2, 1)), anomalies=np.array([1]), index=1)
    array([-1.,  1.])

    ```
    """
    n = X.shape[0]
    anomalies = np.asarray(anomalies, dtype=np.int64)
    if index not in set(anomalies.tolist()):
        msg = f"index {index} is not a detected anomaly"
        raise InvalidInputError(msg)
    inliers = np.setdiff1d(np.arange(n), anomalies)
    if inliers.size == 0:
        msg = "every point is an anomaly so there is no inlier to fit against"
        raise NoInliersError(msg)
    eta = np.zeros(n)
    eta[index] = 1.0
    eta[inliers] -= X[index] @ pseudo_inverse(X[inliers])
    return eta


test_direction.__test__ = False  # not a pytest test


def line_params(
    Y_obs: np.ndarray,  # noqa: N803
    Sigma: np.ndarray | float,  # noqa: N803
    eta: np.ndarray,
    index: int | None = None,
) -> TestContext:
    r"""Parametrize the response along the line through ``Y_obs`` that
    keeps the nuisance component fixed.

    Args:
        Y_obs: The observed response of shape ``(n,)``.
        Sigma: The noise covariance. A float ``s`` means ``s * I``.
        eta: The test direction of shape ``(n,)``.
        index: The index of the tested anomaly, if any.

    Returns:
        The test context.

    Raises:
        DegenerateDirectionError: if ``eta^T Sigma eta <= 0``.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.inference import line_params
    >>> ctx = line_params(np.array([1.0, 3.0]), 1.0, np.array([-1.0, 1.0]))
    >>> ctx.var, ctx.z_obs
    (2.0, 2.0)
    >>> ctx.a, ctx.b_dir
    (array([2., 2.]), array([-0.5,  0.5]))

    ```
    """
    Y_obs = np.asarray(Y_obs, dtype=np.float64)
    eta = np.asarray(eta, dtype=np.float64)
    sigma_eta = Sigma * eta if np.isscalar(Sigma) else np.asarray(Sigma) @ eta
    var = float(eta @ sigma_eta)
    if not (math.isfinite(var) and var > 0.0):
        msg = f"the variance of the test statistic is not positive (received: {var})"
        raise DegenerateDirectionError(msg)
    b_dir = sigma_eta / var
    z_obs = float(eta @ Y_obs)
    a = Y_obs - b_dir * z_obs
    return TestContext(eta=eta, a=a, b_dir=b_dir, z_obs=z_obs, var=var, index=index)


def build_context(data: Dataset, anomalies: np.ndarray, index: int) -> TestContext:
    r"""Build the test context of an anomaly of a dataset.

    Args:
        data: The dataset. Its covariance must be known.
        anomalies: The indices of the detected anomalies.
        index: The index of the tested anomaly.

    Returns:
        The test context.
    """
    if data.Sigma is None:
        msg = "the noise covariance is unknown; estimate it first"
        raise InvalidInputError(msg)
    eta = test_direction(data.X, anomalies, index)
    return line_params(data.Y, data.Sigma, eta, index=index)
