r"""Implement the generation of synthetic linear regression datasets with
planted anomalies, and the estimation of the noise variance."""

from __future__ import annotations

__all__ = [
    "COVARIANCE_KINDS",
    "NOISE_KINDS",
    "SyntheticSpec",
    "covariance_matrix",
    "estimate_noise_variance",
    "estimate_sigma",
    "gen_synthetic",
    "noise_sample",
]

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np
from scipy.linalg import cholesky, toeplitz
from scipy.stats import skewnorm

from ransacsi.exceptions import InvalidInputError
from ransacsi.linreg import Dataset, fit_least_squares
from ransacsi.utils.random import create_rng

logger = logging.getLogger(__name__)

COVARIANCE_KINDS = ("independence", "correlation", "custom")
NOISE_KINDS = ("normal", "laplace", "skew_normal", "student_t")

SKEW_NORMAL_SHAPE = 10.0
STUDENT_T_DF = 20


@dataclass(frozen=True, eq=False)
class SyntheticSpec:
    r"""Define a synthetic dataset ``Y = X beta_star + eps`` where
    ``anomaly_count`` responses are shifted by ``delta``.

    Args:
        n: The number of points.
        p: The number of features.
        beta_star: The true coefficients. ``None`` means the cyclic
            vector ``(1, 2, 1, 2, ...)``.
        covariance: The noise covariance structure, ``"independence"``
            (identity), ``"correlation"`` (``rho^|i-j|``) or
            ``"custom"``.
        rho: The correlation coefficient of ``"correlation"``.
        custom_covariance: The covariance matrix of ``"custom"``.
        noise: The noise family, ``"normal"``, ``"laplace"``,
            ``"skew_normal"`` or ``"student_t"``. All the families are
            standardized to unit variance.
        anomaly_count: The number of planted anomalies. ``None`` means
            ``n // 5``.
        delta: The shift of the planted anomalies.
        seed: The seed of the random generator.

    Raises:
        InvalidInputError: if a value is out of range.

    Example usage:

    ```pycon

    >>> from ransacsi.experiments import SyntheticSpec
    >>> spec = SyntheticSpec(n=10, p=3)
    >>> spec.coefficients()
    array([1., 2., 1.])
    >>> spec.num_anomalies
    2

    ```
    """

    n: int = 100
    p: int = 5
    beta_star: tuple[float, ...] | None = None
    covariance: str = "independence"
    rho: float = 0.5
    custom_covariance: np.ndarray | None = field(default=None, repr=False)
    noise: str = "normal"
    anomaly_count: int | None = None
    delta: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1 or self.p < 1:
            msg = f"n and p must be positive (received: n={self.n}, p={self.p})"
            raise InvalidInputError(msg)
        if self.beta_star is not None and len(self.beta_star) != self.p:
            msg = f"beta_star must have {self.p} values (received: {len(self.beta_star)})"
            raise InvalidInputError(msg)
        if self.covariance not in COVARIANCE_KINDS:
            msg = (
                f"Incorrect covariance: {self.covariance}. "
                f"Valid values are: {COVARIANCE_KINDS}"
            )
            raise InvalidInputError(msg)
        if self.covariance == "custom" and self.custom_covariance is None:
            msg = "custom_covariance is required when covariance='custom'"
            raise InvalidInputError(msg)
        if self.noise not in NOISE_KINDS:
            msg = f"Incorrect noise: {self.noise}. Valid values are: {NOISE_KINDS}"
            raise InvalidInputError(msg)
        if not 0 <= self.num_anomalies <= self.n:
            msg = f"anomaly_count must be in [0, {self.n}] (received: {self.num_anomalies})"
            raise InvalidInputError(msg)
        if not self.delta >= 0:
            msg = f"delta must be non-negative (received: {self.delta})"
            raise InvalidInputError(msg)

    @property
    def num_anomalies(self) -> int:
        return self.n // 5 if self.anomaly_count is None else self.anomaly_count

    def coefficients(self) -> np.ndarray:
        r"""Return the true coefficients ``beta_star``."""
        if self.beta_star is not None:
            return np.asarray(self.beta_star, dtype=np.float64)
        return np.resize(np.array([1.0, 2.0]), self.p)

    def replace(self, **changes: Any) -> SyntheticSpec:
        r"""Return a copy of the settings with some fields
        changed."""
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "p": self.p,
            "beta_star": None if self.beta_star is None else list(self.beta_star),
            "covariance": self.covariance,
            "rho": self.rho,
            "custom_covariance": (
                None if self.custom_covariance is None else np.asarray(self.custom_covariance).tolist()
            ),
            "noise": self.noise,
            "anomaly_count": self.anomaly_count,
            "delta": self.delta,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, config: dict[str, Any]) -> SyntheticSpec:
        config = dict(config)
        if config.get("beta_star") is not None:
            config["beta_star"] = tuple(config["beta_star"])
        if config.get("custom_covariance") is not None:
            config["custom_covariance"] = np.asarray(config["custom_covariance"], dtype=np.float64)
        return cls(**config)


def covariance_matrix(spec: SyntheticSpec) -> np.ndarray:
    r"""Materialize the noise covariance matrix of synthetic data settings.

    Args:
        spec: The synthetic data settings.

    Returns:
        The ``(n, n)`` covariance matrix.

    Example usage:

    ```pycon

    >>> from ransacsi.experiments import SyntheticSpec, covariance_matrix
    >>> covariance_matrix(SyntheticSpec(n=3, p=1, covariance="correlation"))
    array([[1.  , 0.5 , 0.25],
           [0.5 , 1.  , 0.5 ],
           [0.25, 0.5 , 1.  ]])

    ```
    """
    if spec.covariance == "independence":
        return np.eye(spec.n)
    if spec.covariance == "correlation":
        return toeplitz(spec.rho ** np.arange(spec.n))
    cov = np.asarray(spec.custom_covariance, dtype=np.float64)
    if cov.shape != (spec.n, spec.n):
        msg = f"custom_covariance must have shape ({spec.n}, {spec.n}) (received: {cov.shape})"
        raise InvalidInputError(msg)
    return cov


def noise_sample(kind: str, size: int, seed: int | np.random.Generator = 0) -> np.ndarray:
    r"""Sample zero-mean unit-variance noise.

    Args:
        kind: The noise family, ``"normal"``, ``"laplace"``,
            ``"skew_normal"`` (shape 10) or ``"student_t"`` (20 degrees
            of freedom).
        size: The number of values.
        seed: The seed or the random generator.

    Returns:
        The noise values.

    Raises:
        InvalidInputError: if the noise family is unknown.

    Example usage:

    ```pycon

    >>> from ransacsi.experiments import noise_sample
    >>> noise_sample("laplace", size=4, seed=1).shape
    (4,)

    ```
    """
    rng = seed if isinstance(seed, np.random.Generator) else create_rng(seed)
    if kind == "normal":
        return rng.standard_normal(size)
    if kind == "laplace":
        # Var(Laplace(0, s)) = 2 s^2
        return rng.laplace(loc=0.0, scale=1.0 / math.sqrt(2.0), size=size)
    if kind == "skew_normal":
        dist = skewnorm(SKEW_NORMAL_SHAPE)
        mean, var = dist.stats(moments="mv")
        return (dist.rvs(size=size, random_state=rng) - float(mean)) / math.sqrt(float(var))
    if kind == "student_t":
        # Var(t_df) = df / (df - 2)
        scale = math.sqrt((STUDENT_T_DF - 2) / STUDENT_T_DF)
        return rng.standard_t(STUDENT_T_DF, size=size) * scale
    msg = f"Incorrect noise: {kind}. Valid values are: {NOISE_KINDS}"
    raise InvalidInputError(msg)


def gen_synthetic(spec: SyntheticSpec) -> tuple[Dataset, np.ndarray]:
    r"""Generate a synthetic dataset.

    The features are standard normal, the noise follows the family
    and covariance of the settings, and ``anomaly_count`` points
    drawn uniformly without replacement are shifted by ``delta``.

    Args:
        spec: The synthetic data settings.

    Returns:
        The dataset and the sorted indices of the planted anomalies.
            The covariance of the dataset is the true covariance.

    Example usage:

    ```pycon

    >>> from ransacsi.experiments import SyntheticSpec, gen_synthetic
    >>> data, truth = gen_synthetic(SyntheticSpec(n=150, p=5, delta=3.0, seed=1))
    >>> data.X.shape, truth.shape
    ((150, 5), (30,))

    ```
    """
    rng = create_rng(spec.seed)
    X = rng.standard_normal((spec.n, spec.p))  # noqa: N806
    noise = noise_sample(spec.noise, spec.n, rng)
    if spec.covariance == "independence":
        sigma: np.ndarray | float = 1.0
    else:
        sigma = covariance_matrix(spec)
        noise = cholesky(sigma, lower=True) @ noise
    Y = X @ spec.coefficients() + noise  # noqa: N806
    truth = np.sort(rng.choice(spec.n, size=spec.num_anomalies, replace=False))
    Y[truth] += spec.delta
    return Dataset(X=X, Y=Y, Sigma=sigma), truth


def estimate_noise_variance(data: Dataset) -> float:
    r"""Estimate the noise variance from the least-squares residuals of
    all the points.

    The estimate is the residual sum of squares divided by ``n - p``.

    Args:
        data: The dataset.

    Returns:
        The estimated variance.

    Raises:
        InvalidInputError: if ``n <= p``.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.experiments import estimate_noise_variance
    >>> from ransacsi.linreg import Dataset
    >>> data = Dataset(X=np.ones((3, 1)), Y=np.array([0.0, 1.0, 2.0]), Sigma=None)
    >>> estimate_noise_variance(data)
    1.0

    ```
    """
    n, p = data.num_samples, data.num_features
    if n <= p:
        msg = f"the noise variance cannot be estimated with n ({n:,}) <= p ({p:,})"
        raise InvalidInputError(msg)
    residuals = data.Y - data.X @ fit_least_squares(data.X, data.Y)
    variance = float(residuals @ residuals) / (n - p)
    if variance == 0.0:
        logger.warning("the estimated noise variance is 0: the residuals are all zero")
    return variance


def estimate_sigma(data: Dataset) -> np.ndarray:
    r"""Estimate the noise covariance as ``sigma^2 * I``.

    Args:
        data: The dataset.

    Returns:
        The ``(n, n)`` estimated covariance.

    Raises:
        InvalidInputError: if ``n <= p``.
    """
    return estimate_noise_variance(data) * np.eye(data.num_samples)
