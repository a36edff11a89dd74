r"""Implement the RANSAC-based anomaly detection with reproducible subset
sampling."""

from __future__ import annotations

__all__ = [
    "DetectionResult",
    "RansacConfig",
    "SubsetPlan",
    "classify_inliers",
    "detect",
    "run_ransac",
    "sample_subsets",
]

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np
from coola.utils import repr_indent, repr_mapping

from ransacsi.exceptions import InvalidInputError
from ransacsi.linreg import fit_least_squares
from ransacsi.utils.random import create_rng

if TYPE_CHECKING:
    from collections.abc import Iterator

    from ransacsi.linreg import Dataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RansacConfig:
    r"""Define the configuration of RANSAC.

    Args:
        num_iterations: The number of iterations ``B``, i.e. the number
            of candidate models.
        tau: The threshold on the squared residual. A point is an
            inlier of a model if its squared residual is lower than or
            equal to ``tau``.
        subset_size: The number of points ``m`` used to fit each
            model. ``None`` means the number of features ``p``.
        seed: The seed of the random subset sampling.

    Raises:
        InvalidInputError: if a value is out of range.

    Example usage:

    ```pycon

    >>> from ransacsi.ransac import RansacConfig
    >>> RansacConfig()
    RansacConfig(num_iterations=15, tau=2.0, subset_size=None, seed=0)

    ```
    """

    num_iterations: int = 15
    tau: float = 2.0
    subset_size: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.num_iterations < 1:
            msg = f"num_iterations must be at least 1 (received: {self.num_iterations})"
            raise InvalidInputError(msg)
        if not (np.isfinite(self.tau) and self.tau > 0):
            msg = f"tau must be a positive finite number (received: {self.tau})"
            raise InvalidInputError(msg)
        if self.subset_size is not None and self.subset_size < 1:
            msg = f"subset_size must be at least 1 (received: {self.subset_size})"
            raise InvalidInputError(msg)

    def resolve_subset_size(self, num_features: int) -> int:
        r"""Return the subset size, using ``num_features`` when it is not
        set."""
        return num_features if self.subset_size is None else self.subset_size

    def to_dict(self) -> dict[str, Any]:
        return {
            "num_iterations": self.num_iterations,
            "tau": self.tau,
            "subset_size": self.subset_size,
            "seed": self.seed,
        }


@dataclass(frozen=True, eq=False)
class SubsetPlan:
    r"""Define the subsets used by the RANSAC iterations.

    The plan only depends on the random stream, not on the response,
    so it is drawn once and reused for every value of the line
    parameter and for every method.

    Args:
        subsets: The ``(B, m)`` array of sorted subset indices.
        num_samples: The number of points ``n``.
    """

    subsets: np.ndarray
    num_samples: int

    def __post_init__(self) -> None:
        subsets = np.asarray(self.subsets, dtype=np.int64)
        if subsets.ndim != 2 or subsets.shape[0] < 1 or subsets.shape[1] < 1:
            msg = f"subsets must be a non-empty 2-d array (received shape: {subsets.shape})"
            raise InvalidInputError(msg)
        if subsets.min() < 0 or subsets.max() >= self.num_samples:
            msg = f"subset indices must be in [0, {self.num_samples})"
            raise InvalidInputError(msg)
        for subset in subsets:
            if np.unique(subset).size != subset.size:
                msg = f"subset indices must be distinct (received: {subset.tolist()})"
                raise InvalidInputError(msg)
        object.__setattr__(self, "subsets", subsets)

    @property
    def num_iterations(self) -> int:
        return self.subsets.shape[0]

    @property
    def subset_size(self) -> int:
        return self.subsets.shape[1]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.subsets)

    def __len__(self) -> int:
        return self.num_iterations

    def __getitem__(self, index: int) -> np.ndarray:
        return self.subsets[index]


def sample_subsets(n: int, cfg: RansacConfig, num_features: int | None = None) -> SubsetPlan:
    r"""Draw the subsets of the RANSAC iterations.

    Each subset is drawn uniformly without replacement from
    ``{0, ..., n-1}``, independently of the others, so the same subset
    may be drawn twice. The stream is seeded by ``cfg.seed``.

    Args:
        n: The number of points.
        cfg: The RANSAC configuration.
        num_features: The number of features, used when
            ``cfg.subset_size`` is ``None``.

    Returns:
        The subset plan.

    Raises:
        InvalidInputError: if the subset size is unknown or larger
            than ``n``.

    Example usage:

    ```pycon

    >>> from ransacsi.ransac import RansacConfig, sample_subsets
    >>> plan = sample_subsets(3, RansacConfig(num_iterations=2, subset_size=3))
    >>> plan.subsets
    array([[0, 1, 2],
           [0, 1, 2]])

    ```
    """
    if cfg.subset_size is None and num_features is None:
        msg = "the subset size is unknown: set subset_size or num_features"
        raise InvalidInputError(msg)
    m = cfg.resolve_subset_size(num_features)
    if m > n:
        msg = f"the subset size ({m:,}) is larger than the number of points ({n:,})"
        raise InvalidInputError(msg)
    rng = create_rng(cfg.seed)
    subsets = np.stack(
        [np.sort(rng.choice(n, size=m, replace=False)) for _ in range(cfg.num_iterations)]
    )
    return SubsetPlan(subsets=subsets, num_samples=n)


def classify_inliers(residuals: np.ndarray, tau: float) -> np.ndarray:
    r"""Return the indices of the points whose squared residual is lower
    than or equal to ``tau``.

    Args:
        residuals: The residuals of shape ``(n,)``.
        tau: The threshold on the squared residual.

    Returns:
        The sorted inlier indices.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.ransac import classify_inliers
    >>> classify_inliers(np.array([0.0, 3.0, -1.0]), tau=2.0)
    array([0, 2])

    ```
    """
    residuals = np.asarray(residuals, dtype=np.float64)
    return np.flatnonzero(residuals * residuals <= tau)


class DetectionResult:
    r"""Define the output of the RANSAC anomaly detection.

    Args:
        fits: The ``(B, p)`` coefficients of the candidate models.
        inlier_sets: The inlier indices of each candidate model.
        optimal_index: The index of the optimal model, i.e. the first
            model with the largest consensus set.
        plan: The subset plan used by the detection.
    """

    def __init__(
        self,
        fits: np.ndarray,
        inlier_sets: tuple[np.ndarray, ...],
        optimal_index: int,
        plan: SubsetPlan,
    ) -> None:
        self._fits = fits
        self._inlier_sets = tuple(inlier_sets)
        self._optimal_index = int(optimal_index)
        self._plan = plan
        self._inliers = self._inlier_sets[self._optimal_index]
        self._anomalies = np.setdiff1d(
            np.arange(plan.num_samples), self._inliers, assume_unique=True
        )

    def __repr__(self) -> str:
        args = repr_indent(
            repr_mapping(
                {
                    "num_models": len(self._inlier_sets),
                    "optimal_index": self._optimal_index,
                    "consensus_sizes": self.consensus_sizes.tolist(),
                    "anomalies": self._anomalies.tolist(),
                }
            )
        )
        return f"{self.__class__.__qualname__}(\n  {args}\n)"

    @property
    def fits(self) -> np.ndarray:
        return self._fits

    @property
    def inlier_sets(self) -> tuple[np.ndarray, ...]:
        return self._inlier_sets

    @property
    def optimal_index(self) -> int:
        return self._optimal_index

    @property
    def plan(self) -> SubsetPlan:
        return self._plan

    @property
    def inliers(self) -> np.ndarray:
        r"""The inliers of the optimal model."""
        return self._inliers

    @property
    def anomalies(self) -> np.ndarray:
        r"""The detected anomalies, i.e. the points that are not inliers of
        the optimal model."""
        return self._anomalies

    @property
    def consensus_sizes(self) -> np.ndarray:
        return np.array([s.size for s in self._inlier_sets], dtype=np.int64)

    @property
    def no_inliers(self) -> bool:
        r"""``True`` if no model has an inlier, so every point is an
        anomaly and no hypothesis can be tested."""
        return self._inliers.size == 0

    def to_dict(self) -> dict[str, Any]:
        r"""Return a JSON compatible representation of the result."""
        return {
            "optimal_index": self._optimal_index,
            "anomalies": self._anomalies.tolist(),
            "inliers": self._inliers.tolist(),
            "consensus_sizes": self.consensus_sizes.tolist(),
            "subsets": self._plan.subsets.tolist(),
            "no_inliers": self.no_inliers,
        }


def run_ransac(X: np.ndarray, Y: np.ndarray, plan: SubsetPlan, tau: float) -> DetectionResult:  # noqa: N803
    r"""Run the RANSAC iterations of a fixed plan on a response vector.

    Args:
        X: The feature matrix of shape ``(n, p)``.
        Y: The response vector of shape ``(n,)``.
        plan: The subset plan.
        tau: The threshold on the squared residual.

    Returns:
        The detection result.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.ransac import SubsetPlan, run_ransac
    >>> plan = SubsetPlan(subsets=np.array([[0], [1]]), num_samples=2)
    >>> result = run_ransac(np.ones((2, 1)), np.array([0.0, 10.0]), plan, tau=1.0)
    >>> result.optimal_index, result.anomalies
    (0, array([1]))

    ```
    """
    fits = np.stack([fit_least_squares(X[subset], Y[subset]) for subset in plan])
    residuals = Y[None, :] - fits @ X.T
    inlier_sets = tuple(classify_inliers(row, tau) for row in residuals)
    sizes = np.array([s.size for s in inlier_sets])
    # argmax returns the first maximum, i.e. the first encountered model
    optimal_index = int(np.argmax(sizes))
    return DetectionResult(
        fits=fits, inlier_sets=inlier_sets, optimal_index=optimal_index, plan=plan
    )


def detect(data: Dataset, cfg: RansacConfig, plan: SubsetPlan | None = None) -> DetectionResult:
    r"""Detect the anomalies of a dataset with RANSAC.

    Args:
        data: The dataset.
        cfg: The RANSAC configuration.
        plan: The subset plan. A new plan is drawn from ``cfg`` if
            ``None``.

    Returns:
        The detection result.

    Raises:
        InvalidInputError: if the subset size is not in ``[p, n]`` or
            the plan does not match the dataset.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.linreg import Dataset
    >>> from ransacsi.ransac import RansacConfig, detect
    >>> data = Dataset(X=np.ones((4, 1)), Y=np.array([0.1, -0.2, 0.0, 8.0]))
    >>> result = detect(data, RansacConfig(num_iterations=5, tau=1.0))
    >>> result.anomalies
    array([3])

    ```
    """
    n, p = data.num_samples, data.num_features
    if plan is None:
        m = cfg.resolve_subset_size(p)
        if m < p:
            msg = f"the subset size ({m:,}) is smaller than the number of features ({p:,})"
            raise InvalidInputError(msg)
        plan = sample_subsets(n, cfg, num_features=p)
    if plan.num_samples != n:
        msg = f"the plan is for {plan.num_samples:,} points but the dataset has {n:,} points"
        raise InvalidInputError(msg)
    logger.debug(f"Detecting anomalies with RANSAC (n={n:,}, B={plan.num_iterations:,})...")
    result = run_ransac(data.X, data.Y, plan, cfg.tau)
    if result.no_inliers:
        logger.warning("no RANSAC model has an inlier: every point is detected as an anomaly")
    return result
