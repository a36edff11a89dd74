r"""Contain the base class to implement a truncation region finder."""

from __future__ import annotations

__all__ = ["BaseRegionFinder", "is_region_finder_config", "setup_region_finder"]

import logging
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

from objectory import AbstractFactory
from objectory.utils import is_object_config

if TYPE_CHECKING:
    import numpy as np

    from ransacsi.inference.direction import TestContext
    from ransacsi.intervals import IntervalSet
    from ransacsi.linreg import Dataset
    from ransacsi.ransac import RansacConfig, SubsetPlan
    from ransacsi.truncation.tables import ResidualRegionTable

logger = logging.getLogger(__name__)


class BaseRegionFinder(ABC, metaclass=AbstractFactory):
    r"""Define the base class to find the truncation region of a test
    statistic.

    The truncation region is the set of values ``z`` of the line
    parameter for which RANSAC, run with the same subset plan on
    ``Y(z) = a + b_dir * z``, detects the observed anomalies (or a
    subset of this set for the finders that condition on more).

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.inference import build_context
    >>> from ransacsi.linreg import Dataset
    >>> from ransacsi.ransac import RansacConfig, SubsetPlan
    >>> from ransacsi.truncation import DivideConquerRegionFinder
    >>> finder = DivideConquerRegionFinder()
    >>> finder
    DivideConquerRegionFinder(counting=dp, symmetric=False)
    >>> data = Dataset(X=np.ones((2, 1)), Y=np.array([0.0, 10.0]), Sigma=1.0)
    >>> plan = SubsetPlan(subsets=np.array([[0], [1]]), num_samples=2)
    >>> ctx = build_context(data, anomalies=np.array([1]), index=1)
    >>> finder.find(data, RansacConfig(num_iterations=2, tau=1.0), plan, np.array([1]), ctx)
    IntervalSet([-inf, -1.0], [1.0, inf])

    ```
    """

    @abstractmethod
    def find(
        self,
        data: Dataset,
        cfg: RansacConfig,
        plan: SubsetPlan,
        anomalies: np.ndarray,
        ctx: TestContext,
        table: ResidualRegionTable | None = None,
    ) -> IntervalSet:
        r"""Find the truncation region of a test statistic.

        Args:
            data: The dataset.
            cfg: The RANSAC configuration.
            plan: The subset plan used by the observed detection.
            anomalies: The indices of the observed anomalies.
            ctx: The test context of the tested anomaly.
            table: The inlier region table along the line of ``ctx``,
                if it was already computed.

        Returns:
            The truncation region. It contains ``ctx.z_obs``.
        """


def is_region_finder_config(config: dict) -> bool:
    r"""Indicate if the input configuration is a configuration for a
    ``BaseRegionFinder``.

    This function only checks if the value of the key  ``_target_``
    is valid. It does not check the other values. If ``_target_``
    indicates a function, the returned type hint is used to check
    the class.

    Args:
        config: The configuration to check.

    Returns:
        ``True`` if the input configuration is a configuration
            for a ``BaseRegionFinder`` object.

    Example usage:

    ```pycon

    >>> from ransacsi.truncation import is_region_finder_config
    >>> is_region_finder_config({"_target_": "ransacsi.truncation.LineSearchRegionFinder"})
    True

    ```
    """
    return is_object_config(config, BaseRegionFinder)


def setup_region_finder(finder: BaseRegionFinder | dict) -> BaseRegionFinder:
    r"""Set up a truncation region finder.

    The finder is instantiated from its configuration by using the
    ``BaseRegionFinder`` factory function.

    Args:
        finder: Specifies a finder or its configuration.

    Returns:
        An instantiated finder.

    Example usage:

    ```pycon

    >>> from ransacsi.truncation import setup_region_finder
    >>> finder = setup_region_finder(
    ...     {"_target_": "ransacsi.truncation.DivideConquerRegionFinder", "counting": "sweep"}
    ... )
    >>> finder
    DivideConquerRegionFinder(counting=sweep, symmetric=False)

    ```
    """
    if isinstance(finder, dict):
        logger.info("Initializing a truncation region finder from its configuration... ")
        finder = BaseRegionFinder.factory(**finder)
    if not isinstance(finder, BaseRegionFinder):
        logger.warning(f"finder is not a `BaseRegionFinder` (received: {type(finder)})")
    return finder
