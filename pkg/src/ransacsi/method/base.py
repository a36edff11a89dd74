r"""Contain the base class to implement a p-value method."""

from __future__ import annotations

__all__ = ["BaseMethod", "is_method_config", "setup_method"]

import logging
import time
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

from objectory import AbstractFactory
from objectory.utils import is_object_config

from ransacsi.inference.report import PValueReport

if TYPE_CHECKING:
    import numpy as np

    from ransacsi.inference.direction import TestContext
    from ransacsi.intervals import IntervalSet
    from ransacsi.linreg import Dataset
    from ransacsi.ransac import RansacConfig, SubsetPlan
    from ransacsi.truncation.tables import ResidualRegionTable

logger = logging.getLogger(__name__)


class BaseMethod(ABC, metaclass=AbstractFactory):
    r"""Define the base class to compute the p-value of a detected
    anomaly.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.inference import build_context
    >>> from ransacsi.linreg import Dataset
    >>> from ransacsi.method import NaiveMethod
    >>> from ransacsi.ransac import RansacConfig, SubsetPlan
    >>> method = NaiveMethod()
    >>> method
    NaiveMethod(name=naive)
    >>> data = Dataset(X=np.ones((2, 1)), Y=np.array([0.0, 10.0]), Sigma=1.0)
    >>> plan = SubsetPlan(subsets=np.array([[0], [1]]), num_samples=2)
    >>> ctx = build_context(data, anomalies=np.array([1]), index=1)
    >>> report = method.compute(data, RansacConfig(tau=1.0), plan, np.array([1]), ctx)
    >>> report.method, report.z_obs, report.var
    ('naive', 10.0, 2.0)

    ```
    """

    def __init__(self, name: str) -> None:
        self._name = name

    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}(name={self._name})"

    @property
    def name(self) -> str:
        r"""The name of the method used in the reports."""
        return self._name

    @property
    def is_conditional(self) -> bool:
        r"""``True`` if the method conditions on the selection event and
        needs a truncation region."""
        return False

    def compute(
        self,
        data: Dataset,
        cfg: RansacConfig,
        plan: SubsetPlan,
        anomalies: np.ndarray,
        ctx: TestContext,
        table: ResidualRegionTable | None = None,
    ) -> PValueReport:
        r"""Compute the p-value of a detected anomaly.

        Args:
            data: The dataset.
            cfg: The RANSAC configuration.
            plan: The subset plan used by the observed detection.
            anomalies: The indices of the observed anomalies.
            ctx: The test context of the tested anomaly.
            table: The inlier region table along the line of ``ctx``,
                if it was already computed.

        Returns:
            The p-value report, including the elapsed time.
        """
        start = time.perf_counter()
        p_value, region = self._compute(data, cfg, plan, anomalies, ctx, table)
        return PValueReport(
            anomaly_index=-1 if ctx.index is None else int(ctx.index),
            method=self._name,
            p_value=p_value,
            z_obs=ctx.z_obs,
            var=ctx.var,
            region=region,
            elapsed=time.perf_counter() - start,
        )

    @abstractmethod
    def _compute(
        self,
        data: Dataset,
        cfg: RansacConfig,
        plan: SubsetPlan,
        anomalies: np.ndarray,
        ctx: TestContext,
        table: ResidualRegionTable | None,
    ) -> tuple[float, IntervalSet | None]:
        r"""Compute the p-value and the truncation region, if any."""


def is_method_config(config: dict) -> bool:
    r"""Indicate if the input configuration is a configuration for a
    ``BaseMethod``.

    This function only checks if the value of the key  ``_target_``
    is valid. It does not check the other values.

    Args:
        config: The configuration to check.

    Returns:
        ``True`` if the input configuration is a configuration
            for a ``BaseMethod`` object.

    Example usage:

    ```pycon

    >>> from ransacsi.method import is_method_config
    >>> is_method_config({"_target_": "ransacsi.method.NaiveMethod"})
    True

    ```
    """
    return is_object_config(config, BaseMethod)


def setup_method(method: BaseMethod | dict | str) -> BaseMethod:
    r"""Set up a p-value method.

    The method is instantiated from its configuration by using the
    ``BaseMethod`` factory function, or from its name by using
    ``create_method``.

    Args:
        method: Specifies a method, its configuration or its name.

    Returns:
        An instantiated method.

    Example usage:

    ```pycon

    >>> from ransacsi.method import setup_method
    >>> setup_method({"_target_": "ransacsi.method.BonferroniMethod"})
    BonferroniMethod(name=bonferroni)
    >>> setup_method("oc")
    SelectiveMethod(name=oc, finder=OverConditioningRegionFinder())

    ```
    """
    if isinstance(method, str):
        from ransacsi.method.registry import create_method

        method = create_method(method)
    if isinstance(method, dict):
        logger.info("Initializing a p-value method from its configuration... ")
        method = BaseMethod.factory(**method)
    if not isinstance(method, BaseMethod):
        logger.warning(f"method is not a `BaseMethod` (received: {type(method)})")
    return method
