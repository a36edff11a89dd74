r"""Implement the p-value method based on the truncated normal
distribution of the test statistic."""

from __future__ import annotations

__all__ = ["SelectiveMethod"]

import logging
from typing import TYPE_CHECKING

from ransacsi.inference.pvalue import selective_p_value
from ransacsi.method.base import BaseMethod
from ransacsi.truncation.base import setup_region_finder

if TYPE_CHECKING:
    import numpy as np

    from ransacsi.inference.direction import TestContext
    from ransacsi.intervals import IntervalSet
    from ransacsi.linreg import Dataset
    from ransacsi.ransac import RansacConfig, SubsetPlan
    from ransacsi.truncation.base import BaseRegionFinder
    from ransacsi.truncation.tables import ResidualRegionTable

logger = logging.getLogger(__name__)


class SelectiveMethod(BaseMethod):
    r"""Implement a selective p-value method.

    The test statistic is conditioned on the truncation region returned
    by the finder.

    Args:
        name: The name of the method.
        finder: The truncation region finder or its configuration.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.inference import build_context
    >>> from ransacsi.linreg import Dataset
    >>> from ransacsi.method import SelectiveMethod
    >>> from ransacsi.ransac import RansacConfig, SubsetPlan
    >>> from ransacsi.truncation import DivideConquerRegionFinder
    >>> method = SelectiveMethod(name="ctrl", finder=DivideConquerRegionFinder())
    >>> method
    SelectiveMethod(name=ctrl, finder=DivideConquerRegionFinder(counting=dp, symmetric=False))
    >>> data = Dataset(X=np.ones((2, 1)), Y=np.array([0.0, 10.0]), Sigma=1.0)
    >>> plan = SubsetPlan(subsets=np.array([[0], [1]]), num_samples=2)
    >>> ctx = build_context(data, anomalies=np.array([1]), index=1)
    >>> report = method.compute(data, RansacConfig(tau=1.0), plan, np.array([1]), ctx)
    >>> report.region
    IntervalSet([-inf, -1.0], [1.0, inf])

    ```
    """

    def __init__(self, name: str, finder: BaseRegionFinder | dict) -> None:
        super().__init__(name)
        self._finder = setup_region_finder(finder)

    def __repr__(self) -> str:
        return f"{self.__class__.__qualname__}(name={self._name}, finder={self._finder})"

    @property
    def finder(self) -> BaseRegionFinder:
        return self._finder

    @property
    def is_conditional(self) -> bool:
        return True

    def _compute(
        self,
        data: Dataset,
        cfg: RansacConfig,
        plan: SubsetPlan,
        anomalies: np.ndarray,
        ctx: TestContext,
        table: ResidualRegionTable | None,
    ) -> tuple[float, IntervalSet | None]:
        region = self._finder.find(data, cfg, plan, anomalies, ctx, table=table)
        return selective_p_value(ctx.z_obs, ctx.var, region), region
