r"""Implement the p-value methods that ignore the selection event."""

from __future__ import annotations

__all__ = ["BonferroniMethod", "NaiveMethod", "NoInferenceMethod"]

from typing import TYPE_CHECKING

from ransacsi.inference.pvalue import bonferroni_p_value, naive_p_value
from ransacsi.method.base import BaseMethod

if TYPE_CHECKING:
    import numpy as np

    from ransacsi.inference.direction import TestContext
    from ransacsi.intervals import IntervalSet
    from ransacsi.linreg import Dataset
    from ransacsi.ransac import RansacConfig, SubsetPlan
    from ransacsi.truncation.tables import ResidualRegionTable


class NaiveMethod(BaseMethod):
    r"""Implement the naive p-value, which treats the anomaly as if it
    was chosen before looking at the data.

    Args:
        name: The name of the method.

    Example usage:

    ```pycon

    >>> from ransacsi.method import NaiveMethod
    >>> NaiveMethod()
    NaiveMethod(name=naive)

    ```
    """

    def __init__(self, name: str = "naive") -> None:
        super().__init__(name)

    def _compute(
        self,
        data: Dataset,  # noqa: ARG002
        cfg: RansacConfig,  # noqa: ARG002
        plan: SubsetPlan,  # noqa: ARG002
        anomalies: np.ndarray,  # noqa: ARG002
        ctx: TestContext,
        table: ResidualRegionTable | None,  # noqa: ARG002
    ) -> tuple[float, IntervalSet | None]:
        return naive_p_value(ctx.z_obs, ctx.var), None


class BonferroniMethod(BaseMethod):
    r"""Implement the naive p-value corrected by the number ``2^n`` of
    possible anomaly sets.

    Args:
        name: The name of the method.

    Example usage:

    ```pycon

    >>> from ransacsi.method import BonferroniMethod
    >>> BonferroniMethod()
    BonferroniMethod(name=bonferroni)

    ```
    """

    def __init__(self, name: str = "bonferroni") -> None:
        super().__init__(name)

    def _compute(
        self,
        data: Dataset,
        cfg: RansacConfig,  # noqa: ARG002
        plan: SubsetPlan,  # noqa: ARG002
        anomalies: np.ndarray,  # noqa: ARG002
        ctx: TestContext,
        table: ResidualRegionTable | None,  # noqa: ARG002
    ) -> tuple[float, IntervalSet | None]:
        p_naive = naive_p_value(ctx.z_obs, ctx.var)
        return bonferroni_p_value(p_naive, data.num_samples), None


class NoInferenceMethod(BaseMethod):
    r"""Implement the absence of inference: every detected anomaly is
    declared significant, i.e. its p-value is 0.

    Args:
        name: The name of the method.

    Example usage:

    ```pycon

    >>> from ransacsi.method import NoInferenceMethod
    >>> NoInferenceMethod()
    NoInferenceMethod(name=no_inference)

    ```
    """

    def __init__(self, name: str = "no_inference") -> None:
        super().__init__(name)

    def _compute(
        self,
        data: Dataset,  # noqa: ARG002
        cfg: RansacConfig,  # noqa: ARG002
        plan: SubsetPlan,  # noqa: ARG002
        anomalies: np.ndarray,  # noqa: ARG002
        ctx: TestContext,  # noqa: ARG002
        table: ResidualRegionTable | None,  # noqa: ARG002
    ) -> tuple[float, IntervalSet | None]:
        return 0.0, None
