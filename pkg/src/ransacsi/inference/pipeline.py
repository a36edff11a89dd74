r"""Implement the pipeline that detects the anomalies of a dataset and
tests each of them."""

from __future__ import annotations

__all__ = ["AnomalyTester"]

import logging
from typing import TYPE_CHECKING

from coola.utils import str_indent, str_mapping

from ransacsi.exceptions import NumericalError
from ransacsi.inference.direction import build_context
from ransacsi.inference.report import InferenceReport
from ransacsi.method.base import setup_method
from ransacsi.ransac import RansacConfig, detect
from ransacsi.truncation.tables import residual_region_table

if TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy as np

    from ransacsi.linreg import Dataset
    from ransacsi.method.base import BaseMethod
    from ransacsi.ransac import SubsetPlan

logger = logging.getLogger(__name__)


class AnomalyTester:
    r"""Implement the detection of anomalies followed by the computation of
    the p-value of each detected anomaly.

    For each anomaly, the test direction and the line of the response
    are computed once and shared by all the methods. The inlier region
    table along the line is also shared by the conditional methods when
    ``share_tables`` is ``True``.

    Args:
        cfg: The RANSAC configuration.
        methods: The p-value methods, their configurations or their
            names.
        share_tables: If ``True``, the inlier region table is computed
            once per anomaly for all the conditional methods. Disable
            it to time each method on its own.
        strict: If ``True``, the numerical errors are raised, otherwise
            they are logged and the failing p-value is skipped.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.inference import AnomalyTester
    >>> from ransacsi.linreg import Dataset
    >>> from ransacsi.ransac import RansacConfig, SubsetPlan
    >>> tester = AnomalyTester(RansacConfig(tau=1.0), methods=["ctrl", "naive"])
    >>> data = Dataset(X=np.ones((2, 1)), Y=np.array([0.0, 10.0]), Sigma=1.0)
    >>> plan = SubsetPlan(subsets=np.array([[0], [1]]), num_samples=2)
    >>> report = tester.test(data, plan=plan)
    >>> report.detection.anomalies
    array([1])
    >>> report.methods
    ['ctrl', 'naive']

    ```
    """

    def __init__(
        self,
        cfg: RansacConfig | None = None,
        methods: Sequence[BaseMethod | dict | str] = ("ctrl",),
        share_tables: bool = True,
        strict: bool = True,
    ) -> None:
        self._cfg = cfg or RansacConfig()
        self._methods = tuple(setup_method(method) for method in methods)
        self._share_tables = bool(share_tables)
        self._strict = bool(strict)

    def __repr__(self) -> str:
        args = str_indent(
            str_mapping(
                {
                    "cfg": self._cfg,
                    "methods": [method.name for method in self._methods],
                    "share_tables": self._share_tables,
                    "strict": self._strict,
                }
            )
        )
        return f"{self.__class__.__qualname__}(\n  {args}\n)"

    @property
    def cfg(self) -> RansacConfig:
        return self._cfg

    @property
    def methods(self) -> tuple[BaseMethod, ...]:
        return self._methods

    def test(
        self,
        data: Dataset,
        plan: SubsetPlan | None = None,
        indices: Sequence[int] | np.ndarray | None = None,
    ) -> InferenceReport:
        r"""Detect the anomalies of a dataset and test them.

        Args:
            data: The dataset. Its noise covariance must be known.
            plan: The subset plan. A new plan is drawn from the RANSAC
                configuration if ``None``.
            indices: The anomalies to test. ``None`` means all the
                detected anomalies.

        Returns:
            The inference report. It has no p-value report if no
                anomaly is detected or if every point is an anomaly.

        Raises:
            NumericalError: if a p-value cannot be computed and
                ``strict`` is ``True``.
        """
        logger.info("Detecting anomalies with RANSAC...")
        detection = detect(data, self._cfg, plan)
        anomalies = detection.anomalies
        warnings = []
        if anomalies.size == 0:
            logger.info("No anomaly was detected")
            return InferenceReport(detection, warnings=warnings)
        if detection.no_inliers:
            warnings.append("every point is an anomaly: no hypothesis can be tested")
            return InferenceReport(detection, warnings=warnings)

        tested = anomalies if indices is None else [int(i) for i in indices]
        logger.info(
            f"Testing {len(tested):,} anomalies with {len(self._methods):,} method(s)..."
        )
        needs_table = self._share_tables and any(m.is_conditional for m in self._methods)
        reports = []
        for index in tested:
            ctx = build_context(data, anomalies, int(index))
            table = (
                residual_region_table(data.X, detection.plan, ctx.a, ctx.b_dir, self._cfg.tau)
                if needs_table
                else None
            )
            for method in self._methods:
                try:
                    reports.append(
                        method.compute(data, self._cfg, detection.plan, anomalies, ctx, table)
                    )
                except NumericalError as exc:
                    if self._strict:
                        raise
                    message = f"{method.name} failed on anomaly {int(index)}: {exc}"
                    logger.warning(message)
                    warnings.append(message)
        return InferenceReport(detection, reports=reports, warnings=warnings)
