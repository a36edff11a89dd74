r"""Contain the reports of the tests of the detected anomalies."""

from __future__ import annotations

__all__ = ["InferenceReport", "PValueReport"]

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import polars as pl
from coola.utils import str_indent, str_mapping

from ransacsi.intervals import IntervalSet
from ransacsi.utils.format import json_float

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ransacsi.ransac import DetectionResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PValueReport:
    r"""Define the result of one method on one anomaly.

    Args:
        anomaly_index: The index of the tested anomaly.
        method: The name of the method.
        p_value: The p-value.
        z_obs: The observed test statistic.
        var: The variance of the test statistic.
        region: The truncation region, or ``None`` for the methods that
            do not condition on the selection event.
        elapsed: The wall-clock time spent by the method, in seconds.

    Example usage:

    ```pycon

    >>> from ransacsi.inference import PValueReport
    >>> report = PValueReport(anomaly_index=3, method="naive", p_value=0.5, z_obs=0.6, var=1.0)
    >>> report.to_record()
    {'index': 3, 'method': 'naive', 'p_value': 0.5, 'z_obs': 0.6, 'var': 1.0, 'region': [['-inf', 'inf']]}

    ```
    """

    anomaly_index: int
    method: str
    p_value: float
    z_obs: float
    var: float
    region: IntervalSet | None = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def is_conditional(self) -> bool:
        return self.region is not None

    def to_record(self) -> dict[str, Any]:
        r"""Return the JSON record of the report.

        The elapsed time is not part of the record so the record of a
        run is reproducible.
        """
        region = IntervalSet.real_line() if self.region is None else self.region
        return {
            "index": int(self.anomaly_index),
            "method": self.method,
            "p_value": float(self.p_value),
            "z_obs": float(self.z_obs),
            "var": float(self.var),
            "region": [[json_float(lo), json_float(hi)] for lo, hi in region],
        }


class InferenceReport:
    r"""Define the result of the detection and of the tests of all the
    detected anomalies.

    Args:
        detection: The detection result.
        reports: The p-value reports, one per anomaly and method.
        warnings: The warnings raised while testing.
    """

    def __init__(
        self,
        detection: DetectionResult,
        reports: Sequence[PValueReport] = (),
        warnings: Sequence[str] = (),
    ) -> None:
        self._detection = detection
        self._reports = tuple(reports)
        self._warnings = tuple(warnings)

    def __repr__(self) -> str:
        args = str_indent(
            str_mapping(
                {
                    "anomalies": self._detection.anomalies.tolist(),
                    "methods": self.methods,
                    "num_reports": len(self._reports),
                    "num_warnings": len(self._warnings),
                }
            )
        )
        return f"{self.__class__.__qualname__}(\n  {args}\n)"

    @property
    def detection(self) -> DetectionResult:
        return self._detection

    @property
    def reports(self) -> tuple[PValueReport, ...]:
        return self._reports

    @property
    def warnings(self) -> tuple[str, ...]:
        return self._warnings

    @property
    def methods(self) -> list[str]:
        r"""The names of the methods, in order of first appearance."""
        return list(dict.fromkeys(report.method for report in self._reports))

    def is_empty(self) -> bool:
        return not self._reports

    def p_values(self, method: str) -> dict[int, float]:
        r"""Return the p-values of a method, indexed by anomaly."""
        return {r.anomaly_index: r.p_value for r in self._reports if r.method == method}

    def to_records(self) -> list[dict[str, Any]]:
        r"""Return the JSON records of all the p-value reports."""
        return [report.to_record() for report in self._reports]

    def to_dict(self) -> dict[str, Any]:
        r"""Return a JSON compatible representation of the report."""
        return {
            "detection": self._detection.to_dict(),
            "results": self.to_records(),
            "warnings": list(self._warnings),
        }

    def to_frame(self) -> pl.DataFrame:
        r"""Return the p-value reports as a DataFrame."""
        return pl.DataFrame(
            {
                "index": [r.anomaly_index for r in self._reports],
                "method": [r.method for r in self._reports],
                "p_value": [r.p_value for r in self._reports],
                "z_obs": [r.z_obs for r in self._reports],
                "var": [r.var for r in self._reports],
                "num_intervals": [0 if r.region is None else len(r.region) for r in self._reports],
                "elapsed": [r.elapsed for r in self._reports],
            },
            schema={
                "index": pl.Int64,
                "method": pl.String,
                "p_value": pl.Float64,
                "z_obs": pl.Float64,
                "var": pl.Float64,
                "num_intervals": pl.Int64,
                "elapsed": pl.Float64,
            },
        )
