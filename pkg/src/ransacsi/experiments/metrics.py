r"""Contain the outcome of a Monte Carlo trial and the aggregation of the
outcomes into metric tables."""

from __future__ import annotations

__all__ = [
    "METRIC_KINDS",
    "MetricsTable",
    "TrialOutcome",
    "aggregate_outcomes",
    "binomial_interval",
]

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np
import polars as pl
from coola.utils import str_indent, str_mapping
from scipy.stats import binomtest

from ransacsi.exceptions import InvalidInputError
from ransacsi.utils.format import format_float

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

logger = logging.getLogger(__name__)

METRIC_KINDS = ("fpr", "tpr", "timing")

DEFINITIONS = {
    "fpr": "rejected tested detections / tested detections, pooled over trials",
    "tpr": (
        "planted anomalies detected and rejected / planted anomalies detected, "
        "pooled over trials"
    ),
    "timing": "mean wall-clock seconds per tested anomaly, pooled over trials",
}

SCHEMA = {
    "kind": pl.String,
    "setting": pl.String,
    "value": pl.Float64,
    "method": pl.String,
    "num_trials": pl.Int64,
    "num_tested": pl.Int64,
    "num_rejected": pl.Int64,
    "rate": pl.Float64,
    "ci_low": pl.Float64,
    "ci_high": pl.Float64,
    "zero_denominator": pl.Boolean,
    "mean_time": pl.Float64,
    "alpha": pl.Float64,
}


@dataclass(frozen=True, eq=False)
class TrialOutcome:
    r"""Define the outcome of one Monte Carlo trial.

    Args:
        trial: The index of the trial.
        detected: The sorted indices of the detected anomalies.
        truth: The sorted indices of the planted anomalies.
        p_values: The p-values, indexed by method then by anomaly.
        wall_times: The wall-clock time of each tested anomaly, indexed
            by method.
        warnings: The warnings raised while testing.
    """

    trial: int
    detected: np.ndarray
    truth: np.ndarray
    p_values: dict[str, dict[int, float]] = field(default_factory=dict)
    wall_times: dict[str, list[float]] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for method, values in self.p_values.items():
            for index, p in values.items():
                if not 0.0 <= p <= 1.0:
                    msg = f"the p-value of {method} on anomaly {index} is not in [0, 1]: {p}"
                    raise InvalidInputError(msg)

    def tested(self, method: str, kind: str = "fpr") -> list[float]:
        r"""Return the p-values of the tested hypotheses of a method.

        Args:
            method: The name of the method.
            kind: ``"fpr"`` keeps every detection, ``"tpr"`` keeps the
                detections that are planted anomalies.

        Returns:
            The p-values.
        """
        values = self.p_values.get(method, {})
        if kind == "tpr":
            truth = set(self.truth.tolist())
            return [p for index, p in values.items() if index in truth]
        return list(values.values())


def binomial_interval(k: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    r"""Compute the exact Clopper-Pearson interval of a binomial
    proportion.

    Args:
        k: The number of successes.
        n: The number of trials.
        confidence: The confidence level.

    Returns:
        The tuple ``(low, high)``. Both values are ``nan`` if ``n``
            is zero.

    Example usage:

    ```pycon

    >>> from ransacsi.experiments import binomial_interval
    >>> low, high = binomial_interval(5, 100)
    >>> round(low, 4), round(high, 4)
    (0.0164, 0.1128)

    ```
    """
    if n == 0:
        return math.nan, math.nan
    ci = binomtest(int(k), int(n)).proportion_ci(confidence_level=confidence, method="exact")
    return float(ci.low), float(ci.high)


class MetricsTable:
    r"""Define a table of metrics with one row per method and setting.

    The columns are ``kind``, ``setting`` (the name of the swept
    parameter, if any), ``value`` (its value), ``method``,
    ``num_trials``, ``num_tested`` (the denominator), ``num_rejected``,
    ``rate``, ``ci_low``/``ci_high`` (95% Clopper-Pearson interval of
    the rate), ``zero_denominator``, ``mean_time`` and ``alpha``.

    Args:
        frame: The DataFrame of the metrics.
        metadata: The metadata of the table, e.g. the definition of the
            rates.
    """

    def __init__(self, frame: pl.DataFrame, metadata: dict[str, Any] | None = None) -> None:
        missing = sorted(set(SCHEMA).difference(frame.columns))
        if missing:
            msg = f"The metrics frame is missing the columns: {missing}"
            raise InvalidInputError(msg)
        self._frame = frame.select(list(SCHEMA))
        self._metadata = dict(metadata or {})

    def __repr__(self) -> str:
        args = str_indent(
            str_mapping(
                {
                    "num_rows": self._frame.shape[0],
                    "methods": self.methods,
                    "metadata": self._metadata,
                }
            )
        )
        return f"{self.__class__.__qualname__}(\n  {args}\n)"

    def __len__(self) -> int:
        return self._frame.shape[0]

    @property
    def frame(self) -> pl.DataFrame:
        return self._frame

    @property
    def metadata(self) -> dict[str, Any]:
        return self._metadata

    @property
    def methods(self) -> list[str]:
        return list(dict.fromkeys(self._frame["method"].to_list()))

    @classmethod
    def concat(cls, tables: Sequence[MetricsTable]) -> MetricsTable:
        r"""Concatenate metric tables.

        The metadata of the first table is kept.
        """
        if not tables:
            return cls(pl.DataFrame(schema=SCHEMA))
        return cls(
            pl.concat([table.frame for table in tables], how="vertical"),
            metadata=tables[0].metadata,
        )

    def row(self, method: str, value: float | None = None) -> dict[str, Any]:
        r"""Return the row of a method.

        Args:
            method: The name of the method.
            value: The value of the swept parameter, if any.

        Returns:
            The row as a dictionary.

        Raises:
            KeyError: if there is no such row.
        """
        frame = self._frame.filter(pl.col("method") == method)
        if value is not None:
            frame = frame.filter(pl.col("value") == float(value))
        if frame.shape[0] == 0:
            msg = f"No row for method={method} and value={value}"
            raise KeyError(msg)
        return frame.row(0, named=True)

    def to_records(self) -> list[dict[str, Any]]:
        r"""Return the rows as JSON compatible records.

        The missing values and the ``nan`` values are ``None``.
        """
        records = []
        for row in self._frame.iter_rows(named=True):
            records.append(
                {
                    key: None if isinstance(val, float) and math.isnan(val) else val
                    for key, val in row.items()
                }
            )
        return records

    def to_dict(self) -> dict[str, Any]:
        return {"metadata": self._metadata, "rows": self.to_records()}

    def to_csv_frame(self) -> pl.DataFrame:
        r"""Return the table where the floats are formatted with 17
        significant digits."""
        return self._frame.with_columns(
            [
                pl.col(name).map_elements(format_float, return_dtype=pl.String)
                for name, dtype in SCHEMA.items()
                if dtype == pl.Float64
            ]
        )

    def write_csv(self, path: Path) -> None:
        r"""Write the table to a CSV file.

        Args:
            path: The path to the CSV file.
        """
        path.parent.mkdir(parents=True, exist_ok=True)
        logger.info(f"Writing the metrics table to {path}...")
        self.to_csv_frame().write_csv(path)


def _time_row(outcomes: Sequence[TrialOutcome], method: str) -> tuple[int, float]:
    times = [t for outcome in outcomes for t in outcome.wall_times.get(method, [])]
    if not times:
        return 0, math.nan
    return len(times), float(np.mean(times))


def aggregate_outcomes(
    outcomes: Sequence[TrialOutcome],
    methods: Sequence[str],
    kind: str,
    alpha: float = 0.05,
    setting: str | None = None,
    value: float | None = None,
) -> MetricsTable:
    r"""Aggregate the outcomes of the trials into a metrics table.

    The counters are pooled over the trials, so the table does not
    depend on the order of the outcomes.

    Args:
        outcomes: The outcomes of the trials.
        methods: The names of the methods.
        kind: The kind of metric, ``"fpr"``, ``"tpr"`` or
            ``"timing"``.
        alpha: The significance level.
        setting: The name of the swept parameter, if any.
        value: The value of the swept parameter, if any.

    Returns:
        The metrics table with one row per method.

    Raises:
        InvalidInputError: if ``kind`` is unknown.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.experiments import TrialOutcome, aggregate_outcomes
    >>> outcome = TrialOutcome(
    ...     trial=0,
    ...     detected=np.array([1, 4]),
    ...     truth=np.array([], dtype=int),
    ...     p_values={"naive": {1: 0.01, 4: 0.5}},
    ... )
    >>> table = aggregate_outcomes([outcome], methods=["naive"], kind="fpr")
    >>> row = table.row("naive")
    >>> row["num_tested"], row["num_rejected"], row["rate"]
    (2, 1, 0.5)

    ```
    """
    if kind not in METRIC_KINDS:
        msg = f"Incorrect metric kind: {kind}. Valid values are: {METRIC_KINDS}"
        raise InvalidInputError(msg)
    rows = []
    for method in methods:
        num_timed, mean_time = _time_row(outcomes, method)
        if kind == "timing":
            num_tested, num_rejected, rate = num_timed, 0, math.nan
        else:
            pvalues = [p for outcome in outcomes for p in outcome.tested(method, kind)]
            num_tested = len(pvalues)
            num_rejected = sum(p <= alpha for p in pvalues)
            rate = num_rejected / num_tested if num_tested else math.nan
        if num_tested == 0:
            logger.warning(f"{method} has no tested hypothesis: the {kind} is undefined")
        low, high = (
            binomial_interval(num_rejected, num_tested) if kind != "timing" else (math.nan,) * 2
        )
        rows.append(
            {
                "kind": kind,
                "setting": setting,
                "value": None if value is None else float(value),
                "method": method,
                "num_trials": len(outcomes),
                "num_tested": num_tested,
                "num_rejected": int(num_rejected),
                "rate": rate,
                "ci_low": low,
                "ci_high": high,
                "zero_denominator": num_tested == 0,
                "mean_time": mean_time,
                "alpha": float(alpha),
            }
        )
    return MetricsTable(
        pl.DataFrame(rows, schema=SCHEMA), metadata={"kind": kind, "definition": DEFINITIONS[kind]}
    )
