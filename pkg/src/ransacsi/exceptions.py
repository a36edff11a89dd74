r"""Contain the exceptions raised by ``ransacsi``."""

from __future__ import annotations

__all__ = [
    "DegenerateDirectionError",
    "InvalidInputError",
    "NoAnomalyError",
    "NoInliersError",
    "NumericMassError",
    "NumericalError",
    "RansacSIError",
    "RegionInconsistencyError",
    "TruncatedSearchError",
]

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ransacsi.intervals import IntervalSet


class RansacSIError(Exception):
    r"""Define the base class of all the exceptions raised by
    ``ransacsi``."""


class InvalidInputError(RansacSIError, ValueError):
    r"""Raised when an input value is not valid.

    Args:
        msg: The error message.
        row: The row associated to the error, if any.
        column: The column associated to the error, if any.
    """

    def __init__(self, msg: str, row: int | None = None, column: str | None = None) -> None:
        super().__init__(msg)
        self.row = row
        self.column = column


class NoInliersError(InvalidInputError):
    r"""Raised when a test requires inliers but all the points are
    anomalies."""


class NoAnomalyError(InvalidInputError):
    r"""Raised when a selection region is requested but no anomaly was
    detected."""


class NumericalError(RansacSIError, ArithmeticError):
    r"""Define the base class of the numerical failures."""


class DegenerateDirectionError(NumericalError):
    r"""Raised when the variance of the test statistic is not
    positive."""


class RegionInconsistencyError(NumericalError):
    r"""Raised when a truncation region does not contain the observed
    statistic or is empty."""


class NumericMassError(NumericalError):
    r"""Raised when the Gaussian mass of a truncation region
    underflows."""


class TruncatedSearchError(NumericalError):
    r"""Raised when the line search exceeds its maximum number of steps.

    Args:
        msg: The error message.
        partial_region: The region found before the search stopped.
    """

    def __init__(self, msg: str, partial_region: IntervalSet) -> None:
        super().__init__(msg)
        self.partial_region = partial_region
