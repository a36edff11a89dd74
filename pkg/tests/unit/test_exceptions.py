from __future__ import annotations

import pytest

from ransacsi.exceptions import (
    DegenerateDirectionError,
    InvalidInputError,
    NoAnomalyError,
    NoInliersError,
    NumericalError,
    NumericMassError,
    RansacSIError,
    RegionInconsistencyError,
    TruncatedSearchError,
)
from ransacsi.intervals import IntervalSet

#######################################
#     Tests for InvalidInputError     #
#######################################


def test_invalid_input_error() -> None:
    exc = InvalidInputError("bad cell", row=3, column="x1")
    assert str(exc) == "bad cell"
    assert exc.row == 3
    assert exc.column == "x1"


def test_invalid_input_error_default() -> None:
    exc = InvalidInputError("bad value")
    assert exc.row is None
    assert exc.column is None


def test_invalid_input_error_is_value_error() -> None:
    with pytest.raises(ValueError, match="bad value"):
        raise InvalidInputError("bad value")


@pytest.mark.parametrize("cls", [NoInliersError, NoAnomalyError])
def test_invalid_input_error_subclasses(cls: type) -> None:
    assert issubclass(cls, InvalidInputError)
    assert issubclass(cls, RansacSIError)


####################################
#     Tests for NumericalError     #
####################################


@pytest.mark.parametrize(
    "cls", [DegenerateDirectionError, RegionInconsistencyError, NumericMassError]
)
def test_numerical_error_subclasses(cls: type) -> None:
    assert issubclass(cls, NumericalError)
    assert issubclass(cls, ArithmeticError)
    assert not issubclass(cls, InvalidInputError)


def test_truncated_search_error() -> None:
    region = IntervalSet([(0.0, 1.0)])
    exc = TruncatedSearchError("too many cells", partial_region=region)
    assert isinstance(exc, NumericalError)
    assert exc.partial_region == region
    assert str(exc) == "too many cells"
