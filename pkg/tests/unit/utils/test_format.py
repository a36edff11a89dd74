from __future__ import annotations

import math

import pytest

from ransacsi.utils.format import format_float, json_float, parse_json_float

##################################
#     Tests for format_float     #
##################################


@pytest.mark.parametrize(
    ("value", "output"),
    [
        (0.1, "0.10000000000000001"),
        (1.0, "1"),
        (-2.5, "-2.5"),
        (1e-20, "9.9999999999999995e-21"),
        (float("inf"), "inf"),
        (float("-inf"), "-inf"),
    ],
)
def test_format_float(value: float, output: str) -> None:
    assert format_float(value) == output


@pytest.mark.parametrize("value", [0.1, 1 / 3, math.pi, -1e-300, 123456789.123456789])
def test_format_float_exact(value: float) -> None:
    assert float(format_float(value)) == value


################################
#     Tests for json_float     #
################################


@pytest.mark.parametrize(
    ("value", "output"), [(1.5, 1.5), (0, 0.0), (float("inf"), "inf"), (float("-inf"), "-inf")]
)
def test_json_float(value: float, output: float | str) -> None:
    assert json_float(value) == output


def test_json_float_returns_float() -> None:
    assert isinstance(json_float(3), float)


######################################
#     Tests for parse_json_float     #
######################################


@pytest.mark.parametrize(
    ("value", "output"), [(1.5, 1.5), ("inf", math.inf), ("-inf", -math.inf)]
)
def test_parse_json_float(value: float | str, output: float) -> None:
    assert parse_json_float(value) == output
