r"""Contain utility functions to format numbers for output files."""

from __future__ import annotations

__all__ = ["format_float", "json_float", "parse_json_float"]

import math

FLOAT_FORMAT = ".17g"


def format_float(value: float) -> str:
    r"""Format a float with 17 significant digits.

    17 significant digits are enough to recover the exact binary
    value when the string is parsed.

    Args:
        value: The value to format.

    Returns:
        The formatted value.

    Example usage:

    ```pycon

    >>> from ransacsi.utils.format import format_float
    >>> format_float(0.1)
    '0.10000000000000001'
    >>> format_float(float("-inf"))
    '-inf'

    ```
    """
    return format(float(value), FLOAT_FORMAT)


def json_float(value: float) -> float | str:
    r"""Convert a float to a JSON compatible value.

    JSON has no representation for infinite values so they are
    encoded as the strings ``"inf"`` and ``"-inf"``.

    Args:
        value: The value to convert.

    Returns:
        The value if it is finite, otherwise its string encoding.

    Example usage:

    ```pycon

    >>> from ransacsi.utils.format import json_float
    >>> json_float(1.5)
    1.5
    >>> json_float(float("inf"))
    'inf'

    ```
    """
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def parse_json_float(value: float | str) -> float:
    r"""Invert ``json_float``.

    Args:
        value: The JSON value.

    Returns:
        The float value.

    Example usage:

    ```pycon

    >>> from ransacsi.utils.format import parse_json_float
    >>> parse_json_float("-inf")
    -inf

    ```
    """
    return float(value)
