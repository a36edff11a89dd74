r"""Contain the JSON schema of the test reports."""

from __future__ import annotations

__all__ = ["REPORT_SCHEMA_PATH", "load_report_schema"]

from pathlib import Path
from typing import Any

from iden.io import load_json

REPORT_SCHEMA_PATH = Path(__file__).parent.joinpath("report.schema.json")


def load_report_schema() -> dict[str, Any]:
    r"""Load the JSON schema of the test reports.

    Returns:
        The schema.

    Example usage:

    ```pycon

    >>> from ransacsi.schema import load_report_schema
    >>> schema = load_report_schema()
    >>> schema["$defs"]["record"]["required"]
    ['index', 'method', 'p_value', 'z_obs', 'var', 'region']

    ```
    """
    return load_json(REPORT_SCHEMA_PATH)
