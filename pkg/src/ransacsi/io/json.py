r"""Contain functions to save and load the JSON documents: the test
reports, the detection results and the experiment manifests."""

from __future__ import annotations

__all__ = ["dumps", "load_document", "save_document"]

import json
import logging
import math
import re
from typing import TYPE_CHECKING, Any

from coola.utils.path import sanitize_path
from iden.io import load_json, save_text

from ransacsi.utils.format import format_float

if TYPE_CHECKING:
    from pathlib import Path

logger = logging.getLogger(__name__)

# finite floats travel through the json encoder as marked strings
FLOAT_MARK = "\x00"
FLOAT_PATTERN = re.compile(r'"\\u0000([^"]+)"')


def dumps(document: Any) -> str:
    r"""Serialize a JSON compatible document.

    The output does not depend on anything but the document, so two
    runs with the same seed give the same bytes. Floats are written
    with 17 significant digits.

    Args:
        document: The document to serialize. Infinite floats must
            already be encoded as strings.

    Returns:
        The JSON text, terminated by a newline.

    Example usage:

    ```pycon

    >>> from ransacsi.io import dumps
    >>> print(dumps({"index": 3, "region": [["-inf", -1.0]]}), end="")
    {
      "index": 3,
      "region": [
        [
          "-inf",
          -1.0
        ]
      ]
    }

    ```
    """
    text = json.dumps(_mark_floats(document), indent=2, allow_nan=False)
    return FLOAT_PATTERN.sub(r"\1", text) + "\n"


def _json_number(value: float) -> str:
    if not math.isfinite(value):
        msg = f"Out of range float values are not JSON compliant: {value!r}"
        raise ValueError(msg)
    text = format_float(value)
    return text if "." in text or "e" in text else f"{text}.0"


def _mark_floats(document: Any) -> Any:
    if isinstance(document, float):
        return FLOAT_MARK + _json_number(document)
    if isinstance(document, dict):
        return {key: _mark_floats(value) for key, value in document.items()}
    if isinstance(document, (list, tuple)):
        return [_mark_floats(value) for value in document]
    return document


def save_document(document: Any, path: Path | str) -> None:
    r"""Save a JSON compatible document to a file.

    Args:
        document: The document to save.
        path: The path to the JSON file. It is overwritten if it
            exists.
    """
    path = sanitize_path(path)
    logger.info(f"Saving the JSON document to {path}...")
    save_text(dumps(document), path, exist_ok=True)


def load_document(path: Path | str) -> Any:
    r"""Load a JSON document from a file.

    Args:
        path: The path to the JSON file.

    Returns:
        The document.
    """
    path = sanitize_path(path)
    logger.info(f"Loading the JSON document from {path}...")
    return load_json(path)
