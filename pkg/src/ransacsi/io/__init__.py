r"""Contain the functions to read and write the input and output
files."""

from __future__ import annotations

__all__ = [
    "LABEL_COLUMN",
    "RESPONSE_COLUMN",
    "dumps",
    "load_document",
    "read_covariance",
    "read_csv",
    "read_labels",
    "save_document",
    "write_dataset_csv",
]

from ransacsi.io.csv import (
    LABEL_COLUMN,
    RESPONSE_COLUMN,
    read_covariance,
    read_csv,
    read_labels,
    write_dataset_csv,
)
from ransacsi.io.json import dumps, load_document, save_document
