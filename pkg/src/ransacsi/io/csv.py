r"""Contain functions to read and write datasets in CSV format.

A dataset file has a header, a column named ``y`` with the response,
and numeric feature columns. An optional ``is_anomaly`` column holds
the labels of the planted anomalies and is not a feature. The noise
covariance can be stored in a sidecar file with one comma-separated
row per line.
"""

from __future__ import annotations

__all__ = [
    "LABEL_COLUMN",
    "RESPONSE_COLUMN",
    "read_covariance",
    "read_csv",
    "read_labels",
    "write_dataset_csv",
]

import logging
from typing import TYPE_CHECKING, Any

import numpy as np
import polars as pl
from coola.utils.path import sanitize_path
from grizz.ingestor import CsvIngestor

from ransacsi.exceptions import InvalidInputError
from ransacsi.linreg import Dataset
from ransacsi.utils.factory import setup_object
from ransacsi.utils.format import format_float

if TYPE_CHECKING:
    from pathlib import Path

    from grizz.ingestor import BaseIngestor

logger = logging.getLogger(__name__)

RESPONSE_COLUMN = "y"
LABEL_COLUMN = "is_anomaly"


def _ingest(path: Path | str, ingestor: BaseIngestor | dict | None) -> pl.DataFrame:
    if ingestor is None:
        # every cell is read as a string so the bad cells can be located
        ingestor = CsvIngestor(path, infer_schema_length=0)
    ingestor = setup_object(ingestor)
    try:
        return ingestor.ingest()
    except pl.exceptions.PolarsError as exc:
        msg = f"Malformed CSV file {path}: {exc}"
        raise InvalidInputError(msg) from exc


def _to_numeric(frame: pl.DataFrame) -> pl.DataFrame:
    r"""Cast every column to ``Float64`` and report the first cell that
    cannot be cast."""
    out = {}
    for name in frame.columns:
        column = frame[name]
        if column.dtype == pl.String:
            values = column.str.strip_chars().cast(pl.Float64, strict=False)
        else:
            values = column.cast(pl.Float64, strict=False)
        bad = values.is_null() | values.is_nan()
        if bad.any():
            row = int(bad.arg_true()[0])
            cell = column[row]
            if cell is None or (isinstance(cell, str) and not cell.strip()):
                msg = f"Missing value in column '{name}' at row {row}"
            else:
                msg = f"Non-numeric value {cell!r} in column '{name}' at row {row}"
            raise InvalidInputError(msg, row=row, column=name)
        out[name] = values
    return pl.DataFrame(out)


def read_covariance(path: Path | str, num_samples: int | None = None) -> np.ndarray:
    r"""Read a dense covariance matrix from a sidecar file.

    Args:
        path: The path to the file. Each line is a comma-separated row
            of the matrix.
        num_samples: The expected dimension, if known.

    Returns:
        The covariance matrix.

    Raises:
        InvalidInputError: if the file is malformed or the matrix does
            not have the expected dimension.
    """
    path = sanitize_path(path)
    logger.info(f"Reading the covariance matrix from {path}...")
    try:
        cov = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
    except ValueError as exc:
        msg = f"Malformed covariance file {path}: {exc}"
        raise InvalidInputError(msg) from exc
    if cov.shape[0] != cov.shape[1]:
        msg = f"The covariance matrix must be square (received shape: {cov.shape})"
        raise InvalidInputError(msg)
    if num_samples is not None and cov.shape[0] != num_samples:
        msg = (
            f"Dimension mismatch: the covariance matrix is {cov.shape[0]}x{cov.shape[1]} "
            f"but the dataset has {num_samples} rows"
        )
        raise InvalidInputError(msg)
    return cov


def read_csv(
    path: Path | str,
    covariance_path: Path | str | None = None,
    ingestor: BaseIngestor | dict | None = None,
) -> Dataset:
    r"""Read a dataset from a CSV file.

    Args:
        path: The path to the CSV file.
        covariance_path: The path to the covariance sidecar file. If
            ``None``, the covariance of the dataset is unknown.
        ingestor: The ingestor or its configuration. ``None`` means a
            ``grizz.ingestor.CsvIngestor`` reading ``path``.

    Returns:
        The dataset. The features keep the order of the columns.

    Raises:
        InvalidInputError: if the ``y`` column is missing, if a cell is
            not numeric, or if the covariance does not match the
            dataset.

    Example usage:

    ```pycon

    >>> import tempfile
    >>> from pathlib import Path
    >>> from ransacsi.io import read_csv
    >>> with tempfile.TemporaryDirectory() as tmpdir:
    ...     path = Path(tmpdir).joinpath("data.csv")
    ...     _ = path.write_text("y,x1,x2\n1.0,0.5,2\n2.0,1.5,3\n3.0,2.5,4\n")
    ...     data = read_csv(path)
    ...
    >>> data.num_samples, data.num_features
    (3, 2)

    ```
    """
    path = sanitize_path(path)
    logger.info(f"Reading the dataset from {path}...")
    frame = _ingest(path, ingestor)
    if RESPONSE_COLUMN not in frame.columns:
        msg = (
            f"The CSV file {path} must have a column named '{RESPONSE_COLUMN}' "
            f"(received columns: {frame.columns})"
        )
        raise InvalidInputError(msg, column=RESPONSE_COLUMN)
    features = [c for c in frame.columns if c not in (RESPONSE_COLUMN, LABEL_COLUMN)]
    if not features:
        msg = f"The CSV file {path} has no feature column"
        raise InvalidInputError(msg)
    frame = _to_numeric(frame.select([RESPONSE_COLUMN, *features]))
    sigma = None
    if covariance_path is not None:
        sigma = read_covariance(covariance_path, num_samples=frame.shape[0])
    return Dataset(
        X=frame.select(features).to_numpy().astype(np.float64),
        Y=frame[RESPONSE_COLUMN].to_numpy().astype(np.float64),
        Sigma=sigma,
    )


def read_labels(path: Path | str) -> np.ndarray | None:
    r"""Read the planted anomalies of a CSV file.

    Args:
        path: The path to the CSV file.

    Returns:
        The sorted indices of the rows whose ``is_anomaly`` value is
            1, or ``None`` if the file has no ``is_anomaly`` column.
    """
    frame = _ingest(sanitize_path(path), None)
    if LABEL_COLUMN not in frame.columns:
        return None
    labels = _to_numeric(frame.select(LABEL_COLUMN))[LABEL_COLUMN].to_numpy()
    return np.flatnonzero(labels == 1)


def write_dataset_csv(
    data: Dataset, path: Path | str, truth: np.ndarray | None = None
) -> None:
    r"""Write a dataset to a CSV file.

    The columns are ``y``, ``x1``, ..., ``xp`` and, if ``truth`` is
    given, ``is_anomaly``. The floats are written with 17 significant
    digits.

    Args:
        data: The dataset.
        path: The path to the CSV file.
        truth: The indices of the planted anomalies, if any.
    """
    path = sanitize_path(path)
    columns: dict[str, Any] = {
        RESPONSE_COLUMN: [format_float(v) for v in data.Y],
    }
    for j in range(data.num_features):
        columns[f"x{j + 1}"] = [format_float(v) for v in data.X[:, j]]
    if truth is not None:
        labels = np.zeros(data.num_samples, dtype=np.int64)
        labels[np.asarray(truth, dtype=np.int64)] = 1
        columns[LABEL_COLUMN] = labels
    path.parent.mkdir(parents=True, exist_ok=True)
    logger.info(f"Writing the dataset to {path}...")
    pl.DataFrame(columns).write_csv(path)
