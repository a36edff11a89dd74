r"""Define some utility functions for testing."""

from __future__ import annotations

__all__ = ["colorlog_available", "tqdm_available"]

import pytest

from ransacsi.utils.imports import is_colorlog_available, is_tqdm_available

colorlog_available = pytest.mark.skipif(not is_colorlog_available(), reason="requires colorlog")
tqdm_available = pytest.mark.skipif(not is_tqdm_available(), reason="requires tqdm")
