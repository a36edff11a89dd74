r"""Contain utility functions."""

from __future__ import annotations

__all__ = ["setup_object"]

from ransacsi.utils.factory import setup_object
