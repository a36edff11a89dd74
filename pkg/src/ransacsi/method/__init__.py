r"""Contain the p-value methods used to test the detected anomalies."""

from __future__ import annotations

__all__ = [
    "CONDITIONAL_METHODS",
    "METHOD_NAMES",
    "BaseMethod",
    "BonferroniMethod",
    "NaiveMethod",
    "NoInferenceMethod",
    "SelectiveMethod",
    "create_method",
    "is_method_config",
    "setup_method",
]

from ransacsi.method.base import BaseMethod, is_method_config, setup_method
from ransacsi.method.baseline import BonferroniMethod, NaiveMethod, NoInferenceMethod
from ransacsi.method.registry import CONDITIONAL_METHODS, METHOD_NAMES, create_method
from ransacsi.method.selective import SelectiveMethod
