r"""Contain the test statistic, the p-values and the pipeline that tests
the detected anomalies."""

from __future__ import annotations

__all__ = [
    "AnomalyTester",
    "InferenceReport",
    "PValueReport",
    "TestContext",
    "bonferroni_p_value",
    "build_context",
    "line_params",
    "log_gaussian_mass",
    "log_interval_mass",
    "naive_p_value",
    "selective_p_value",
    "test_direction",
]

from ransacsi.inference.direction import TestContext, build_context, line_params, test_direction
from ransacsi.inference.pipeline import AnomalyTester
from ransacsi.inference.pvalue import (
    bonferroni_p_value,
    log_gaussian_mass,
    log_interval_mass,
    naive_p_value,
    selective_p_value,
)
from ransacsi.inference.report import InferenceReport, PValueReport
