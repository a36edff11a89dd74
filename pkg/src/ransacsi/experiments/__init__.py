r"""Contain the synthetic data generators and the Monte Carlo harnesses."""

from __future__ import annotations

__all__ = [
    "COVARIANCE_KINDS",
    "DEFAULT_METHODS",
    "DEFAULT_SWEEPS",
    "DEFAULT_TRIALS",
    "METRIC_KINDS",
    "MetricsTable",
    "NOISE_KINDS",
    "SWEEP_PARAMETERS",
    "SyntheticSpec",
    "TrialOutcome",
    "aggregate_outcomes",
    "binomial_interval",
    "build_manifest",
    "covariance_matrix",
    "estimate_noise_variance",
    "estimate_sigma",
    "gen_synthetic",
    "noise_sample",
    "run_experiment",
    "run_fpr_experiment",
    "run_from_manifest",
    "run_timing",
    "run_tpr_experiment",
    "run_trial",
]

from ransacsi.experiments.metrics import (
    METRIC_KINDS,
    MetricsTable,
    TrialOutcome,
    aggregate_outcomes,
    binomial_interval,
)
from ransacsi.experiments.runner import (
    DEFAULT_METHODS,
    DEFAULT_SWEEPS,
    DEFAULT_TRIALS,
    SWEEP_PARAMETERS,
    build_manifest,
    run_experiment,
    run_fpr_experiment,
    run_from_manifest,
    run_timing,
    run_tpr_experiment,
    run_trial,
)
from ransacsi.experiments.synthetic import (
    COVARIANCE_KINDS,
    NOISE_KINDS,
    SyntheticSpec,
    covariance_matrix,
    estimate_noise_variance,
    estimate_sigma,
    gen_synthetic,
    noise_sample,
)
