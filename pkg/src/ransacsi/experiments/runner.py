r"""Implement the Monte Carlo harnesses that measure the false positive
rate, the true positive rate and the running time of the p-value
methods on synthetic data."""

from __future__ import annotations

__all__ = [
    "DEFAULT_METHODS",
    "DEFAULT_SWEEPS",
    "DEFAULT_TRIALS",
    "SWEEP_PARAMETERS",
    "build_manifest",
    "run_experiment",
    "run_fpr_experiment",
    "run_from_manifest",
    "run_timing",
    "run_tpr_experiment",
    "run_trial",
]

import logging
from dataclasses import replace
from typing import TYPE_CHECKING, Any

import polars as pl
from joblib import Parallel, delayed

from ransacsi.exceptions import InvalidInputError
from ransacsi.experiments.metrics import MetricsTable, TrialOutcome, aggregate_outcomes
from ransacsi.experiments.synthetic import SyntheticSpec, estimate_noise_variance, gen_synthetic
from ransacsi.inference.pipeline import AnomalyTester
from ransacsi.method.base import setup_method
from ransacsi.ransac import RansacConfig
from ransacsi.utils.imports import is_tqdm_available
from ransacsi.utils.random import derive_seed

if is_tqdm_available():
    from tqdm import tqdm
else:  # pragma: no cover
    from grizz.utils.noop import tqdm

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 1000
DEFAULT_METHODS = {
    "fpr": ("ctrl", "oc", "naive", "bonferroni", "no_inference"),
    "tpr": ("ctrl", "oc", "bonferroni"),
    "timing": ("ctrl", "line_search"),
}
SWEEP_PARAMETERS = ("n", "delta", "B", "p", "tau")
DEFAULT_SWEEPS = {
    "n": (50, 100, 150, 200, 250),
    "delta": (1.0, 2.0, 3.0, 4.0, 5.0),
    "B": (5, 10, 15, 20, 25),
    "p": (1, 3, 5, 7, 9),
    "tau": (1.0, 1.5, 2.0, 2.5, 3.0),
}


def run_trial(
    spec: SyntheticSpec,
    cfg: RansacConfig,
    methods: Sequence[str | dict],
    trial: int,
    estimate_variance: bool = False,
    share_tables: bool = True,
) -> TrialOutcome:
    r"""Run one Monte Carlo trial.

    The dataset and the RANSAC subsets of the trial use two streams
    derived from the seed of ``spec`` and the trial index, so a trial
    gives the same outcome whichever worker runs it.

    Args:
        spec: The synthetic data settings. Its seed is the
            master seed.
        cfg: The RANSAC configuration. Its seed is ignored.
        methods: The p-value methods, as names or configurations.
        trial: The index of the trial.
        estimate_variance: If ``True``, the noise covariance is
            replaced by its estimate ``sigma^2 * I``.
        share_tables: If ``True``, the conditional methods share the
            inlier region table of each anomaly.

    Returns:
        The outcome of the trial.
    """
    data, truth = gen_synthetic(spec.replace(seed=derive_seed(spec.seed, trial)))
    if estimate_variance:
        data = data.with_covariance(estimate_noise_variance(data))
    tester = AnomalyTester(
        replace(cfg, seed=derive_seed(spec.seed, trial, 1)),
        methods=methods,
        share_tables=share_tables,
        strict=False,
    )
    report = tester.test(data)
    names = [method.name for method in tester.methods]
    wall_times = {name: [] for name in names}
    for pvalue in report.reports:
        wall_times[pvalue.method].append(pvalue.elapsed)
    return TrialOutcome(
        trial=trial,
        detected=report.detection.anomalies,
        truth=truth,
        p_values={name: report.p_values(name) for name in names},
        wall_times=wall_times,
        warnings=report.warnings,
    )


def _run_trials(
    spec: SyntheticSpec,
    cfg: RansacConfig,
    methods: Sequence[str | dict],
    trials: int,
    workers: int = 1,
    estimate_variance: bool = False,
    share_tables: bool = True,
    show_progress: bool = False,
) -> list[TrialOutcome]:
    if trials < 1:
        msg = f"trials must be at least 1 (received: {trials})"
        raise InvalidInputError(msg)
    logger.info(f"Running {trials:,} trials with {workers} worker(s)...")
    indices = tqdm(range(trials), desc="trials", disable=not show_progress)
    # joblib returns the outcomes in the order of the trials
    return Parallel(n_jobs=workers)(
        delayed(run_trial)(spec, cfg, methods, trial, estimate_variance, share_tables)
        for trial in indices
    )


def _method_names(methods: Sequence[str | dict]) -> list[str]:
    return [setup_method(method).name for method in methods]


def run_fpr_experiment(
    spec: SyntheticSpec,
    cfg: RansacConfig,
    methods: Sequence[str | dict] = DEFAULT_METHODS["fpr"],
    trials: int = DEFAULT_TRIALS,
    alpha: float = 0.05,
    workers: int = 1,
    estimate_variance: bool = False,
    show_progress: bool = False,
) -> MetricsTable:
    r"""Measure the false positive rate of the methods under the null.

    Every detection is a false positive because no anomaly is planted
    with a shift. The rate of a method is the number of tested
    detections with a p-value lower than or equal to ``alpha``
    divided by the number of tested detections, pooled over the
    trials.

    Args:
        spec: The synthetic data settings. ``delta``
            must be 0.
        cfg: The RANSAC configuration.
        methods: The p-value methods.
        trials: The number of trials.
        alpha: The significance level.
        workers: The number of parallel workers.
        estimate_variance: If ``True``, the noise covariance is
            estimated in every trial.
        show_progress: If ``True``, a progress bar is shown.

    Returns:
        The metrics table with one row per method.

    Raises:
        InvalidInputError: if ``delta`` is not 0 or ``alpha`` is not
            in ``(0, 1)``.

    Example usage:

    ```pycon

    >>> from ransacsi.experiments import SyntheticSpec, run_fpr_experiment
    >>> from ransacsi.ransac import RansacConfig
    >>> table = run_fpr_experiment(
    ...     SyntheticSpec(n=20, p=2), RansacConfig(num_iterations=3), ["naive"], trials=2
    ... )
    >>> table.methods
    ['naive']

    ```
    """
    if spec.delta != 0:
        msg = f"the FPR experiment requires delta=0 (received: {spec.delta})"
        raise InvalidInputError(msg)
    _check_alpha(alpha)
    outcomes = _run_trials(
        spec,
        cfg,
        methods,
        trials,
        workers=workers,
        estimate_variance=estimate_variance,
        show_progress=show_progress,
    )
    return aggregate_outcomes(outcomes, _method_names(methods), kind="fpr", alpha=alpha)


def run_tpr_experiment(
    spec: SyntheticSpec,
    cfg: RansacConfig,
    methods: Sequence[str | dict] = DEFAULT_METHODS["tpr"],
    trials: int = DEFAULT_TRIALS,
    alpha: float = 0.05,
    workers: int = 1,
    estimate_variance: bool = False,
    show_progress: bool = False,
) -> MetricsTable:
    r"""Measure the true positive rate of the methods.

    The rate of a method is the number of planted anomalies that are
    detected and rejected at level ``alpha`` divided by the number of
    planted anomalies that are detected, pooled over the trials.

    Args:
        spec: The synthetic data settings. ``delta``
            must be positive.
        cfg: The RANSAC configuration.
        methods: The p-value methods.
        trials: The number of trials.
        alpha: The significance level.
        workers: The number of parallel workers.
        estimate_variance: If ``True``, the noise covariance is
            estimated in every trial.
        show_progress: If ``True``, a progress bar is shown.

    Returns:
        The metrics table with one row per method.

    Raises:
        InvalidInputError: if ``delta`` is not positive or ``alpha``
            is not in ``(0, 1)``.
    """
    if not spec.delta > 0:
        msg = f"the TPR experiment requires delta > 0 (received: {spec.delta})"
        raise InvalidInputError(msg)
    _check_alpha(alpha)
    outcomes = _run_trials(
        spec,
        cfg,
        methods,
        trials,
        workers=workers,
        estimate_variance=estimate_variance,
        show_progress=show_progress,
    )
    return aggregate_outcomes(outcomes, _method_names(methods), kind="tpr", alpha=alpha)


def run_timing(
    spec: SyntheticSpec,
    cfg: RansacConfig,
    methods: Sequence[str | dict] = DEFAULT_METHODS["timing"],
    trials: int = 100,
    show_progress: bool = False,
) -> MetricsTable:
    r"""Measure the mean wall-clock time per tested anomaly of the
    methods.

    The trials run on one worker and every method computes its own
    inlier region table, so the times are comparable.

    Args:
        spec: The synthetic data settings.
        cfg: The RANSAC configuration.
        methods: The p-value methods.
        trials: The number of trials.
        show_progress: If ``True``, a progress bar is shown.

    Returns:
        The metrics table with one row per method. The time is in the
            ``mean_time`` column.
    """
    outcomes = _run_trials(
        spec, cfg, methods, trials, workers=1, share_tables=False, show_progress=show_progress
    )
    return aggregate_outcomes(outcomes, _method_names(methods), kind="timing")


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        msg = f"alpha must be in (0, 1) (received: {alpha})"
        raise InvalidInputError(msg)


def _apply_setting(
    spec: SyntheticSpec, cfg: RansacConfig, setting: str, value: float
) -> tuple[SyntheticSpec, RansacConfig]:
    if setting == "n":
        return spec.replace(n=int(value)), cfg
    if setting == "delta":
        return spec.replace(delta=float(value)), cfg
    if setting == "p":
        return spec.replace(p=int(value), beta_star=None), cfg
    if setting == "B":
        return spec, replace(cfg, num_iterations=int(value))
    if setting == "tau":
        return spec, replace(cfg, tau=float(value))
    msg = f"Incorrect sweep parameter: {setting}. Valid values are: {SWEEP_PARAMETERS}"
    raise InvalidInputError(msg)


def run_experiment(
    kind: str,
    spec: SyntheticSpec,
    cfg: RansacConfig,
    methods: Sequence[str | dict] | None = None,
    trials: int = DEFAULT_TRIALS,
    alpha: float = 0.05,
    setting: str | None = None,
    values: Sequence[float] | None = None,
    workers: int = 1,
    estimate_variance: bool = False,
    show_progress: bool = False,
) -> MetricsTable:
    r"""Run an experiment, optionally sweeping one parameter.

    Args:
        kind: The kind of experiment, ``"fpr"``, ``"tpr"`` or
            ``"timing"``.
        spec: The synthetic data settings.
        cfg: The RANSAC configuration.
        methods: The p-value methods. ``None`` means the default
            methods of the experiment.
        trials: The number of trials per setting.
        alpha: The significance level.
        setting: The swept parameter, one of ``n``, ``delta``, ``B``,
            ``p`` and ``tau``. ``None`` means no sweep.
        values: The values of the swept parameter. ``None`` means the
            default grid of the parameter.
        workers: The number of parallel workers. Ignored by the timing
            experiment.
        estimate_variance: If ``True``, the noise covariance is
            estimated in every trial.
        show_progress: If ``True``, a progress bar is shown.

    Returns:
        The metrics table with one row per method and setting.

    Raises:
        InvalidInputError: if the kind or the swept parameter is
            unknown.
    """
    if kind not in DEFAULT_METHODS:
        msg = f"Incorrect experiment: {kind}. Valid values are: {tuple(DEFAULT_METHODS)}"
        raise InvalidInputError(msg)
    methods = DEFAULT_METHODS[kind] if methods is None else tuple(methods)

    def run_one(s: SyntheticSpec, c: RansacConfig) -> MetricsTable:
        if kind == "timing":
            return run_timing(s, c, methods, trials=trials, show_progress=show_progress)
        fn = run_fpr_experiment if kind == "fpr" else run_tpr_experiment
        return fn(
            s,
            c,
            methods,
            trials=trials,
            alpha=alpha,
            workers=workers,
            estimate_variance=estimate_variance,
            show_progress=show_progress,
        )

    if setting is None:
        return run_one(spec, cfg)
    if values is None:
        values = DEFAULT_SWEEPS.get(setting, ())
    tables = []
    for value in values:
        logger.info(f"Running the {kind} experiment with {setting}={value}...")
        s, c = _apply_setting(spec, cfg, setting, value)
        table = run_one(s, c)
        frame = table.frame.with_columns(
            setting=pl.lit(setting, dtype=pl.String), value=pl.lit(float(value))
        )
        tables.append(MetricsTable(frame, metadata=table.metadata))
    return MetricsTable.concat(tables)


def build_manifest(
    kind: str,
    spec: SyntheticSpec,
    cfg: RansacConfig,
    methods: Sequence[str | dict] | None = None,
    trials: int = DEFAULT_TRIALS,
    alpha: float = 0.05,
    setting: str | None = None,
    values: Sequence[float] | None = None,
    estimate_variance: bool = False,
) -> dict[str, Any]:
    r"""Build the manifest of an experiment.

    The manifest is a JSON compatible dictionary with the full
    configuration and the master seed, from which
    ``run_from_manifest`` reruns the experiment.

    Example usage:

    ```pycon

    >>> from ransacsi.experiments import SyntheticSpec, build_manifest
    >>> from ransacsi.ransac import RansacConfig
    >>> manifest = build_manifest("fpr", SyntheticSpec(seed=3), RansacConfig(), trials=10)
    >>> manifest["kind"], manifest["seed"], manifest["trials"]
    ('fpr', 3, 10)

    ```
    """
    if setting is not None and values is None:
        values = DEFAULT_SWEEPS.get(setting, ())
    return {
        "kind": kind,
        "seed": spec.seed,
        "spec": spec.to_dict(),
        "ransac": cfg.to_dict(),
        "methods": list(DEFAULT_METHODS.get(kind, ()) if methods is None else methods),
        "trials": int(trials),
        "alpha": float(alpha),
        "setting": setting,
        "values": None if values is None else [float(v) for v in values],
        "estimate_variance": bool(estimate_variance),
    }


def run_from_manifest(
    manifest: dict[str, Any], workers: int = 1, show_progress: bool = False
) -> MetricsTable:
    r"""Rerun an experiment from its manifest.

    Args:
        manifest: The manifest built by ``build_manifest``.
        workers: The number of parallel workers.
        show_progress: If ``True``, a progress bar is shown.

    Returns:
        The metrics table, identical to the table of the original run.

    Raises:
        InvalidInputError: if the manifest is malformed.
    """
    try:
        kind = manifest["kind"]
        spec = SyntheticSpec.from_dict(manifest["spec"])
        cfg = RansacConfig(**manifest["ransac"])
        trials = manifest["trials"]
    except (KeyError, TypeError) as exc:
        msg = f"The experiment manifest is malformed: {exc}"
        raise InvalidInputError(msg) from exc
    return run_experiment(
        kind,
        spec,
        cfg,
        methods=manifest.get("methods"),
        trials=trials,
        alpha=manifest.get("alpha", 0.05),
        setting=manifest.get("setting"),
        values=manifest.get("values"),
        workers=workers,
        estimate_variance=manifest.get("estimate_variance", False),
        show_progress=show_progress,
    )
