r"""Implement the command line interface of ``ransacsi``.

The commands are:

- ``detect``: detect the anomalies of a CSV dataset with RANSAC.
- ``test``: detect the anomalies and compute their p-values.
- ``gen``: generate a synthetic CSV dataset with planted anomalies.
- ``experiment``: run a Monte Carlo experiment (``fpr``, ``tpr`` or
  ``timing``), optionally sweeping one parameter.

The exit status is 0 on success, 2 if no anomaly is detected, 3 on an
input error and 4 on a numerical failure.
"""

from __future__ import annotations

__all__ = [
    "EXIT_EMPTY",
    "EXIT_INPUT_ERROR",
    "EXIT_NUMERIC_ERROR",
    "EXIT_SUCCESS",
    "RunConfig",
    "build_parser",
    "cmd_detect",
    "cmd_experiment",
    "cmd_gen",
    "cmd_test",
    "main",
    "parse_values",
    "resolve_sigma",
]

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
import polars as pl
from scipy.linalg import toeplitz

from ransacsi.exceptions import InvalidInputError, NumericalError
from ransacsi.experiments import (
    DEFAULT_METHODS,
    DEFAULT_TRIALS,
    NOISE_KINDS,
    SWEEP_PARAMETERS,
    SyntheticSpec,
    build_manifest,
    covariance_matrix,
    estimate_sigma,
    gen_synthetic,
    run_experiment,
    run_from_manifest,
)
from ransacsi.inference import AnomalyTester
from ransacsi.io import dumps, load_document, read_csv, save_document, write_dataset_csv
from ransacsi.method import METHOD_NAMES, create_method
from ransacsi.ransac import RansacConfig, detect
from ransacsi.utils.format import format_float
from ransacsi.utils.logging import configure_logging

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ransacsi.experiments import MetricsTable
    from ransacsi.inference import InferenceReport
    from ransacsi.linreg import Dataset
    from ransacsi.method import BaseMethod
    from ransacsi.ransac import DetectionResult

logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_EMPTY = 2
EXIT_INPUT_ERROR = 3
EXIT_NUMERIC_ERROR = 4

SEED_ENV = "RANSACSI_SEED"
COMMANDS = ("detect", "test", "gen", "experiment")
SIGMA_SOURCES = ("identity", "scaled", "correlated", "estimate", "file")
FORMATS = ("json", "csv")
EXPERIMENTS = ("fpr", "tpr", "timing")
# command line option -> name of the swept parameter
SWEEP_OPTIONS = {"n": "n", "delta": "delta", "num_iterations": "B", "p": "p", "tau": "tau"}


def default_seed() -> int:
    r"""Return the default seed, read from the ``RANSACSI_SEED``
    environment variable.

    Returns:
        The seed, or 0 if the variable is not set.

    Raises:
        InvalidInputError: if the variable is not an integer.
    """
    value = os.environ.get(SEED_ENV, "").strip()
    if not value:
        return 0
    try:
        return int(value)
    except ValueError as exc:
        msg = f"{SEED_ENV} must be an integer (received: {value!r})"
        raise InvalidInputError(msg) from exc


def parse_values(text: str, step: float | None = None) -> float | list[float]:
    r"""Parse the value of a numeric option.

    Args:
        text: A number (``"3"``), a comma-separated list
            (``"1,2,5"``) or an inclusive range (``"50..250"``).
        step: The step of a range. ``None`` means 1.

    Returns:
        The number, or the list of values of a list or a range.

    Raises:
        InvalidInputError: if the text is not a valid value.

    Example usage:

    ```pycon

    >>> from ransacsi.cli import parse_values
    >>> parse_values("50..250", step=50)
    [50.0, 100.0, 150.0, 200.0, 250.0]
    >>> parse_values("1,2.5")
    [1.0, 2.5]
    >>> parse_values("3")
    3.0

    ```
    """
    try:
        if ".." in text:
            start, stop = (float(v) for v in text.split("..", maxsplit=1))
        elif "," in text:
            return [float(v) for v in text.split(",") if v.strip()]
        else:
            return float(text)
    except ValueError as exc:
        msg = f"Invalid numeric value: {text!r}"
        raise InvalidInputError(msg) from exc
    step = 1.0 if step is None else float(step)
    if step <= 0 or stop < start:
        msg = f"Invalid range {text!r} with step {step}"
        raise InvalidInputError(msg)
    count = math.floor((stop - start) / step + 1e-9) + 1
    return [round(start + k * step, 12) for k in range(count)]


@dataclass(frozen=True)
class RunConfig:
    r"""Define the configuration of a command.

    Args:
        command: The command, ``detect``, ``test``, ``gen`` or
            ``experiment``.
        input: The path to the input CSV file.
        output: The path to the output file, or directory for
            ``experiment``. ``None`` means the standard output.
        methods: The p-value methods.
        alpha: The significance level of the experiments.
        ransac: The RANSAC configuration.
        sigma: The source of the noise covariance: ``identity``,
            ``scaled`` (``sigma_value * I``), ``correlated``
            (``sigma_value^|i-j|``), ``estimate`` or ``file``.
        sigma_value: The variance of ``scaled`` or the correlation of
            ``correlated``.
        covariance: The path to the covariance sidecar file.
        output_format: The output format, ``json`` or ``csv``.
        range_sd: The half-width of the line-search range in standard
            deviations. ``None`` means the default.
        trials: The number of Monte Carlo trials.
        spec: The synthetic data settings.
        experiment: The experiment, ``fpr``, ``tpr`` or ``timing``.
        setting: The swept parameter, if any.
        values: The values of the swept parameter.
        workers: The number of parallel workers.
        estimate_variance: If ``True``, the experiments estimate the
            noise variance.
        manifest: The manifest to rerun an experiment from.

    Raises:
        InvalidInputError: if a value is not valid.
    """

    command: str
    input: Path | None = None
    output: Path | None = None
    methods: tuple[str, ...] = ("ctrl",)
    alpha: float = 0.05
    ransac: RansacConfig = field(default_factory=RansacConfig)
    sigma: str = "identity"
    sigma_value: float | None = None
    covariance: Path | None = None
    output_format: str = "json"
    range_sd: float | None = None
    trials: int = DEFAULT_TRIALS
    spec: SyntheticSpec = field(default_factory=SyntheticSpec)
    experiment: str = "fpr"
    setting: str | None = None
    values: tuple[float, ...] | None = None
    workers: int = 1
    estimate_variance: bool = False
    manifest: Path | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            msg = f"Incorrect command: {self.command}. Valid values are: {COMMANDS}"
            raise InvalidInputError(msg)
        if not 0.0 < self.alpha < 1.0:
            msg = f"alpha must be in (0, 1) (received: {self.alpha})"
            raise InvalidInputError(msg)
        if self.sigma not in SIGMA_SOURCES:
            msg = f"Incorrect sigma source: {self.sigma}. Valid values are: {SIGMA_SOURCES}"
            raise InvalidInputError(msg)
        if self.sigma in ("scaled", "correlated") and self.sigma_value is None:
            msg = f"--sigma-value is required with --sigma {self.sigma}"
            raise InvalidInputError(msg)
        if self.sigma == "file" and self.covariance is None:
            msg = "--covariance is required with --sigma file"
            raise InvalidInputError(msg)
        if self.output_format not in FORMATS:
            msg = f"Incorrect format: {self.output_format}. Valid values are: {FORMATS}"
            raise InvalidInputError(msg)
        unknown = sorted(set(self.methods).difference(METHOD_NAMES))
        if unknown:
            msg = f"Incorrect methods: {unknown}. Valid names are: {METHOD_NAMES}"
            raise InvalidInputError(msg)
        if self.command in ("detect", "test"):
            if self.input is None:
                msg = f"An input CSV file is required by the {self.command} command"
                raise InvalidInputError(msg)
            if not self.input.is_file():
                msg = f"The input file does not exist: {self.input}"
                raise InvalidInputError(msg)
        if self.covariance is not None and not self.covariance.is_file():
            msg = f"The covariance file does not exist: {self.covariance}"
            raise InvalidInputError(msg)
        if self.command == "gen" and self.output is None:
            msg = "An output path is required by the gen command"
            raise InvalidInputError(msg)
        if self.trials < 1:
            msg = f"trials must be at least 1 (received: {self.trials})"
            raise InvalidInputError(msg)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        r"""Build the configuration from the parsed command line
        arguments."""
        command = args.command
        common: dict[str, Any] = {
            "command": command,
            "output": _path(getattr(args, "output", None)),
            "output_format": getattr(args, "format", "json"),
        }
        if command in ("detect", "test"):
            sigma = args.sigma or ("file" if args.covariance else "identity")
            return cls(
                **common,
                input=_path(args.input),
                methods=tuple(args.method),
                ransac=RansacConfig(
                    num_iterations=args.num_iterations,
                    tau=args.tau,
                    subset_size=args.subset_size,
                    seed=_seed(args.seed),
                ),
                sigma=sigma,
                sigma_value=args.sigma_value,
                covariance=_path(args.covariance),
                range_sd=args.range_sd,
            )
        if command == "gen":
            return cls(**common, spec=_spec_from_args(args, scalars={}))

        if args.from_manifest:
            return cls(**common, manifest=_path(args.from_manifest), workers=args.workers)
        setting, values, scalars = _experiment_values(args)
        ransac = RansacConfig(
            num_iterations=int(scalars.get("num_iterations", 15)),
            tau=float(scalars.get("tau", 2.0)),
            subset_size=args.subset_size,
        )
        return cls(
            **common,
            methods=tuple(args.method or DEFAULT_METHODS[args.experiment]),
            alpha=args.alpha,
            ransac=ransac,
            trials=args.trials,
            spec=_spec_from_args(args, scalars=scalars),
            experiment=args.experiment,
            setting=setting,
            values=None if values is None else tuple(values),
            workers=args.workers,
            estimate_variance=args.estimate_variance,
        )


def _path(value: str | None) -> Path | None:
    return None if value is None else Path(value).expanduser().resolve()


def _seed(value: int | None) -> int:
    return default_seed() if value is None else value


def _spec_from_args(args: argparse.Namespace, scalars: dict[str, float]) -> SyntheticSpec:
    if args.command == "gen":
        scalars = {"n": args.n, "p": args.p, "delta": args.delta}
    covariance = "correlation" if args.rho is not None else "independence"
    return SyntheticSpec(
        n=int(scalars.get("n", 100)),
        p=int(scalars.get("p", 5)),
        covariance=covariance,
        rho=0.5 if args.rho is None else args.rho,
        noise=args.noise,
        anomaly_count=args.anomaly_count,
        delta=float(scalars.get("delta", 0.0)),
        seed=_seed(args.seed),
    )


def _experiment_values(
    args: argparse.Namespace,
) -> tuple[str | None, list[float] | None, dict[str, float]]:
    r"""Split the experiment options into the swept parameter, its
    values and the scalar parameters."""
    setting, values, scalars = None, None, {}
    for option, name in SWEEP_OPTIONS.items():
        text = getattr(args, option)
        if text is None:
            continue
        parsed = parse_values(text, args.step)
        if isinstance(parsed, list):
            if setting is not None:
                msg = f"Only one parameter can be swept (received: {setting} and {name})"
                raise InvalidInputError(msg)
            setting, values = name, parsed
        else:
            scalars[option] = parsed
    if args.vary is not None:
        if setting is not None and setting != args.vary:
            msg = f"Only one parameter can be swept (received: {setting} and {args.vary})"
            raise InvalidInputError(msg)
        setting = args.vary
        if args.values is not None:
            parsed = parse_values(args.values, args.step)
            values = parsed if isinstance(parsed, list) else [parsed]
    if args.experiment == "tpr" and "delta" not in scalars and setting != "delta":
        scalars["delta"] = 3.0
    return setting, values, scalars


def resolve_sigma(data: Dataset, cfg: RunConfig) -> Dataset:
    r"""Attach the noise covariance selected by the configuration to a
    dataset.

    Args:
        data: The dataset.
        cfg: The configuration.

    Returns:
        The dataset with its covariance.

    Raises:
        InvalidInputError: if the covariance cannot be built.
    """
    if cfg.sigma == "file":
        return data
    if cfg.sigma == "identity":
        return data.with_covariance(1.0)
    if cfg.sigma == "scaled":
        return data.with_covariance(float(cfg.sigma_value))
    if cfg.sigma == "correlated":
        return data.with_covariance(toeplitz(cfg.sigma_value ** np.arange(data.num_samples)))
    logger.info("Estimating the noise covariance...")
    return data.with_covariance(estimate_sigma(data))


def _methods(cfg: RunConfig) -> list[BaseMethod]:
    methods = []
    for name in cfg.methods:
        if name == "line_search" and cfg.range_sd is not None:
            methods.append(create_method(name, range_sd=cfg.range_sd))
        else:
            methods.append(create_method(name))
    return methods


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text)
    logger.info(f"The output was written to {output}")


def _csv_text(frame: pl.DataFrame) -> str:
    frame = frame.with_columns(
        [
            pl.col(name).map_elements(format_float, return_dtype=pl.String)
            for name, dtype in frame.schema.items()
            if dtype == pl.Float64
        ]
    )
    return frame.write_csv()


def cmd_detect(cfg: RunConfig) -> DetectionResult:
    r"""Detect the anomalies of the input dataset and emit the detection
    result.

    Args:
        cfg: The configuration.

    Returns:
        The detection result.
    """
    data = read_csv(cfg.input, covariance_path=cfg.covariance)
    result = detect(data, cfg.ransac)
    if cfg.output_format == "json":
        _emit(dumps(result.to_dict()), cfg.output)
    else:
        labels = np.zeros(data.num_samples, dtype=np.int64)
        labels[result.anomalies] = 1
        frame = pl.DataFrame({"index": np.arange(data.num_samples), "is_anomaly": labels})
        _emit(_csv_text(frame), cfg.output)
    return result


def cmd_test(cfg: RunConfig) -> InferenceReport:
    r"""Detect the anomalies of the input dataset, compute the p-value of
    each anomaly with each method, and emit one record per anomaly and
    method.

    Args:
        cfg: The configuration.

    Returns:
        The inference report.
    """
    data = resolve_sigma(read_csv(cfg.input, covariance_path=cfg.covariance), cfg)
    report = AnomalyTester(cfg.ransac, methods=_methods(cfg)).test(data)
    if cfg.output_format == "json":
        _emit(dumps(report.to_dict()), cfg.output)
    else:
        records = report.to_records()
        frame = pl.DataFrame(
            {
                "index": [r["index"] for r in records],
                "method": [r["method"] for r in records],
                "p_value": [r["p_value"] for r in records],
                "z_obs": [r["z_obs"] for r in records],
                "var": [r["var"] for r in records],
                "region": [
                    ";".join(f"{format_float(lo)}:{format_float(hi)}" for lo, hi in r["region"])
                    for r in records
                ],
            },
            schema={
                "index": pl.Int64,
                "method": pl.String,
                "p_value": pl.Float64,
                "z_obs": pl.Float64,
                "var": pl.Float64,
                "region": pl.String,
            },
        )
        _emit(_csv_text(frame), cfg.output)
    return report


def cmd_gen(cfg: RunConfig) -> np.ndarray:
    r"""Generate a synthetic dataset and write it to a CSV file with the
    ``is_anomaly`` labels.

    A covariance sidecar file ``<output>.cov.csv`` is also written when
    the noise is correlated.

    Args:
        cfg: The configuration.

    Returns:
        The indices of the planted anomalies.
    """
    data, truth = gen_synthetic(cfg.spec)
    write_dataset_csv(data, cfg.output, truth=truth)
    if cfg.spec.covariance != "independence":
        path = cfg.output.with_suffix(".cov.csv")
        rows = [",".join(format_float(v) for v in row) for row in covariance_matrix(cfg.spec)]
        _emit("\n".join(rows) + "\n", path)
    return truth


def cmd_experiment(cfg: RunConfig) -> MetricsTable:
    r"""Run a Monte Carlo experiment and write the metrics table and the
    manifest.

    When ``output`` is a directory, the table is written to
    ``metrics.csv`` (or ``metrics.json``) and the manifest to
    ``manifest.json``. Otherwise the table is written to the standard
    output.

    Args:
        cfg: The configuration.

    Returns:
        The metrics table.
    """
    if cfg.manifest is not None:
        manifest = load_document(cfg.manifest)
        table = run_from_manifest(manifest, workers=cfg.workers)
    else:
        manifest = build_manifest(
            cfg.experiment,
            cfg.spec,
            cfg.ransac,
            methods=cfg.methods,
            trials=cfg.trials,
            alpha=cfg.alpha,
            setting=cfg.setting,
            values=cfg.values,
            estimate_variance=cfg.estimate_variance,
        )
        table = run_experiment(
            cfg.experiment,
            cfg.spec,
            cfg.ransac,
            methods=cfg.methods,
            trials=cfg.trials,
            alpha=cfg.alpha,
            setting=cfg.setting,
            values=cfg.values,
            workers=cfg.workers,
            estimate_variance=cfg.estimate_variance,
            show_progress=True,
        )
    if cfg.output is None:
        if cfg.output_format == "json":
            _emit(dumps(table.to_dict()), None)
        else:
            _emit(_csv_text(table.frame), None)
        return table
    cfg.output.mkdir(parents=True, exist_ok=True)
    if cfg.output_format == "json":
        save_document(table.to_dict(), cfg.output.joinpath("metrics.json"))
    else:
        table.write_csv(cfg.output.joinpath("metrics.csv"))
    save_document(manifest, cfg.output.joinpath("manifest.json"))
    return table


def _add_ransac_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--B",
        "--num-iterations",
        dest="num_iterations",
        type=int,
        default=15,
        help="number of RANSAC iterations",
    )
    parser.add_argument("--tau", type=float, default=2.0, help="threshold on squared residuals")
    parser.add_argument("--subset-size", type=int, default=None, help="points per subset")
    parser.add_argument(
        "--seed", type=int, default=None, help=f"seed (default: ${SEED_ENV} or 0)"
    )


def _add_data_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--noise", choices=NOISE_KINDS, default="normal")
    parser.add_argument(
        "--rho", type=float, default=None, help="correlation of the noise (default: independent)"
    )
    parser.add_argument("--anomaly-count", type=int, default=None, help="default: n // 5")
    parser.add_argument(
        "--seed", type=int, default=None, help=f"seed (default: ${SEED_ENV} or 0)"
    )


def build_parser() -> argparse.ArgumentParser:
    r"""Build the parser of the command line arguments.

    Returns:
        The parser.
    """
    parser = argparse.ArgumentParser(
        prog="ransacsi", description="Selective inference for anomalies detected by RANSAC"
    )
    parser.add_argument("--log-level", default="INFO", help="logging level (default: INFO)")
    commands = parser.add_subparsers(dest="command", required=True)

    for name in ("detect", "test"):
        sub = commands.add_parser(name, help=f"{name} the anomalies of a CSV dataset")
        sub.add_argument("input", help="CSV file with a 'y' column and feature columns")
        sub.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
        sub.add_argument("--format", choices=FORMATS, default="json")
        sub.add_argument("--covariance", default=None, help="covariance sidecar file")
        sub.add_argument("--sigma", choices=SIGMA_SOURCES, default=None)
        sub.add_argument(
            "--sigma-value", type=float, default=None, help="variance (scaled) or rho (correlated)"
        )
        sub.add_argument(
            "--method", nargs="+", choices=METHOD_NAMES, default=["ctrl"], help="p-value methods"
        )
        sub.add_argument("--range-sd", type=float, default=None, help="line-search half-width")
        _add_ransac_options(sub)

    gen = commands.add_parser("gen", help="generate a synthetic dataset")
    gen.add_argument("--output", "-o", required=True, help="output CSV file")
    gen.add_argument("--n", type=int, default=100)
    gen.add_argument("--p", type=int, default=5)
    gen.add_argument("--delta", type=float, default=0.0)
    _add_data_options(gen)

    exp = commands.add_parser("experiment", help="run a Monte Carlo experiment")
    exp.add_argument("experiment", choices=EXPERIMENTS)
    exp.add_argument("--output", "-o", default=None, help="output directory (default: stdout)")
    exp.add_argument("--format", choices=FORMATS, default="csv")
    for option in ("n", "delta", "p", "tau"):
        exp.add_argument(f"--{option}", default=None, help="value, list 'a,b' or range 'a..b'")
    exp.add_argument(
        "--B",
        "--num-iterations",
        dest="num_iterations",
        default=None,
        help="value, list 'a,b' or range 'a..b'",
    )
    exp.add_argument("--step", type=float, default=None, help="step of the ranges")
    exp.add_argument("--vary", choices=SWEEP_PARAMETERS, default=None)
    exp.add_argument("--values", default=None, help="values of --vary")
    exp.add_argument("--subset-size", type=int, default=None)
    exp.add_argument("--method", nargs="+", choices=METHOD_NAMES, default=None)
    exp.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    exp.add_argument("--alpha", type=float, default=0.05)
    exp.add_argument("--workers", type=int, default=1)
    exp.add_argument("--estimate-variance", action="store_true")
    exp.add_argument("--from-manifest", default=None, help="rerun from a manifest file")
    _add_data_options(exp)
    return parser


def run(cfg: RunConfig) -> int:
    r"""Run a command.

    Args:
        cfg: The configuration.

    Returns:
        The exit status.
    """
    if cfg.command == "detect":
        result = cmd_detect(cfg)
        return EXIT_EMPTY if result.anomalies.size == 0 else EXIT_SUCCESS
    if cfg.command == "test":
        report = cmd_test(cfg)
        return EXIT_EMPTY if report.is_empty() else EXIT_SUCCESS
    if cfg.command == "gen":
        cmd_gen(cfg)
        return EXIT_SUCCESS
    cmd_experiment(cfg)
    return EXIT_SUCCESS


def main(argv: Sequence[str] | None = None) -> int:
    r"""Run the command line interface.

    Args:
        argv: The command line arguments. ``None`` means
            ``sys.argv[1:]``.

    Returns:
        The exit status.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return run(RunConfig.from_args(args))
    except (InvalidInputError, OSError) as exc:
        logger.error(f"Input error: {exc}")  # noqa: TRY400
        return EXIT_INPUT_ERROR
    except NumericalError as exc:
        logger.error(f"Numerical error: {exc}")  # noqa: TRY400
        return EXIT_NUMERIC_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
