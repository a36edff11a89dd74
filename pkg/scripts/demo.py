# noqa: INP001
r"""Contain a demo example to detect and test anomalies on synthetic
data."""

from __future__ import annotations

import logging
from pathlib import Path

from ransacsi.experiments import SyntheticSpec, gen_synthetic, run_experiment
from ransacsi.inference import AnomalyTester, InferenceReport
from ransacsi.io import save_document
from ransacsi.ransac import RansacConfig
from ransacsi.utils.logging import configure_logging

logger = logging.getLogger(__name__)

METHODS = ("ctrl", "oc", "naive", "bonferroni")


def create_tester() -> AnomalyTester:
    r"""Instantiate the pipeline that detects and tests the anomalies.

    Returns:
        The instantiated pipeline.
    """
    return AnomalyTester(RansacConfig(num_iterations=15, tau=2.0, seed=1), methods=METHODS)


def main_report(output: Path) -> InferenceReport:
    r"""Test the anomalies of one synthetic dataset and save the report.

    Args:
        output: The path to the JSON report.

    Returns:
        The inference report.
    """
    data, truth = gen_synthetic(SyntheticSpec(n=100, p=5, delta=3.0, seed=42))
    tester = create_tester()
    logger.info(f"tester:\n{tester}")
    report = tester.test(data)
    logger.info(f"planted anomalies: {truth.tolist()}")
    logger.info(f"report:\n{report}")
    logger.info(f"p-values:\n{report.to_frame()}")
    save_document(report.to_dict(), output)
    return report


def main_experiment(output: Path) -> None:
    r"""Run a small false positive rate experiment and save the metrics.

    Args:
        output: The path to the CSV file of the metrics.
    """
    table = run_experiment(
        "fpr",
        SyntheticSpec(n=50, p=2, seed=7),
        RansacConfig(num_iterations=5),
        methods=METHODS,
        trials=50,
        setting="tau",
        values=[1.0, 2.0],
        show_progress=True,
    )
    logger.info(f"metrics:\n{table.frame}")
    table.write_csv(output)


if __name__ == "__main__":
    configure_logging(level=logging.INFO)
    main_report(Path.cwd().joinpath("tmp/report.json"))
    main_experiment(Path.cwd().joinpath("tmp/fpr_tau.csv"))
