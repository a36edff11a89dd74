from __future__ import annotations

__all__ = []

import numpy as np
import pytest

from ransacsi.inference import TestContext, build_context
from ransacsi.linreg import Dataset
from ransacsi.ransac import RansacConfig, SubsetPlan


@pytest.fixture
def toy_data() -> Dataset:
    # two points, one feature: the second point is far from the first
    return Dataset(X=np.ones((2, 1)), Y=np.array([0.0, 10.0]), Sigma=1.0)


@pytest.fixture
def toy_plan() -> SubsetPlan:
    return SubsetPlan(subsets=np.array([[0], [1]]), num_samples=2)


@pytest.fixture
def toy_cfg() -> RansacConfig:
    return RansacConfig(num_iterations=2, tau=1.0)


@pytest.fixture
def toy_ctx(toy_data: Dataset) -> TestContext:
    return build_context(toy_data, anomalies=np.array([1]), index=1)


@pytest.fixture
def line_data() -> Dataset:
    # y = 1 + 2 x with two large anomalies at the rows 3 and 7
    x = np.linspace(-2.0, 2.0, 12)
    X = np.stack([np.ones_like(x), x], axis=1)  # noqa: N806
    noise = np.array([0.1, -0.2, 0.05, 0.0, 0.15, -0.1, 0.2, 0.0, -0.05, 0.1, -0.15, 0.05])
    Y = X @ np.array([1.0, 2.0]) + noise  # noqa: N806
    Y[3] += 8.0
    Y[7] -= 9.0
    return Dataset(X=X, Y=Y, Sigma=0.04)
