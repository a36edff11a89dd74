from __future__ import annotations

import logging

import numpy as np
import pytest
from coola import objects_are_allclose, objects_are_equal

from ransacsi.exceptions import InvalidInputError
from ransacsi.experiments import (
    NOISE_KINDS,
    SyntheticSpec,
    covariance_matrix,
    estimate_noise_variance,
    estimate_sigma,
    gen_synthetic,
    noise_sample,
)
from ransacsi.linreg import Dataset

###################################
#     Tests for SyntheticSpec     #
###################################


def test_synthetic_spec_default() -> None:
    spec = SyntheticSpec()
    assert spec.n == 100
    assert spec.p == 5
    assert spec.num_anomalies == 20
    assert spec.delta == 0.0


def test_synthetic_spec_coefficients() -> None:
    assert objects_are_equal(SyntheticSpec(n=10, p=3).coefficients(), np.array([1.0, 2.0, 1.0]))


def test_synthetic_spec_coefficients_beta_star() -> None:
    spec = SyntheticSpec(n=10, p=2, beta_star=(0.5, -1.0))
    assert objects_are_equal(spec.coefficients(), np.array([0.5, -1.0]))


def test_synthetic_spec_num_anomalies() -> None:
    assert SyntheticSpec(n=10, p=3).num_anomalies == 2
    assert SyntheticSpec(n=10, p=3, anomaly_count=0).num_anomalies == 0


def test_synthetic_spec_replace() -> None:
    spec = SyntheticSpec(n=10, p=3).replace(delta=2.0, seed=4)
    assert spec.delta == 2.0
    assert spec.seed == 4
    assert spec.n == 10


def test_synthetic_spec_to_dict() -> None:
    assert SyntheticSpec(n=10, p=2, seed=3).to_dict() == {
        "n": 10,
        "p": 2,
        "beta_star": None,
        "covariance": "independence",
        "rho": 0.5,
        "custom_covariance": None,
        "noise": "normal",
        "anomaly_count": None,
        "delta": 0.0,
        "seed": 3,
    }


def test_synthetic_spec_from_dict() -> None:
    spec = SyntheticSpec.from_dict(
        {
            "n": 3,
            "p": 1,
            "beta_star": [2.0],
            "covariance": "custom",
            "custom_covariance": [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]],
        }
    )
    assert spec.beta_star == (2.0,)
    assert objects_are_equal(spec.custom_covariance, np.diag([1.0, 2.0, 3.0]))
    assert spec.to_dict()["custom_covariance"] == [
        [1.0, 0.0, 0.0],
        [0.0, 2.0, 0.0],
        [0.0, 0.0, 3.0],
    ]


@pytest.mark.parametrize(
    ("kwargs", "match"),
    [
        ({"n": 0}, "n and p must be positive"),
        ({"p": 0}, "n and p must be positive"),
        ({"p": 2, "beta_star": (1.0,)}, "beta_star must have 2 values"),
        ({"covariance": "block"}, "Incorrect covariance: block"),
        ({"covariance": "custom"}, "custom_covariance is required"),
        ({"noise": "cauchy"}, "Incorrect noise: cauchy"),
        ({"anomaly_count": 11}, r"anomaly_count must be in \[0, 10\]"),
        ({"delta": -1.0}, "delta must be non-negative"),
    ],
)
def test_synthetic_spec_incorrect(kwargs: dict, match: str) -> None:
    config = {"n": 10, "p": 3, **kwargs}
    with pytest.raises(InvalidInputError, match=match):
        SyntheticSpec(**config)


#######################################
#     Tests for covariance_matrix     #
#######################################


def test_covariance_matrix_independence() -> None:
    assert objects_are_equal(covariance_matrix(SyntheticSpec(n=3, p=1)), np.eye(3))


def test_covariance_matrix_correlation() -> None:
    assert objects_are_allclose(
        covariance_matrix(SyntheticSpec(n=3, p=1, covariance="correlation")),
        np.array([[1.0, 0.5, 0.25], [0.5, 1.0, 0.5], [0.25, 0.5, 1.0]]),
    )


def test_covariance_matrix_correlation_rho() -> None:
    cov = covariance_matrix(SyntheticSpec(n=4, p=1, covariance="correlation", rho=0.2))
    assert cov[0, 3] == pytest.approx(0.008)
    assert objects_are_equal(cov, cov.T)


def test_covariance_matrix_custom() -> None:
    cov = np.diag([1.0, 2.0])
    spec = SyntheticSpec(n=2, p=1, covariance="custom", custom_covariance=cov)
    assert objects_are_equal(covariance_matrix(spec), cov)


def test_covariance_matrix_custom_incorrect_shape() -> None:
    spec = SyntheticSpec(n=3, p=1, covariance="custom", custom_covariance=np.eye(2))
    with pytest.raises(InvalidInputError, match=r"must have shape \(3, 3\)"):
        covariance_matrix(spec)


##################################
#     Tests for noise_sample     #
##################################


@pytest.mark.parametrize("kind", NOISE_KINDS)
def test_noise_sample_shape(kind: str) -> None:
    assert noise_sample(kind, size=7, seed=1).shape == (7,)


@pytest.mark.parametrize("kind", NOISE_KINDS)
def test_noise_sample_standardized(kind: str) -> None:
    values = noise_sample(kind, size=200_000, seed=2)
    assert values.mean() == pytest.approx(0.0, abs=0.02)
    assert values.var() == pytest.approx(1.0, abs=0.03)


def test_noise_sample_same_seed() -> None:
    assert objects_are_equal(
        noise_sample("laplace", 10, seed=5), noise_sample("laplace", 10, seed=5)
    )


def test_noise_sample_generator() -> None:
    rng = np.random.default_rng(0)
    assert noise_sample("normal", 3, seed=rng).shape == (3,)


def test_noise_sample_incorrect_kind() -> None:
    with pytest.raises(InvalidInputError, match="Incorrect noise: cauchy"):
        noise_sample("cauchy", 3)


###################################
#     Tests for gen_synthetic     #
###################################


def test_gen_synthetic() -> None:
    data, truth = gen_synthetic(SyntheticSpec(n=150, p=5, delta=3.0, seed=1))
    assert data.X.shape == (150, 5)
    assert data.Y.shape == (150,)
    assert data.Sigma == 1.0
    assert truth.shape == (30,)
    assert objects_are_equal(truth, np.unique(truth))


def test_gen_synthetic_deterministic() -> None:
    spec = SyntheticSpec(n=20, p=2, delta=2.0, seed=7)
    data1, truth1 = gen_synthetic(spec)
    data2, truth2 = gen_synthetic(spec)
    assert objects_are_equal(data1.Y, data2.Y)
    assert objects_are_equal(truth1, truth2)


def test_gen_synthetic_shift() -> None:
    data0, truth0 = gen_synthetic(SyntheticSpec(n=20, p=2, delta=0.0, seed=7))
    data1, truth1 = gen_synthetic(SyntheticSpec(n=20, p=2, delta=2.5, seed=7))
    assert objects_are_equal(truth0, truth1)
    shift = np.zeros(20)
    shift[truth1] = 2.5
    assert objects_are_allclose(data1.Y - data0.Y, shift)


def test_gen_synthetic_correlation() -> None:
    spec = SyntheticSpec(n=6, p=2, covariance="correlation", rho=0.3, seed=2)
    data, _ = gen_synthetic(spec)
    assert objects_are_allclose(data.Sigma, covariance_matrix(spec))


def test_gen_synthetic_no_anomaly() -> None:
    _, truth = gen_synthetic(SyntheticSpec(n=10, p=2, anomaly_count=0))
    assert truth.size == 0


#############################################
#     Tests for estimate_noise_variance     #
#############################################


def test_estimate_noise_variance() -> None:
    data = Dataset(X=np.ones((3, 1)), Y=np.array([0.0, 1.0, 2.0]), Sigma=None)
    assert estimate_noise_variance(data) == pytest.approx(1.0)


def test_estimate_noise_variance_zero(caplog: pytest.LogCaptureFixture) -> None:
    data = Dataset(X=np.ones((3, 1)), Y=np.zeros(3), Sigma=None)
    with caplog.at_level(level=logging.WARNING):
        assert estimate_noise_variance(data) == 0.0
        assert caplog.messages


def test_estimate_noise_variance_too_few_points() -> None:
    data = Dataset(X=np.eye(2), Y=np.array([1.0, 2.0]), Sigma=None)
    with pytest.raises(InvalidInputError, match="cannot be estimated"):
        estimate_noise_variance(data)


def test_estimate_sigma() -> None:
    data = Dataset(X=np.ones((3, 1)), Y=np.array([0.0, 1.0, 2.0]), Sigma=None)
    assert objects_are_allclose(estimate_sigma(data), np.eye(3))
