r"""Implement least-squares fitting and the residuals of a fit along the
parametrized line ``Y(z) = a + b * z``."""

from __future__ import annotations

__all__ = [
    "Dataset",
    "LinearResidualCoeffs",
    "check_finite",
    "fit_least_squares",
    "pseudo_inverse",
    "residual_line_coeffs",
    "subset_hat_matrix",
]

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import pinv

from ransacsi.exceptions import InvalidInputError

logger = logging.getLogger(__name__)

PINV_RTOL = 1e-10


def check_finite(name: str, array: np.ndarray) -> None:
    r"""Check that an array contains only finite values.

    Args:
        name: The name of the array, used in the error message.
        array: The array to check.

    Raises:
        InvalidInputError: if the array has a NaN or infinite value.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.linreg import check_finite
    >>> check_finite("y", np.array([1.0, 2.0]))

    ```
    """
    if not np.all(np.isfinite(array)):
        msg = f"{name} contains non-finite values"
        raise InvalidInputError(msg)


@dataclass(frozen=True, eq=False)
class Dataset:
    r"""Define a linear regression dataset ``Y = X beta + eps`` with
    ``eps ~ N(0, Sigma)``.

    Args:
        X: The feature matrix of shape ``(n, p)``.
        Y: The response vector of shape ``(n,)``.
        Sigma: The noise covariance. A float ``s`` means ``s * I``, a
            2-d array is the full covariance and ``None`` means the
            covariance has to be estimated.

    Raises:
        InvalidInputError: if the shapes are inconsistent or a value is
            not finite.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.linreg import Dataset
    >>> data = Dataset(X=np.ones((3, 1)), Y=np.array([1.0, 2.0, 3.0]), Sigma=1.0)
    >>> data.num_samples, data.num_features
    (3, 1)
    >>> data.covariance()
    array([[1., 0., 0.],
           [0., 1., 0.],
           [0., 0., 1.]])

    ```
    """

    X: np.ndarray
    Y: np.ndarray
    Sigma: np.ndarray | float | None = field(default=1.0)

    def __post_init__(self) -> None:
        X = np.asarray(self.X, dtype=np.float64)
        Y = np.asarray(self.Y, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if X.ndim != 2 or Y.ndim != 1:
            msg = f"X must be a 2-d array and Y a 1-d array (received: {X.shape} and {Y.shape})"
            raise InvalidInputError(msg)
        if X.shape[0] != Y.shape[0]:
            msg = f"X ({X.shape[0]:,} rows) and Y ({Y.shape[0]:,} values) do not match"
            raise InvalidInputError(msg)
        if X.shape[0] < 1 or X.shape[1] < 1:
            msg = f"the dataset needs at least one row and one column (received: {X.shape})"
            raise InvalidInputError(msg)
        check_finite("X", X)
        check_finite("Y", Y)
        Sigma = self.Sigma
        if Sigma is not None and not np.isscalar(Sigma):
            Sigma = np.asarray(Sigma, dtype=np.float64)
            n = X.shape[0]
            if Sigma.shape != (n, n):
                msg = f"Sigma must have shape ({n}, {n}) (received: {Sigma.shape})"
                raise InvalidInputError(msg)
            check_finite("Sigma", Sigma)
            if not np.allclose(Sigma, Sigma.T, atol=1e-10):
                msg = "Sigma must be symmetric"
                raise InvalidInputError(msg)
        elif Sigma is not None:
            Sigma = float(Sigma)
            if not Sigma >= 0:
                msg = f"the noise variance must be non-negative (received: {Sigma})"
                raise InvalidInputError(msg)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "Sigma", Sigma)
        if X.shape[0] <= X.shape[1]:
            logger.warning(
                f"the dataset has {X.shape[0]:,} rows for {X.shape[1]:,} features; "
                "fits are not meaningful when n <= p"
            )

    @property
    def num_samples(self) -> int:
        return self.X.shape[0]

    @property
    def num_features(self) -> int:
        return self.X.shape[1]

    def covariance(self) -> np.ndarray:
        r"""Materialize the noise covariance matrix.

        Returns:
            The ``(n, n)`` covariance matrix.

        Raises:
            InvalidInputError: if the covariance is to be estimated.
        """
        if self.Sigma is None:
            msg = "the noise covariance is unknown; estimate it first"
            raise InvalidInputError(msg)
        if isinstance(self.Sigma, float):
            return self.Sigma * np.eye(self.num_samples)
        return self.Sigma

    def with_response(self, Y: np.ndarray) -> Dataset:  # noqa: N803
        r"""Return a copy of the dataset with another response vector."""
        return Dataset(X=self.X, Y=Y, Sigma=self.Sigma)

    def with_covariance(self, Sigma: np.ndarray | float | None) -> Dataset:  # noqa: N803
        r"""Return a copy of the dataset with another covariance."""
        return Dataset(X=self.X, Y=self.Y, Sigma=Sigma)


@dataclass(frozen=True, eq=False)
class LinearResidualCoeffs:
    r"""Define residuals that are affine in ``z``: ``residual_i(z) =
    c_i + d_i * z``.

    Args:
        c: The constant terms, of shape ``(n,)``.
        d: The slopes, of shape ``(n,)``.
    """

    c: np.ndarray
    d: np.ndarray

    def evaluate(self, z: float) -> np.ndarray:
        r"""Return the residuals at ``z``."""
        return self.c + self.d * z


def pseudo_inverse(A: np.ndarray, rtol: float | None = None) -> np.ndarray:  # noqa: N803
    r"""Compute the Moore-Penrose pseudo-inverse of a matrix.

    The singular values below ``rtol * max_singular_value`` are treated
    as zero. The default is ``rtol = 1e-10 * max(A.shape)``.

    Args:
        A: The matrix.
        rtol: The relative cutoff of the singular values.

    Returns:
        The pseudo-inverse, of shape ``A.T.shape``.

    Raises:
        InvalidInputError: if the matrix has a non-finite value.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.linreg import pseudo_inverse
    >>> pseudo_inverse(np.diag([2.0, 0.0]))
    array([[0.5, 0. ],
           [0. , 0. ]])

    ```
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    check_finite("matrix", A)
    if rtol is None:
        rtol = PINV_RTOL * max(A.shape)
    return pinv(A, atol=0.0, rtol=rtol, check_finite=False)


def fit_least_squares(X_sub: np.ndarray, y_sub: np.ndarray) -> np.ndarray:  # noqa: N803
    r"""Fit a linear model by least squares with the minimum-norm
    solution ``pinv(X_sub) @ y_sub``.

    Args:
        X_sub: The features of shape ``(m, p)``.
        y_sub: The responses of shape ``(m,)``.

    Returns:
        The coefficients of shape ``(p,)``.

    Raises:
        InvalidInputError: if ``m < 1`` or a value is not finite.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.linreg import fit_least_squares
    >>> fit_least_squares(np.array([[1.0], [1.0]]), np.array([1.0, 3.0]))
    array([2.])

    ```
    """
    y_sub = np.asarray(y_sub, dtype=np.float64)
    if y_sub.shape[0] < 1:
        msg = "at least one sample is required to fit a model"
        raise InvalidInputError(msg)
    check_finite("y", y_sub)
    return pseudo_inverse(X_sub) @ y_sub


def subset_hat_matrix(X: np.ndarray, subset: np.ndarray) -> np.ndarray:  # noqa: N803
    r"""Return the ``(n, |s|)`` matrix ``X @ pinv(X[s])``.

    Multiplying it by ``y[s]`` gives the fitted values of all the
    points for the model fitted on the subset ``s``.

    Args:
        X: The feature matrix of shape ``(n, p)``.
        subset: The indices of the subset.

    Returns:
        The matrix ``X @ pinv(X[s])``.

    Raises:
        InvalidInputError: if the subset is empty.
    """
    subset = np.asarray(subset, dtype=np.int64)
    if subset.size == 0:
        msg = "the subset must not be empty"
        raise InvalidInputError(msg)
    return X @ pseudo_inverse(X[subset])


def residual_line_coeffs(
    X: np.ndarray,  # noqa: N803
    subset: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    hat: np.ndarray | None = None,
) -> LinearResidualCoeffs:
    r"""Compute the residuals of the model fitted on ``subset`` along
    the line ``Y(z) = a + b * z``.

    The fit on the rows ``s`` is linear in ``Y(z)[s]`` so the residuals
    are affine in ``z``: ``c = a - X pinv(X[s]) a[s]`` and
    ``d = b - X pinv(X[s]) b[s]``.

    Args:
        X: The feature matrix of shape ``(n, p)``.
        subset: The indices of the rows used to fit the model.
        a: The line anchor of shape ``(n,)``.
        b: The line direction of shape ``(n,)``.
        hat: The precomputed ``subset_hat_matrix(X, subset)``, if any.

    Returns:
        The residual coefficients.

    Raises:
        InvalidInputError: if the subset is empty.

    Example usage:

    ```pycon

    >>> import numpy as np
    >>> from ransacsi.linreg import residual_line_coeffs
    >>> coeffs = residual_line_coeffs(
    ...     np.array([[1.0], [1.0]]),
    ...     subset=np.array([0]),
    ...     a=np.array([2.0, 2.0]),
    ...     b=np.array([-0.5, 0.5]),
    ... )
    >>> coeffs.c, coeffs.d
    (array([0., 0.]), array([0., 1.]))

    ```
    """
    subset = np.asarray(subset, dtype=np.int64)
    if hat is None:
        hat = subset_hat_matrix(X, subset)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return LinearResidualCoeffs(c=a - hat @ a[subset], d=b - hat @ b[subset])
