import logging
import math

import numpy as np
from scipy import sparse
from scipy.special import expit

from errors import BadLabelError, DimensionMismatchError
from linalg import DenseSymmetricMatrix, spectral_norm_estimate

from .base import ObjectiveOracle, ProblemMetadata

logger = logging.getLogger(__name__)

# sup |sigma'''| of the logistic loss
_THIRD_DERIVATIVE_BOUND = 1.0 / (6.0 * math.sqrt(3.0))


def as_feature_matrix(features):
    """Dense float array or CSR matrix, always 2-D."""
    if sparse.issparse(features):
        return sparse.csr_matrix(features, dtype=float)
    a = np.asarray(features, dtype=float)
    if a.ndim != 2:
        raise DimensionMismatchError(f"Feature matrix must be 2-D, got shape {a.shape}")
    return a


def _row_norms(a) -> np.ndarray:
    if sparse.issparse(a):
        return np.sqrt(np.asarray(a.multiply(a).sum(axis=1)).ravel())
    return np.linalg.norm(a, axis=1)


def weighted_gram(a, weights: np.ndarray) -> np.ndarray:
    """A^T diag(weights) A as a dense array."""
    if sparse.issparse(a):
        return np.asarray((a.T @ sparse.diags(weights) @ a).todense())
    return a.T @ (weights[:, None] * a)


def squared_spectral_norm(features) -> float:
    """||A||_2^2, computed as the spectral norm of the Gram matrix A^T A."""
    a = as_feature_matrix(features)
    gram = DenseSymmetricMatrix(weighted_gram(a, np.ones(a.shape[0])))
    return spectral_norm_estimate(gram, iters=1000)


def logistic_h_estimate(features, n: int) -> float:
    """(1 / (6 sqrt 3)) * max_i ||a_i|| * ||A||^2.

    Evaluated as written, without a 1/n factor even though the objective is
    averaged over the n samples, so it over-estimates the Hessian constant of
    the averaged loss.
    """
    a = as_feature_matrix(features)
    if a.shape[0] == 0 or a.shape[1] == 0:
        raise ValueError("Feature matrix must be nonempty")
    if n != a.shape[0]:
        raise DimensionMismatchError(f"n={n} does not match the {a.shape[0]} feature rows")
    return float(_THIRD_DERIVATIVE_BOUND * _row_norms(a).max() * squared_spectral_norm(a))


def make_logistic(features, labels, reg: float) -> ObjectiveOracle:
    """Averaged log-loss with l2 regularization, labels in {0, 1}.

    f(x) = (1/n) sum_i [log(1 + exp(a_i^T x)) - b_i a_i^T x] + (reg / 2) ||x||^2
    """
    a = as_feature_matrix(features)
    b = np.asarray(labels, dtype=float)
    n, d = a.shape
    if n < 1 or d < 1:
        raise ValueError(f"Need at least one sample and one feature, got shape {a.shape}")
    if b.shape != (n,):
        raise DimensionMismatchError(f"Expected {n} labels, got shape {b.shape}")
    bad = np.flatnonzero((b != 0.0) & (b != 1.0))
    if bad.size:
        raise BadLabelError(f"Label {b[bad[0]]!r} at row {bad[0]} is not in {{0, 1}}; map -1 to 0 first")
    if reg < 0:
        raise ValueError(f"Regularization must be nonnegative, got {reg!r}")

    def value(x: np.ndarray) -> float:
        z = a @ x
        loss = np.mean(np.logaddexp(0.0, z) - b * z)
        return float(loss + 0.5 * reg * (x @ x))

    def gradient(x: np.ndarray) -> np.ndarray:
        residual = expit(a @ x) - b
        return np.asarray(a.T @ residual).ravel() / n + reg * x

    def hessian(x: np.ndarray) -> DenseSymmetricMatrix:
        s = expit(a @ x)
        gram = weighted_gram(a, s * (1.0 - s) / n)
        return DenseSymmetricMatrix(gram + reg * np.eye(d))

    h = logistic_h_estimate(a, n)
    logger.debug("Logistic oracle n=%d d=%d reg=%.3e H_estimate=%.6e", n, d, reg, h)
    return ObjectiveOracle(
        name="logistic",
        dim=d,
        value=value,
        gradient=gradient,
        hessian=hessian,
        metadata=ProblemMetadata(hessian_lipschitz=h, strong_convexity=reg),
    )
