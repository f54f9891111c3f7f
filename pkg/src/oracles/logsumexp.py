import numpy as np
from scipy.special import logsumexp, softmax

from errors import DimensionMismatchError
from linalg import DenseSymmetricMatrix

from .base import ObjectiveOracle, ProblemMetadata


def make_logsumexp(vectors, offsets, rho: float, metadata: ProblemMetadata | None = None) -> ObjectiveOracle:
    """rho * log sum_i exp((a_i^T x - b_i) / rho), a smooth max of the affine pieces.

    scipy's logsumexp/softmax shift by the max internally, so values stay
    finite for large |a_i^T x / rho|.
    """
    a = np.asarray(vectors, dtype=float)
    b = np.asarray(offsets, dtype=float)
    if a.ndim != 2:
        raise DimensionMismatchError(f"Vectors must form an n x d matrix, got shape {a.shape}")
    if b.shape != (a.shape[0],):
        raise DimensionMismatchError(f"Expected {a.shape[0]} offsets, got shape {b.shape}")
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho!r}")

    def _scaled(x: np.ndarray) -> np.ndarray:
        return (a @ x - b) / rho

    def value(x: np.ndarray) -> float:
        return float(rho * logsumexp(_scaled(x)))

    def gradient(x: np.ndarray) -> np.ndarray:
        return a.T @ softmax(_scaled(x))

    def hessian(x: np.ndarray) -> DenseSymmetricMatrix:
        p = softmax(_scaled(x))
        mean = a.T @ p
        return DenseSymmetricMatrix((a.T @ (p[:, None] * a) - np.outer(mean, mean)) / rho)

    return ObjectiveOracle(
        name="logsumexp",
        dim=a.shape[1],
        value=value,
        gradient=gradient,
        hessian=hessian,
        metadata=metadata or ProblemMetadata(),
    )


def logsumexp_constants(vectors, rho: float) -> tuple[float, float]:
    """(L, H) for the log-sum-exp objective.

    L = max_i ||a_i||^2 / rho bounds the Hessian; H = max_i ||a_i||^3 / rho^2
    bounds half the Lipschitz constant of the Hessian.
    """
    a = np.asarray(vectors, dtype=float)
    radius = float(np.linalg.norm(a, axis=1).max())
    return radius**2 / rho, radius**3 / rho**2
