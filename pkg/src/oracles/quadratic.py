import numpy as np

from errors import DimensionMismatchError, SingularSystemError
from linalg import DenseSymmetricMatrix, shifted_solve

from .base import ObjectiveOracle, ProblemMetadata

PSD_TOL = 1e-12


def make_quadratic(a: DenseSymmetricMatrix, b) -> ObjectiveOracle:
    """f(x) = 1/2 x^T A x - b^T x with A positive semidefinite (H = 0)."""
    rhs = np.asarray(b, dtype=float)
    if rhs.shape != (a.dim,):
        raise DimensionMismatchError(f"b has shape {rhs.shape}, expected ({a.dim},)")
    eigenvalues = np.linalg.eigvalsh(a.entries)
    scale = max(1.0, float(np.abs(eigenvalues).max()))
    if eigenvalues[0] < -PSD_TOL * scale:
        raise ValueError(f"A is not positive semidefinite (smallest eigenvalue {eigenvalues[0]:.3e})")

    optimal_value = None
    minimizer = None
    if eigenvalues[0] > PSD_TOL * scale:
        try:
            minimizer = shifted_solve(a, 0.0, rhs).solution
            optimal_value = float(-0.5 * (rhs @ minimizer))
        except SingularSystemError:
            minimizer = None

    def value(x: np.ndarray) -> float:
        return float(0.5 * (x @ a.matvec(x)) - rhs @ x)

    def gradient(x: np.ndarray) -> np.ndarray:
        return a.matvec(x) - rhs

    def hessian(x: np.ndarray) -> DenseSymmetricMatrix:
        return a

    return ObjectiveOracle(
        name="quadratic",
        dim=a.dim,
        value=value,
        gradient=gradient,
        hessian=hessian,
        metadata=ProblemMetadata(
            hessian_lipschitz=0.0,
            strong_convexity=max(0.0, float(eigenvalues[0])),
            optimal_value=optimal_value,
            minimizer=minimizer,
        ),
    )
