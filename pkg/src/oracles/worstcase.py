import numpy as np

from linalg import DenseSymmetricMatrix

from .base import ObjectiveOracle, ProblemMetadata


def cubic_worstcase_system(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Bidiagonal A (1 on the diagonal, -1 above it) and b = e_1."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    a = np.eye(dim) - np.eye(dim, k=1)
    b = np.zeros(dim)
    b[0] = 1.0
    return a, b


def make_cubic_norm_worstcase(dim: int) -> ObjectiveOracle:
    """f(x) = (1/3) ||A x - b||_3^3, the hard instance for second-order methods.

    d/dt |t|^3 / 3 = t |t| and d^2/dt^2 = 2 |t| (zero at t = 0), so f is C^2.
    The Hessian constant recorded in the metadata is ||A||_2^3, which bounds
    both ||grad f(y) - grad f(x) - hess f(x)(y - x)|| / ||y - x||^2 and half the
    Lipschitz constant of the Hessian.
    """
    a, b = cubic_worstcase_system(dim)

    def value(x: np.ndarray) -> float:
        r = a @ x - b
        return float(np.sum(np.abs(r) ** 3) / 3.0)

    def gradient(x: np.ndarray) -> np.ndarray:
        r = a @ x - b
        return a.T @ (r * np.abs(r))

    def hessian(x: np.ndarray) -> DenseSymmetricMatrix:
        r = a @ x - b
        return DenseSymmetricMatrix(a.T @ ((2.0 * np.abs(r))[:, None] * a))

    minimizer = np.linalg.solve(a, b)
    return ObjectiveOracle(
        name="cubic_worstcase",
        dim=dim,
        value=value,
        gradient=gradient,
        hessian=hessian,
        metadata=ProblemMetadata(
            hessian_lipschitz=float(np.linalg.norm(a, 2)) ** 3,
            strong_convexity=0.0,
            optimal_value=0.0,
            minimizer=minimizer,
        ),
    )
