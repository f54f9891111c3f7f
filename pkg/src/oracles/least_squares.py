import logging
from typing import Callable, Literal

import numpy as np

from errors import DimensionMismatchError

from .base import LeastSquaresOracle, ProblemMetadata

logger = logging.getLogger(__name__)

ResidualKind = Literal["affine", "quadratic"]

# pairs closer than this are skipped by the sweeps (the quotients are 0/0)
_MIN_PAIR_DISTANCE = 1e-8


def make_least_squares(
    dim: int,
    residual: Callable[[np.ndarray], np.ndarray],
    jacobian: Callable[[np.ndarray], np.ndarray],
    *,
    name: str = "least_squares",
    jacobian_bound: float | None = None,
    metadata: ProblemMetadata | None = None,
) -> LeastSquaresOracle:
    """Wrap user callables for F and dF into an oracle."""
    return LeastSquaresOracle(
        name=name,
        dim=dim,
        residual=residual,
        jacobian=jacobian,
        jacobian_bound=jacobian_bound,
        metadata=metadata or ProblemMetadata(),
    )


def make_affine_residual(anchor) -> LeastSquaresOracle:
    """F(x) = x - x0."""
    x0 = np.atleast_1d(np.asarray(anchor, dtype=float))
    dim = x0.shape[0]
    eye = np.eye(dim)
    return make_least_squares(
        dim,
        lambda x: x - x0,
        lambda x: eye,
        name="affine",
        jacobian_bound=1.0,
        metadata=ProblemMetadata(optimal_value=0.0, minimizer=x0, cubic_growth=0.0),
    )


def make_quadratic_residual(targets) -> LeastSquaresOracle:
    """F(x)_i = x_i^2 - t_i, Jacobian diag(2 x)."""
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    return make_least_squares(
        t.shape[0],
        lambda x: x * x - t,
        lambda x: np.diag(2.0 * x),
        name="quadratic_residual",
        metadata=ProblemMetadata(optimal_value=0.0 if np.all(t >= 0) else None),
    )


def make_least_squares_poly(kind: ResidualKind = "quadratic", dim: int = 1, targets=None) -> LeastSquaresOracle:
    """Built-in residual operators on R^dim.

    `affine`: F(x) = x - targets; `quadratic`: F(x)_i = x_i^2 - targets_i.
    Targets default to the all-ones vector.
    """
    t = np.ones(dim) if targets is None else np.atleast_1d(np.asarray(targets, dtype=float))
    if t.shape != (dim,):
        raise DimensionMismatchError(f"targets has shape {t.shape}, expected ({dim},)")
    if kind == "affine":
        return make_affine_residual(t)
    if kind == "quadratic":
        return make_quadratic_residual(t)
    raise ValueError(f"Unknown residual kind: {kind!r}")


def _sample_pairs(dim: int, box: tuple[float, float], samples: int, seed: int):
    rng = np.random.default_rng(seed)
    lo, hi = box
    xs = rng.uniform(lo, hi, size=(samples, dim))
    ys = rng.uniform(lo, hi, size=(samples, dim))
    return xs, ys


def sweep_cubic_growth(
    oracle: LeastSquaresOracle,
    box: tuple[float, float] = (-3.0, 3.0),
    samples: int = 20000,
    seed: int = 0,
) -> float:
    """Sampled sup of (||F(y)||^2 - ||F(x) + J(x)(y - x)||^2) / ||y - x||^3 over a box.

    This is a stand-in for the cubic growth constant c; sampling can only
    under-estimate the supremum.
    """
    best = 0.0
    for x, y in zip(*_sample_pairs(oracle.dim, box, samples, seed)):
        step = y - x
        dist = float(np.linalg.norm(step))
        if dist < _MIN_PAIR_DISTANCE:
            continue
        model = oracle.residual(x) + oracle.jacobian(x) @ step
        actual = oracle.residual(y)
        best = max(best, float(actual @ actual - model @ model) / dist**3)
    logger.debug("Cubic growth sweep over %s with %d pairs: c=%.6e", box, samples, best)
    return best


def sweep_jacobian_smoothness(
    oracle: LeastSquaresOracle,
    box: tuple[float, float] = (-3.0, 3.0),
    samples: int = 20000,
    seed: int = 0,
) -> float:
    """Sampled sup of ||F(y) - F(x) - J(x)(y - x)|| / ||y - x||^2 over a box."""
    best = 0.0
    for x, y in zip(*_sample_pairs(oracle.dim, box, samples, seed)):
        step = y - x
        dist = float(np.linalg.norm(step))
        if dist < _MIN_PAIR_DISTANCE:
            continue
        error = oracle.residual(y) - oracle.residual(x) - oracle.jacobian(x) @ step
        best = max(best, float(np.linalg.norm(error)) / dist**2)
    return best
