"""Local estimates of the Hessian constant H from second-order model errors."""

import logging
from functools import lru_cache

import numpy as np

from errors import DegenerateStepError
from linalg import DenseSymmetricMatrix
from oracles import ObjectiveOracle

logger = logging.getLogger(__name__)

MIN_H = 1e-12
MIN_STEP = 1e-14


@lru_cache(maxsize=32)
def probe_direction(dim: int) -> np.ndarray:
    """Fixed unit vector used to perturb x0, first nonzero entry positive."""
    u = np.random.default_rng(0).standard_normal(dim)
    if u[0] < 0:
        u = -u
    u /= np.linalg.norm(u)
    u.setflags(write=False)
    return u


def adan_plus_mk(
    oracle: ObjectiveOracle,
    x_prev: np.ndarray,
    x_curr: np.ndarray,
    *,
    grad_prev: np.ndarray | None = None,
    hess_prev: DenseSymmetricMatrix | None = None,
    grad_curr: np.ndarray | None = None,
) -> float:
    """||grad f(x) - grad f(x_prev) - hess f(x_prev)(x - x_prev)|| / ||x - x_prev||^2.

    Precomputed derivatives may be passed to avoid re-evaluation.
    """
    step = np.asarray(x_curr, dtype=float) - np.asarray(x_prev, dtype=float)
    dist = float(np.linalg.norm(step))
    if dist < MIN_STEP:
        raise DegenerateStepError(f"Consecutive points coincide (||step||={dist:.3e})")
    g_prev = oracle.gradient(x_prev) if grad_prev is None else grad_prev
    h_prev = oracle.hessian(x_prev) if hess_prev is None else hess_prev
    g_curr = oracle.gradient(x_curr) if grad_curr is None else grad_curr
    error = g_curr - g_prev - h_prev.matvec(step)
    return float(np.linalg.norm(error)) / dist**2


def adan_h0_init(oracle: ObjectiveOracle, x0, perturbation_scale: float = 0.1) -> float:
    """H0 from the model error at y0 = x0 + perturbation_scale * u, floored at MIN_H.

    Never exceeds the true H, since the quotient is bounded by H for every pair.
    """
    if not perturbation_scale > 0:
        raise ValueError(f"perturbation_scale must be positive, got {perturbation_scale!r}")
    x0 = np.asarray(x0, dtype=float)
    y0 = x0 + perturbation_scale * probe_direction(oracle.dim)
    h0 = max(adan_plus_mk(oracle, x0, y0), MIN_H)
    logger.debug("H0 probe at scale %.3e: %.6e", perturbation_scale, h0)
    return h0
