"""Central finite-difference audits of oracle derivatives.

Each check returns a relative error ||analytic - numeric|| / max(1, ||analytic||).
"""

import numpy as np

from .base import LeastSquaresOracle, ObjectiveOracle

DEFAULT_STEP = 1e-6


def _relative(analytic: np.ndarray, numeric: np.ndarray) -> float:
    return float(np.linalg.norm(analytic - numeric) / max(1.0, float(np.linalg.norm(analytic))))


def gradient_check(oracle: ObjectiveOracle, x: np.ndarray, step: float = DEFAULT_STEP) -> float:
    numeric = np.empty(oracle.dim)
    for i in range(oracle.dim):
        e = np.zeros(oracle.dim)
        e[i] = step
        numeric[i] = (oracle.value(x + e) - oracle.value(x - e)) / (2.0 * step)
    return _relative(oracle.gradient(x), numeric)


def hessian_check(oracle: ObjectiveOracle, x: np.ndarray, v: np.ndarray, step: float = DEFAULT_STEP) -> float:
    v = v / np.linalg.norm(v)
    numeric = (oracle.gradient(x + step * v) - oracle.gradient(x - step * v)) / (2.0 * step)
    return _relative(oracle.hessian(x).matvec(v), numeric)


def jacobian_check(oracle: LeastSquaresOracle, x: np.ndarray, step: float = DEFAULT_STEP) -> float:
    numeric = np.empty((oracle.dim, oracle.dim))
    for i in range(oracle.dim):
        e = np.zeros(oracle.dim)
        e[i] = step
        numeric[:, i] = (oracle.residual(x + e) - oracle.residual(x - e)) / (2.0 * step)
    analytic = np.asarray(oracle.jacobian(x), dtype=float)
    return float(np.linalg.norm(analytic - numeric) / max(1.0, float(np.linalg.norm(analytic))))
