import logging
import warnings
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import scipy.linalg as sla

from errors import DimensionMismatchError, SingularSystemError

logger = logging.getLogger(__name__)

# ||(A + lam I) x - b|| <= SOLVE_RTOL * max(1, ||b||) after at most one refinement pass
SOLVE_RTOL = 1e-10

POWER_ITERATION_TOL = 1e-15


class FactorizationKind(StrEnum):
    CHOLESKY = "cholesky"
    LDLT_FALLBACK = "ldlt_fallback"


@dataclass(frozen=True, eq=False)
class DenseSymmetricMatrix:
    """Square symmetric matrix, symmetrized as (A + A^T) / 2 on construction.

    The stored array is read-only, so instances can be shared between runs.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionMismatchError(f"Expected a non-empty square matrix, got shape {a.shape}")
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "DenseSymmetricMatrix":
        return cls(np.eye(dim))

    @classmethod
    def diagonal(cls, values) -> "DenseSymmetricMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.entries @ v

    def shifted(self, lam: float) -> np.ndarray:
        return self.entries + lam * np.eye(self.dim)


@dataclass(frozen=True, eq=False)
class ShiftedSolveReport:
    solution: np.ndarray
    residual_norm: float
    factorization_kind: FactorizationKind


def _cholesky_solver(shifted: np.ndarray):
    factor = sla.cho_factor(shifted, lower=True)
    return lambda rhs: sla.cho_solve(factor, rhs)


def _indefinite_solver(shifted: np.ndarray):
    # Bunch-Kaufman (sytrf/sytrs) through scipy; refactors on every call.
    def solve(rhs: np.ndarray) -> np.ndarray:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", sla.LinAlgWarning)
            return sla.solve(shifted, rhs, assume_a="sym")

    return solve


def shifted_solve(a: DenseSymmetricMatrix, lam: float, b) -> ShiftedSolveReport:
    """Solve (A + lam I) x = b by factorization, never by inversion.

    Cholesky is tried first; a symmetric-indefinite factorization is used when
    A + lam I is not positive definite (nonconvex Hessians at small lam).
    """
    rhs = np.asarray(b, dtype=float)
    if rhs.shape != (a.dim,):
        raise DimensionMismatchError(f"Right-hand side has shape {rhs.shape}, expected ({a.dim},)")
    if not np.isfinite(lam) or lam < 0:
        raise ValueError(f"Shift must be a finite nonnegative number, got {lam!r}")

    shifted = a.shifted(lam)
    kind = FactorizationKind.CHOLESKY
    try:
        solve = _cholesky_solver(shifted)
    except np.linalg.LinAlgError:
        logger.debug("Cholesky failed at lambda=%.3e (dim=%d); falling back to LDL^T", lam, a.dim)
        kind = FactorizationKind.LDLT_FALLBACK
        solve = _indefinite_solver(shifted)

    try:
        x = solve(rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"A + {lam:.3e} I is singular (dim={a.dim})") from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystemError(f"Non-finite solution for A + {lam:.3e} I (dim={a.dim})")

    residual = shifted @ x - rhs
    tol = SOLVE_RTOL * max(1.0, float(np.linalg.norm(rhs)))
    if np.linalg.norm(residual) > tol:
        refined = x - solve(residual)
        refined_residual = shifted @ refined - rhs
        if np.all(np.isfinite(refined)) and np.linalg.norm(refined_residual) < np.linalg.norm(residual):
            x, residual = refined, refined_residual

    return ShiftedSolveReport(
        solution=x,
        residual_norm=float(np.linalg.norm(residual)),
        factorization_kind=kind,
    )


def _start_vector(dim: int) -> np.ndarray:
    v = np.random.default_rng(0).standard_normal(dim)
    return v / np.linalg.norm(v)


def spectral_norm_estimate(a: DenseSymmetricMatrix, iters: int = 100) -> float:
    """Power-iteration estimate of ||A||_2 from below.

    The sequence ||A v_k|| with v_k = A^k v_0 / ||A^k v_0|| is nondecreasing for
    symmetric A, so stopping early can only underestimate. Iteration stops when
    the estimate stalls (relative change below POWER_ITERATION_TOL) or after
    `iters` products.
    """
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    m = a.entries
    if not np.any(m):
        return 0.0

    v = _start_vector(a.dim)
    estimate = 0.0
    for _ in range(iters):
        w = m @ v
        w_norm = float(np.linalg.norm(w))
        if w_norm == 0.0:
            break
        stalled = w_norm - estimate <= POWER_ITERATION_TOL * w_norm
        estimate = max(estimate, w_norm)
        if stalled:
            break
        v = w / w_norm
    return estimate
