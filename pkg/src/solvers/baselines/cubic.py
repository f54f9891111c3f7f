"""Cubic-regularized Newton solved by bisection on the shift.

The step satisfies x+ = x - (hess f(x) + lam I)^{-1} grad f(x) with
lam = H ||x+ - x||. On convex problems ||s(lam)|| decreases in lam, so the
fixed point is bracketed and bisected.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from errors import BisectFailError, SingularSystemError
from linalg import DenseSymmetricMatrix, shifted_solve
from oracles import ObjectiveOracle

from ..types import RunResult, SolverConfig
from .driver import BaselineStep, drive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubicConfig:
    h_const: float = 1.0
    bisect_tol: float = 1e-12
    bisect_max: int = 200

    def __post_init__(self) -> None:
        for name in ("h_const", "bisect_tol", "bisect_max"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"'{name}' must be positive, got {value!r}")


class CubicStep(NamedTuple):
    x_next: np.ndarray
    lambda_star: float


def cubic_newton_step(
    oracle: ObjectiveOracle,
    x: np.ndarray,
    cfg: CubicConfig,
    *,
    grad: np.ndarray | None = None,
    hess: DenseSymmetricMatrix | None = None,
) -> CubicStep:
    step, _ = _cubic_solve(oracle, x, cfg, grad=grad, hess=hess)
    return step


def _cubic_solve(oracle, x, cfg: CubicConfig, *, grad=None, hess=None) -> tuple[CubicStep, int]:
    g = oracle.gradient(x) if grad is None else grad
    grad_norm = float(np.linalg.norm(g))
    if grad_norm == 0.0:
        raise ValueError("cubic_newton_step requires a nonzero gradient")
    hess = oracle.hessian(x) if hess is None else hess
    h = cfg.h_const
    solves = 0

    def gap(lam: float) -> tuple[float, np.ndarray | None]:
        # A singular shift counts as lam too small.
        nonlocal solves
        solves += 1
        try:
            sol = shifted_solve(hess, lam, g).solution
        except SingularSystemError:
            return -math.inf, None
        return lam - h * float(np.linalg.norm(sol)), sol

    def converged(lam: float, value: float) -> bool:
        return abs(value) <= cfg.bisect_tol * max(1.0, lam)

    hi = math.sqrt(h * grad_norm)
    for _ in range(cfg.bisect_max):
        hi_gap, hi_sol = gap(hi)
        if hi_gap >= 0:
            break
        hi *= 2.0
    else:
        raise BisectFailError(f"No bracket for the cubic shift after {cfg.bisect_max} doublings (lam={hi:.3e})")
    if converged(hi, hi_gap):
        return CubicStep(x - hi_sol, hi), solves

    lo = 0.0
    for _ in range(cfg.bisect_max):
        mid = 0.5 * (lo + hi)
        mid_gap, mid_sol = gap(mid)
        if mid_sol is not None and converged(mid, mid_gap):
            return CubicStep(x - mid_sol, mid), solves
        if mid_gap < 0:
            lo = mid
        else:
            hi = mid
    raise BisectFailError(f"Cubic shift bisection did not converge in {cfg.bisect_max} steps (bracket [{lo:.3e}, {hi:.3e}])")


def run_cubic_newton(oracle: ObjectiveOracle, x0, cfg: SolverConfig, cubic: CubicConfig | None = None) -> RunResult:
    cubic = cubic or CubicConfig(h_const=cfg.h_const)

    def step(k, x, f, g):
        out, solves = _cubic_solve(oracle, x, cubic, grad=g)
        logger.debug("cubic_newton k=%d: lam*=%.6e after %d solves", k, out.lambda_star, solves)
        return BaselineStep(out.x_next, cubic.h_const, solves, solves=solves, lam=out.lambda_star)

    return drive("cubic_newton", oracle, x0, cfg, step, scale0=cubic.h_const)
