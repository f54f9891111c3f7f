"""First-order baselines: fixed-step gradient descent, Armijo gradient descent
and Nesterov acceleration with function-value restarts."""

import logging
import math

import numpy as np

from errors import StallNoStepError
from oracles import ObjectiveOracle

from ..types import RunResult, SolverConfig
from .driver import BaselineStep, drive
from .line_search import ArmijoConfig, ArmijoStep, armijo_search, armijo_trials

logger = logging.getLogger(__name__)


def _require_lipschitz(lipschitz: float) -> None:
    if not lipschitz > 0:
        raise ValueError(f"Gradient Lipschitz constant must be positive, got {lipschitz!r}")


def gd_const_step(oracle: ObjectiveOracle, x: np.ndarray, lipschitz: float, *, grad: np.ndarray | None = None) -> np.ndarray:
    """x+ = x - grad f(x) / L."""
    _require_lipschitz(lipschitz)
    g = oracle.gradient(x) if grad is None else grad
    return x - g / lipschitz


def gd_armijo_step(
    oracle: ObjectiveOracle,
    x: np.ndarray,
    prev_alpha: float,
    cfg: ArmijoConfig,
    *,
    f: float | None = None,
    grad: np.ndarray | None = None,
) -> ArmijoStep:
    g = oracle.gradient(x) if grad is None else grad
    return armijo_search(oracle, x, -g, prev_alpha, cfg, f=f, grad=g)


def run_gd(oracle: ObjectiveOracle, x0, lipschitz: float, cfg: SolverConfig) -> RunResult:
    _require_lipschitz(lipschitz)

    def step(k, x, f, g):
        return BaselineStep(gd_const_step(oracle, x, lipschitz, grad=g), 1.0 / lipschitz, 1)

    return drive("gd", oracle, x0, cfg, step, scale0=1.0 / lipschitz)


def run_gd_armijo(oracle: ObjectiveOracle, x0, cfg: SolverConfig, armijo: ArmijoConfig | None = None) -> RunResult:
    """Gradient descent with backtracking; each search starts at twice the last accepted alpha."""
    armijo = armijo or ArmijoConfig()
    prev_alpha = armijo.alpha_init / 2.0

    def step(k, x, f, g):
        nonlocal prev_alpha
        alpha, x_next = gd_armijo_step(oracle, x, prev_alpha, armijo, f=f, grad=g)
        trials = armijo_trials(prev_alpha, alpha)
        prev_alpha = alpha
        return BaselineStep(x_next, alpha, trials)

    return drive("gd_armijo", oracle, x0, cfg, step, scale0=armijo.alpha_init)


def agd_restart_run(oracle: ObjectiveOracle, x0, lipschitz: float, cfg: SolverConfig) -> RunResult:
    """Accelerated gradient with step 1/L, restarted whenever f would increase.

    A rejected step leaves x in place and resets the momentum, so the
    recorded objective is nonincreasing. If even the plain gradient step from
    x increases f, L is too small and the run stops as stalled.
    """
    _require_lipschitz(lipschitz)
    y = np.array(x0, dtype=float)
    t = 1.0

    def step(k, x, f, g):
        nonlocal y, t
        x_next = y - oracle.gradient(y) / lipschitz
        if oracle.value(x_next) > f:
            if t == 1.0 and np.array_equal(y, x):
                raise StallNoStepError(f"Gradient step 1/L increases f at k={k}; L={lipschitz:.3e} is too small")
            logger.debug("agd_restart k=%d: objective increased, restarting momentum", k)
            y, t = x, 1.0
            return BaselineStep(x, lipschitz, 1)
        t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
        y = x_next + ((t - 1.0) / t_next) * (x_next - x)
        t = t_next
        return BaselineStep(x_next, lipschitz, 1)

    return drive("agd_restart", oracle, x0, cfg, step, scale0=lipschitz)
