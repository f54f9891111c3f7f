import numpy as np

from linalg import DenseSymmetricMatrix, shifted_solve
from oracles import ObjectiveOracle

from ..types import RunResult, SolverConfig
from .driver import BaselineStep, drive
from .line_search import ArmijoConfig, ArmijoStep, armijo_search, armijo_trials


def newton_armijo_step(
    oracle: ObjectiveOracle,
    x: np.ndarray,
    prev_alpha: float,
    cfg: ArmijoConfig,
    *,
    f: float | None = None,
    grad: np.ndarray | None = None,
    hess: DenseSymmetricMatrix | None = None,
) -> ArmijoStep:
    """Damped Newton: d = -hess f(x)^{-1} grad f(x), alpha by backtracking.

    Raises SingularSystemError when the Hessian cannot be solved and
    NoDescentError when d is not a descent direction.
    """
    g = oracle.gradient(x) if grad is None else grad
    hess = oracle.hessian(x) if hess is None else hess
    direction = -shifted_solve(hess, 0.0, g).solution
    return armijo_search(oracle, x, direction, prev_alpha, cfg, f=f, grad=g)


def run_newton_armijo(oracle: ObjectiveOracle, x0, cfg: SolverConfig, armijo: ArmijoConfig | None = None) -> RunResult:
    armijo = armijo or ArmijoConfig()
    prev_alpha = armijo.alpha_init / 2.0

    def step(k, x, f, g):
        nonlocal prev_alpha
        alpha, x_next = newton_armijo_step(oracle, x, prev_alpha, armijo, f=f, grad=g)
        trials = armijo_trials(prev_alpha, alpha)
        prev_alpha = alpha
        return BaselineStep(x_next, alpha, trials, solves=1)

    return drive("newton_armijo", oracle, x0, cfg, step, scale0=armijo.alpha_init)
