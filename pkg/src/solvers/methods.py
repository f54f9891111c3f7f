import logging

import numpy as np

from linalg import spectral_norm_estimate
from oracles import LeastSquaresOracle, ObjectiveOracle

from .baselines import ArmijoConfig, CubicConfig, agd_restart_run, run_cubic_newton, run_gd, run_gd_armijo, run_newton_armijo
from .lm import run_lm
from .newton import adan_h0_init, run_adan, run_adan_plus, run_reg_newton
from .registry import MethodSettings, MethodSpec, register_method
from .types import RunResult

logger = logging.getLogger(__name__)


def _require_objective(name: str, oracle) -> ObjectiveOracle:
    if not isinstance(oracle, ObjectiveOracle):
        raise TypeError(f"Method '{name}' needs an objective oracle, got {type(oracle).__name__}")
    return oracle


def _gradient_lipschitz(oracle: ObjectiveOracle, x0: np.ndarray, settings: MethodSettings) -> float:
    if settings.lipschitz is not None:
        return settings.lipschitz
    # Local curvature at x0; exact for quadratics.
    estimate = spectral_norm_estimate(oracle.hessian(x0))
    if estimate <= 0:
        estimate = 1.0
    logger.info("No gradient Lipschitz constant given, using ||hess f(x0)|| = %.6e", estimate)
    return estimate


reg_newton_spec = MethodSpec(
    name="reg_newton",
    title="Regularized Newton",
    description="Newton step shifted by sqrt(H ||grad f||) with a fixed, known H.",
)


def reg_newton_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    return run_reg_newton(_require_objective("reg_newton", oracle), x0, settings.solver_config())


adan_spec = MethodSpec(
    name="adan",
    title="AdaN",
    description="Regularized Newton with H found by a doubling line search, seeded with h0.",
)


def adan_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    return run_adan(_require_objective("adan", oracle), x0, settings.solver_config())


adan_probe_spec = MethodSpec(
    name="adan_probe",
    title="AdaN (probed H0)",
    description="AdaN seeded with the model error of a small fixed perturbation of x0.",
)


def adan_probe_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    oracle = _require_objective("adan_probe", oracle)
    h0 = adan_h0_init(oracle, x0)
    result = run_adan(oracle, x0, settings.solver_config(h0=h0))
    result.method = "adan_probe"
    return result


adan_plus_spec = MethodSpec(
    name="adan_plus",
    title="AdaN+",
    description="Regularized Newton with H_k = max(M_k, H_{k-1}/2); one solve per iteration.",
)


def adan_plus_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    return run_adan_plus(_require_objective("adan_plus", oracle), x0, settings.solver_config())


cubic_newton_spec = MethodSpec(
    name="cubic_newton",
    title="Cubic Newton",
    description="Cubic-regularized Newton, shift found by bisection.",
)


def cubic_newton_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    oracle = _require_objective("cubic_newton", oracle)
    return run_cubic_newton(oracle, x0, settings.solver_config(), CubicConfig(h_const=settings.h_const))


gd_spec = MethodSpec(
    name="gd",
    title="Gradient descent",
    description="Gradient descent with constant step 1/L.",
)


def gd_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    oracle = _require_objective("gd", oracle)
    return run_gd(oracle, x0, _gradient_lipschitz(oracle, x0, settings), settings.solver_config())


gd_armijo_spec = MethodSpec(
    name="gd_armijo",
    title="Gradient descent (Armijo)",
    description="Gradient descent with backtracking started at twice the last step.",
)


def gd_armijo_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    return run_gd_armijo(_require_objective("gd_armijo", oracle), x0, settings.solver_config(), ArmijoConfig())


agd_restart_spec = MethodSpec(
    name="agd_restart",
    title="Accelerated gradient with restarts",
    description="Nesterov acceleration with step 1/L, momentum reset when f increases.",
)


def agd_restart_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    oracle = _require_objective("agd_restart", oracle)
    return agd_restart_run(oracle, x0, _gradient_lipschitz(oracle, x0, settings), settings.solver_config())


newton_armijo_spec = MethodSpec(
    name="newton_armijo",
    title="Newton (Armijo)",
    description="Undamped Newton direction with backtracking; stops on a singular Hessian.",
)


def newton_armijo_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    return run_newton_armijo(_require_objective("newton_armijo", oracle), x0, settings.solver_config(), ArmijoConfig())


lm_spec = MethodSpec(
    name="lm",
    title="Levenberg-Marquardt",
    description="LM with shift sqrt(c ||J^T F||); adaptive_c re-estimates c from the Jacobian model error.",
    family="least_squares",
)


def lm_handler(oracle, x0: np.ndarray, settings: MethodSettings) -> RunResult:
    if not isinstance(oracle, LeastSquaresOracle):
        raise TypeError(f"Method 'lm' needs a least-squares oracle, got {type(oracle).__name__}")
    return run_lm(oracle, x0, settings.lm_config())


def register_all() -> None:
    register_method(reg_newton_spec, reg_newton_handler)
    register_method(cubic_newton_spec, cubic_newton_handler)
    register_method(gd_spec, gd_handler)
    register_method(agd_restart_spec, agd_restart_handler)
    register_method(gd_armijo_spec, gd_armijo_handler)
    register_method(newton_armijo_spec, newton_armijo_handler)
    register_method(adan_spec, adan_handler)
    register_method(adan_probe_spec, adan_probe_handler)
    register_method(adan_plus_spec, adan_plus_handler)
    register_method(lm_spec, lm_handler)
