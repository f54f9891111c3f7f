"""Problem definitions: objective and least-squares oracles and the shipped test problems."""

from .base import LeastSquaresOracle, ObjectiveOracle, ProblemMetadata  # noqa: F401
from .checks import gradient_check, hessian_check, jacobian_check  # noqa: F401
from .least_squares import (  # noqa: F401
    make_affine_residual,
    make_least_squares,
    make_least_squares_poly,
    make_quadratic_residual,
    sweep_cubic_growth,
    sweep_jacobian_smoothness,
)
from .logistic import logistic_h_estimate, make_logistic, squared_spectral_norm  # noqa: F401
from .logsumexp import logsumexp_constants, make_logsumexp  # noqa: F401
from .quadratic import make_quadratic  # noqa: F401
from .worstcase import make_cubic_norm_worstcase  # noqa: F401
