"""Comparison methods sharing the TraceRecord schema of the Newton drivers."""

from .cubic import CubicConfig, CubicStep, cubic_newton_step, run_cubic_newton  # noqa: F401
from .driver import BaselineStep, drive  # noqa: F401
from .gradient import agd_restart_run, gd_armijo_step, gd_const_step, run_gd, run_gd_armijo  # noqa: F401
from .line_search import ArmijoConfig, ArmijoStep, armijo_search, armijo_trials  # noqa: F401
from .newton_armijo import newton_armijo_step, run_newton_armijo  # noqa: F401
