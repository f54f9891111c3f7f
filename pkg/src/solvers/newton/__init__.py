"""Regularized Newton with a known H, AdaN and AdaN+."""

from .estimates import adan_h0_init, adan_plus_mk, probe_direction  # noqa: F401
from .monitor import audit_newton_steps, newton_step_budget, superlinear_monitor  # noqa: F401
from .newton import (  # noqa: F401
    NewtonStep,
    adan_step,
    reg_newton_step,
    run_adan,
    run_adan_plus,
    run_reg_newton,
)
