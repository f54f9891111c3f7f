"""Adaptive Levenberg-Marquardt for square nonlinear least squares."""

from .lm import LMStep, lm_mk, lm_step, run_lm, running_min_grad  # noqa: F401
