"""Levenberg-Marquardt with the gradient-norm penalty lam = sqrt(c ||J^T F||).

Works without convexity: J^T J + lam I is positive definite for lam > 0, and
under the cubic growth condition with constant c the residual norm never
increases.
"""

import itertools
import logging
import math
import time
from typing import NamedTuple

import numpy as np

from errors import DegenerateStepError, SingularSystemError
from linalg import DenseSymmetricMatrix, FactorizationKind, shifted_solve
from oracles import LeastSquaresOracle

from ..audit import IDENTITY_TOL, STEP_BOUND_RTOL, InvariantAudit, elapsed_ms, finish_run
from ..newton.estimates import MIN_H, MIN_STEP
from ..types import LMConfig, LMTraceRecord, RunResult, RunStatus

logger = logging.getLogger(__name__)

ZERO_RESIDUAL = 1e-14
MONOTONE_RTOL = 1e-12


class LMStep(NamedTuple):
    x_next: np.ndarray
    lam: float
    step_norm: float


def lm_step(
    oracle: LeastSquaresOracle,
    x: np.ndarray,
    c: float,
    *,
    residual: np.ndarray | None = None,
    jac: np.ndarray | None = None,
) -> LMStep:
    """x+ = x - (J^T J + lam I)^{-1} J^T F(x) with lam = sqrt(c ||J^T F(x)||).

    A stationary point (J^T F = 0) returns x unchanged.
    """
    step, _ = _lm_solve(oracle, x, c, residual=residual, jac=jac)
    return step


def _lm_solve(oracle, x, c, *, residual=None, jac=None) -> tuple[LMStep, FactorizationKind | None]:
    r = oracle.residual(x) if residual is None else residual
    j = np.asarray(oracle.jacobian(x) if jac is None else jac, dtype=float)
    g = j.T @ r
    grad_norm = float(np.linalg.norm(g))
    if grad_norm == 0.0:
        return LMStep(np.array(x, dtype=float), 0.0, 0.0), None
    lam = math.sqrt(c * grad_norm)
    report = shifted_solve(DenseSymmetricMatrix(j.T @ j), lam, g)
    return LMStep(x - report.solution, lam, float(np.linalg.norm(report.solution))), report.factorization_kind


def lm_mk(
    oracle: LeastSquaresOracle,
    x_prev: np.ndarray,
    x_curr: np.ndarray,
    *,
    residual_prev: np.ndarray | None = None,
    jac_prev: np.ndarray | None = None,
    residual_curr: np.ndarray | None = None,
) -> float:
    """||F(x) - F(x_prev) - J(x_prev)(x - x_prev)|| / ||x - x_prev||^2."""
    step = np.asarray(x_curr, dtype=float) - np.asarray(x_prev, dtype=float)
    dist = float(np.linalg.norm(step))
    if dist < MIN_STEP:
        raise DegenerateStepError(f"Consecutive points coincide (||step||={dist:.3e})")
    f_prev = oracle.residual(x_prev) if residual_prev is None else residual_prev
    j_prev = oracle.jacobian(x_prev) if jac_prev is None else jac_prev
    f_curr = oracle.residual(x_curr) if residual_curr is None else residual_curr
    return float(np.linalg.norm(f_curr - f_prev - np.asarray(j_prev) @ step)) / dist**2


def running_min_grad(trace: list[LMTraceRecord]) -> list[float]:
    """min_{t <= k} ||J_t^T F(x^t)|| for every k."""
    out: list[float] = []
    best = math.inf
    for record in trace:
        best = min(best, record.grad_norm)
        out.append(best)
    return out


def _audit_lm_step(audit, k, *, x, x_next, lam, residual, jac, residual_next, kind) -> None:
    step = x_next - x
    r = float(np.linalg.norm(step))
    g = jac.T @ residual
    grad_norm = float(np.linalg.norm(g))
    identity = float(np.linalg.norm(lam * step + jac.T @ (residual + jac @ step)))
    audit.check(k, "shift_identity", identity, IDENTITY_TOL * max(1.0, grad_norm))
    audit.check(k, "step_bound", lam * r, grad_norm * (1.0 + STEP_BOUND_RTOL))
    old_sq = float(residual @ residual)
    new_sq = float(residual_next @ residual_next)
    audit.check(k, "residual_decrease", new_sq, old_sq - lam * r * r + MONOTONE_RTOL * old_sq)
    audit.check(k, "residual_monotone", math.sqrt(new_sq), math.sqrt(old_sq) * (1.0 + MONOTONE_RTOL))
    if lam > 0 and kind is not FactorizationKind.CHOLESKY:
        audit.check(k, "gram_positive_definite", 1.0, 0.0)


def run_lm(oracle: LeastSquaresOracle, x0, cfg: LMConfig) -> RunResult:
    """Iterate lm_step until ||J^T F|| <= grad_tol, ||F|| <= 1e-14 or max_iters.

    With adaptive_c the constant follows c_k = max(M_k, c_{k-1} / 2), where
    M_k is the Jacobian model error of the last step.
    """
    x = np.array(x0, dtype=float)
    audit = InvariantAudit(cfg.check_invariants)
    trace: list[LMTraceRecord] = []
    started = time.perf_counter()
    status = RunStatus.MAX_ITERS
    message = ""
    c = cfg.c_const
    pending = None
    x_prev = residual_prev = jac_prev = None

    for k in itertools.count():
        residual = np.asarray(oracle.residual(x), dtype=float)
        jac = np.asarray(oracle.jacobian(x), dtype=float)
        residual_norm = float(np.linalg.norm(residual))
        grad_norm = float(np.linalg.norm(jac.T @ residual))
        if pending is not None:
            _audit_lm_step(audit, residual_next=residual, **pending)
            pending = None
        if grad_norm <= cfg.grad_tol or residual_norm <= ZERO_RESIDUAL:
            status = RunStatus.CONVERGED
            break
        if k >= cfg.max_iters:
            break

        if cfg.adaptive_c and k > 0:
            try:
                mk = lm_mk(oracle, x_prev, x, residual_prev=residual_prev, jac_prev=jac_prev, residual_curr=residual)
                c = max(mk, c / 2.0, MIN_H)
            except DegenerateStepError:
                logger.debug("LM k=%d: degenerate step, keeping c=%.3e", k, c)

        try:
            step, kind = _lm_solve(oracle, x, c, residual=residual, jac=jac)
        except SingularSystemError as exc:
            status, message = RunStatus.SINGULAR_SYSTEM, str(exc)
            break
        record = LMTraceRecord(k, residual_norm, grad_norm, step.lam, step.step_norm, c)
        logger.debug(
            "lm k=%d |F|=%.12e |J^T F|=%.3e lam=%.3e r=%.3e c=%.3e",
            k, residual_norm, grad_norm, step.lam, step.step_norm, c,
        )
        trace.append(record)
        if cfg.check_invariants:
            pending = dict(k=k, x=x, x_next=step.x_next, lam=step.lam, residual=residual, jac=jac, kind=kind)
        x_prev, residual_prev, jac_prev = x, residual, jac
        x = step.x_next

    trace.append(LMTraceRecord(k, residual_norm, grad_norm, 0.0, 0.0, c))
    logger.debug("lm wall time %.1f ms", elapsed_ms(started))
    return finish_run(RunResult(x, trace, status, audit.violations, method="lm", message=message))
