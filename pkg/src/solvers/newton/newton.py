"""Gradient-regularized Newton methods.

Every step solves (hess f(x) + lam I) s = grad f(x) with lam = sqrt(H ||grad f(x)||).
The fixed variant uses a known H, AdaN searches for H by doubling, AdaN+
replaces the search with a local model-error estimate.
"""

import itertools
import logging
import math
import time
from typing import NamedTuple

import numpy as np

from errors import DegenerateStepError, LineSearchStalledError, SingularSystemError
from linalg import DenseSymmetricMatrix, shifted_solve
from oracles import ObjectiveOracle

from ..audit import InvariantAudit, NewtonStepSnapshot, audit_newton_step, elapsed_ms, finish_run
from ..types import NewtonState, RunResult, RunStatus, SolverConfig, TraceRecord
from .estimates import MIN_H, adan_plus_mk
from .monitor import audit_newton_steps

logger = logging.getLogger(__name__)


class NewtonStep(NamedTuple):
    x_next: np.ndarray
    lam: float
    step_norm: float


def reg_newton_step(
    oracle: ObjectiveOracle,
    x: np.ndarray,
    h: float,
    *,
    grad: np.ndarray | None = None,
    hess: DenseSymmetricMatrix | None = None,
) -> NewtonStep:
    """One step x+ = x - (hess f(x) + lam I)^{-1} grad f(x), lam = sqrt(h ||grad f(x)||).

    A zero gradient returns x unchanged.
    """
    g = oracle.gradient(x) if grad is None else grad
    grad_norm = float(np.linalg.norm(g))
    if grad_norm == 0.0:
        return NewtonStep(np.array(x, dtype=float), 0.0, 0.0)
    lam = math.sqrt(h * grad_norm)
    hess = oracle.hessian(x) if hess is None else hess
    report = shifted_solve(hess, lam, g)
    return NewtonStep(x - report.solution, lam, float(np.linalg.norm(report.solution)))


def _log_step(method: str, record: TraceRecord) -> None:
    logger.debug(
        "%s k=%d f=%.12e |g|=%.3e lam=%.3e r=%.3e H=%.3e n=%d",
        method,
        record.k,
        record.f,
        record.grad_norm,
        record.lam,
        record.step_norm,
        record.h_k,
        record.inner_count,
    )


def run_reg_newton(oracle: ObjectiveOracle, x0, cfg: SolverConfig) -> RunResult:
    """Fixed-H regularized Newton until ||grad f|| <= grad_tol or max_iters steps.

    With check_invariants, each step is audited for the shift identity, the
    step bounds, the next-gradient bound and the sufficient decrease; these
    hold on convex problems whenever h_const is at least the true H.
    """
    x = np.array(x0, dtype=float)
    audit = InvariantAudit(cfg.check_invariants)
    trace: list[TraceRecord] = []
    started = time.perf_counter()
    newton_steps = 0
    pending: NewtonStepSnapshot | None = None
    status = RunStatus.MAX_ITERS
    message = ""

    for k in itertools.count():
        f = oracle.value(x)
        g = oracle.gradient(x)
        grad_norm = float(np.linalg.norm(g))
        if pending is not None:
            audit_newton_step(audit, pending, f, grad_norm)
            pending = None
        if grad_norm <= cfg.grad_tol:
            status = RunStatus.CONVERGED
            break
        if k >= cfg.max_iters:
            break

        hess = oracle.hessian(x)
        try:
            step = reg_newton_step(oracle, x, cfg.h_const, grad=g, hess=hess)
        except SingularSystemError as exc:
            status, message = RunStatus.SINGULAR_SYSTEM, str(exc)
            break
        newton_steps += 1
        record = TraceRecord(k, f, grad_norm, step.lam, step.step_norm, cfg.h_const, 1, newton_steps, elapsed_ms(started))
        _log_step("reg_newton", record)
        trace.append(record)
        if cfg.check_invariants:
            pending = NewtonStepSnapshot(k, x, step.x_next, step.lam, g, hess, f, h=cfg.h_const)
        x = step.x_next

    trace.append(TraceRecord(k, f, grad_norm, 0.0, 0.0, cfg.h_const, 0, newton_steps, elapsed_ms(started)))
    return finish_run(
        RunResult(x, trace, status, audit.violations, method="reg_newton", message=message)
    )


def adan_step(
    oracle: ObjectiveOracle,
    state: NewtonState,
    cfg: SolverConfig,
    *,
    f: float | None = None,
    grad: np.ndarray | None = None,
    hess: DenseSymmetricMatrix | None = None,
    started: float | None = None,
) -> tuple[NewtonState, TraceRecord]:
    """One AdaN iteration: start from H_{k-1}/4 and double until the trial point
    satisfies ||grad f(x+)|| <= 2 lam r and f(x+) <= f(x) - (2/3) lam r^2.

    A trial whose shifted system is singular counts as rejected. The returned
    inner count is the number of trials, i.e. of shifted solves attempted.
    """
    started = time.perf_counter() if started is None else started
    x = state.x
    f = oracle.value(x) if f is None else f
    g = oracle.gradient(x) if grad is None else grad
    grad_norm = float(np.linalg.norm(g))
    if grad_norm <= cfg.grad_tol:
        raise ValueError(f"adan_step called at a stationary point (||grad||={grad_norm:.3e})")
    hess = oracle.hessian(x) if hess is None else hess

    h = state.h_k / 4.0
    for n in range(1, cfg.max_inner + 1):
        h *= 2.0
        lam = math.sqrt(h * grad_norm)
        try:
            report = shifted_solve(hess, lam, g)
        except SingularSystemError:
            logger.debug("AdaN k=%d trial %d: singular system at H=%.3e, doubling", state.k, n, h)
            continue
        x_trial = x - report.solution
        r = float(np.linalg.norm(report.solution))
        if (
            np.linalg.norm(oracle.gradient(x_trial)) <= 2.0 * lam * r
            and oracle.value(x_trial) <= f - (2.0 / 3.0) * lam * r * r
        ):
            steps = state.newton_steps + n
            record = TraceRecord(state.k, f, grad_norm, lam, r, h, n, steps, elapsed_ms(started))
            return NewtonState(x=x_trial, k=state.k + 1, h_k=h, newton_steps=steps, prev_x=x), record

    raise LineSearchStalledError(
        f"AdaN found no acceptable point after {cfg.max_inner} trials at k={state.k} (last H={h:.3e})"
    )


def run_adan(oracle: ObjectiveOracle, x0, cfg: SolverConfig, *, h_true: float | None = None) -> RunResult:
    """AdaN from H_0 = cfg.h0 (first trial uses cfg.h0 / 2).

    With check_invariants, accepted steps are re-audited from fresh
    evaluations, and the Newton-step accounting is checked against the budget
    2(k+1) + max(0, log2(2H/H_0)) when the Hessian constant is known
    (`h_true`, else the oracle metadata).
    """
    state = NewtonState(x=np.array(x0, dtype=float), k=0, h_k=cfg.h0)
    audit = InvariantAudit(cfg.check_invariants)
    trace: list[TraceRecord] = []
    started = time.perf_counter()
    pending: NewtonStepSnapshot | None = None
    status = RunStatus.MAX_ITERS
    message = ""

    for k in itertools.count():
        f = oracle.value(state.x)
        g = oracle.gradient(state.x)
        grad_norm = float(np.linalg.norm(g))
        if pending is not None:
            audit_newton_step(audit, pending, f, grad_norm)
            pending = None
        if grad_norm <= cfg.grad_tol:
            status = RunStatus.CONVERGED
            break
        if k >= cfg.max_iters:
            break

        hess = oracle.hessian(state.x)
        try:
            next_state, record = adan_step(oracle, state, cfg, f=f, grad=g, hess=hess, started=started)
        except LineSearchStalledError as exc:
            status, message = RunStatus.LINE_SEARCH_STALLED, str(exc)
            break
        _log_step("adan", record)
        trace.append(record)
        if cfg.check_invariants:
            pending = NewtonStepSnapshot(k, state.x, next_state.x, record.lam, g, hess, f)
        state = next_state

    trace.append(TraceRecord(k, f, grad_norm, 0.0, 0.0, state.h_k, 0, state.newton_steps, elapsed_ms(started)))

    if cfg.check_invariants:
        h_true = oracle.metadata.hessian_lipschitz if h_true is None else h_true
        audit_newton_steps(audit, trace, h_true, cfg.h0)
    return finish_run(RunResult(state.x, trace, status, audit.violations, method="adan", message=message))


def run_adan_plus(oracle: ObjectiveOracle, x0, cfg: SolverConfig) -> RunResult:
    """AdaN+: H_k = max(M_k, H_{k-1} / 2), one shifted solve per iteration.

    x^1 comes from one fixed-H step with H = cfg.h0; H_0 is the model error
    of that first step. A coinciding pair keeps H_{k-1}; a singular system is
    retried once with H_{k-1} before the run stops.
    """
    x = np.array(x0, dtype=float)
    audit = InvariantAudit(cfg.check_invariants)
    trace: list[TraceRecord] = []
    started = time.perf_counter()
    newton_steps = 0
    pending: NewtonStepSnapshot | None = None
    status = RunStatus.MAX_ITERS
    message = ""
    h_prev: float | None = None
    h = cfg.h0
    x_prev = g_prev = hess_prev = None

    for k in itertools.count():
        f = oracle.value(x)
        g = oracle.gradient(x)
        grad_norm = float(np.linalg.norm(g))
        if pending is not None:
            audit_newton_step(audit, pending, f, grad_norm)
            pending = None
        if grad_norm <= cfg.grad_tol:
            status = RunStatus.CONVERGED
            break
        if k >= cfg.max_iters:
            break

        if k > 0:
            try:
                mk = adan_plus_mk(oracle, x_prev, x, grad_prev=g_prev, hess_prev=hess_prev, grad_curr=g)
            except DegenerateStepError:
                logger.debug("AdaN+ k=%d: degenerate step, keeping H=%.3e", k, h)
                mk = None
            if h_prev is None:
                h_prev = max(cfg.h0 if mk is None else mk, MIN_H)
            h = h_prev if mk is None else max(mk, h_prev / 2.0)
            audit.check(k, "estimate_halving_floor", h_prev / 2.0, h)
            if mk is not None:
                audit.check(k, "estimate_local_floor", mk, h)

        hess = oracle.hessian(x)
        try:
            step = reg_newton_step(oracle, x, h, grad=g, hess=hess)
        except SingularSystemError as exc:
            if h_prev is None or h_prev <= h:
                status, message = RunStatus.SINGULAR_SYSTEM, str(exc)
                break
            logger.debug("AdaN+ k=%d: singular at H=%.3e, retrying with H=%.3e", k, h, h_prev)
            h = h_prev
            try:
                step = reg_newton_step(oracle, x, h, grad=g, hess=hess)
            except SingularSystemError as retry_exc:
                status, message = RunStatus.SINGULAR_SYSTEM, str(retry_exc)
                break

        newton_steps += 1
        record = TraceRecord(k, f, grad_norm, step.lam, step.step_norm, h, 1, newton_steps, elapsed_ms(started))
        _log_step("adan_plus", record)
        trace.append(record)
        if cfg.check_invariants:
            pending = NewtonStepSnapshot(k, x, step.x_next, step.lam, g, hess, f, descent=False)
        if k > 0:
            h_prev = h
        x_prev, g_prev, hess_prev = x, g, hess
        x = step.x_next

    trace.append(TraceRecord(k, f, grad_norm, 0.0, 0.0, h, 0, newton_steps, elapsed_ms(started)))
    return finish_run(RunResult(x, trace, status, audit.violations, method="adan_plus", message=message))
