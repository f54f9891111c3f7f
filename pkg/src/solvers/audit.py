"""Opt-in per-step invariant checking shared by the solver drivers."""

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from linalg import DenseSymmetricMatrix

from .types import InvariantViolation, RunResult, RunStatus

logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-8
STEP_BOUND_RTOL = 1e-10
GRADIENT_BOUND_RTOL = 1e-8
DECREASE_RTOL = 1e-12
SHIFT_BOUND_RTOL = 1e-12


@dataclass
class InvariantAudit:
    enabled: bool
    violations: list[InvariantViolation] = field(default_factory=list)

    def check(self, k: int, name: str, lhs: float, rhs: float) -> bool:
        """Record a violation when lhs > rhs. Returns True when the inequality holds."""
        if not self.enabled:
            return True
        if lhs <= rhs:
            return True
        logger.warning("Invariant '%s' violated at k=%d: %.17g > %.17g", name, k, lhs, rhs)
        self.violations.append(InvariantViolation(k=k, name=name, lhs=float(lhs), rhs=float(rhs)))
        return False


@dataclass(frozen=True, eq=False)
class NewtonStepSnapshot:
    """Everything needed to audit x -> x_next once f and grad f at x_next are known.

    `h` is set only when the step used a trusted Hessian constant; the
    descent checks run only when `descent` is set.
    """

    k: int
    x: np.ndarray
    x_next: np.ndarray
    lam: float
    grad: np.ndarray
    hess: DenseSymmetricMatrix
    f: float
    h: float | None = None
    descent: bool = True


def audit_newton_step(audit: InvariantAudit, snap: NewtonStepSnapshot, f_next: float, grad_next_norm: float) -> None:
    step = snap.x_next - snap.x
    r = float(np.linalg.norm(step))
    grad_norm = float(np.linalg.norm(snap.grad))
    lam = snap.lam

    identity = float(np.linalg.norm(lam * step + snap.grad + snap.hess.matvec(step)))
    audit.check(snap.k, "shift_identity", identity, IDENTITY_TOL * max(1.0, grad_norm))
    audit.check(snap.k, "step_bound", lam * r, grad_norm * (1.0 + STEP_BOUND_RTOL))
    if snap.h is not None:
        audit.check(snap.k, "step_length_bound", snap.h * r, lam * (1.0 + SHIFT_BOUND_RTOL))
    if snap.descent:
        audit.check(snap.k, "next_gradient_bound", grad_next_norm, 2.0 * lam * r * (1.0 + GRADIENT_BOUND_RTOL))
        audit.check(
            snap.k,
            "sufficient_decrease",
            f_next,
            snap.f - (2.0 / 3.0) * lam * r * r + DECREASE_RTOL * abs(snap.f),
        )
        audit.check(snap.k, "no_blow_up", grad_next_norm, 2.0 * grad_norm * (1.0 + GRADIENT_BOUND_RTOL))


def elapsed_ms(started: float) -> float:
    return (time.perf_counter() - started) * 1e3


def finish_run(result: RunResult) -> RunResult:
    last = result.final_record
    if last is not None:
        measure = getattr(last, "f", None)
        if measure is None:
            measure = last.residual_norm
        logger.info(
            "%s finished: status=%s iters=%d value=%.6e grad_norm=%.3e violations=%d",
            result.method or "run",
            result.status,
            result.iterations,
            measure,
            last.grad_norm,
            len(result.invariant_violations),
        )
    if result.status is RunStatus.CONVERGED and last is not None and result.message == "":
        result.message = "gradient tolerance reached"
    return result
