import math

from ..audit import InvariantAudit
from ..types import TraceRecord


def superlinear_monitor(trace: list[TraceRecord], mu: float, h: float, *, atol: float = 0.0) -> list[bool]:
    """For every k with ||grad f(x^k)|| <= mu^2 / (4h), whether
    ||grad f(x^{k+1})|| <= (2 sqrt(h) / mu) ||grad f(x^k)||^{3/2} (+ atol).

    `atol` absorbs round-off once gradients reach machine precision.
    """
    if not (mu > 0 and h > 0):
        raise ValueError(f"mu and h must be positive, got mu={mu!r}, h={h!r}")
    threshold = mu * mu / (4.0 * h)
    factor = 2.0 * math.sqrt(h) / mu
    flags = []
    for current, following in zip(trace, trace[1:]):
        if current.grad_norm <= threshold:
            flags.append(following.grad_norm <= factor * current.grad_norm**1.5 + atol)
    return flags


def newton_step_budget(k: int, h_true: float, h0: float) -> float:
    """2(k+1) + max(0, log2(2 H / H_0)); the log term is 0 when H = 0."""
    log_term = math.log2(2.0 * h_true / h0) if h_true > 0 else 0.0
    return 2.0 * (k + 1) + max(0.0, log_term)


def audit_newton_steps(audit: InvariantAudit, trace: list[TraceRecord], h_true: float | None, h0: float) -> None:
    """Check the Newton-step counter of an AdaN trace.

    N_k must equal the running sum of inner counts. When H is known, N_k must
    also stay within the step budget and H_k within max(2H, H_0).
    """
    total = 0
    for record in trace:
        total += record.inner_count
        audit.check(record.k, "newton_step_count", abs(record.newton_steps_cum - total), 0)
        if h_true is None or record.inner_count == 0:
            continue
        audit.check(record.k, "newton_step_budget", record.newton_steps_cum, newton_step_budget(record.k, h_true, h0))
        audit.check(record.k, "estimate_ceiling", record.h_k, max(2.0 * h_true, h0))
