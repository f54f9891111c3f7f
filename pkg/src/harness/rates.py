"""Rate fits and iteration diagnostics for finished traces."""

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from errors import DegenerateWindowError
from solvers.types import TraceRecord

logger = logging.getLogger(__name__)

SUPERLINEAR_RATIO = 1e-2
STEADY_RATIO = 0.25
BLOW_UP_RTOL = 1e-8


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    window: tuple[int, int]
    r_squared: float


def default_rate_window(trace: list[TraceRecord]) -> tuple[int, int]:
    """Middle two quartiles of the iterations before the first gradient drop by 100x."""
    end = trace[-1].k if trace else 0
    for current, following in zip(trace, trace[1:]):
        if following.grad_norm < SUPERLINEAR_RATIO * current.grad_norm:
            end = current.k
            break
    lo = max(1, end // 4)
    return lo, max(lo, (3 * end) // 4)


def fit_rate(trace: list[TraceRecord], f_star: float, window: tuple[int, int] | None = None) -> RateFit:
    """Least-squares line through (log k, log(f(x^k) - f_star)) for k in the window (inclusive)."""
    k_lo, k_hi = default_rate_window(trace) if window is None else window
    if k_lo >= k_hi:
        raise DegenerateWindowError(f"Empty rate window [{k_lo}, {k_hi}]")
    points = [(record.k, record.f - f_star) for record in trace if max(k_lo, 1) <= record.k <= k_hi]
    if len(points) < 3:
        raise DegenerateWindowError(f"Rate window [{k_lo}, {k_hi}] holds {len(points)} points, need at least 3")
    ks, gaps = np.array(points, dtype=float).T
    if np.any(gaps <= 0):
        raise ValueError(f"f - f_star must be positive over the window [{k_lo}, {k_hi}]")

    x, y = np.log(ks), np.log(gaps)
    slope, intercept = np.polyfit(x, y, 1)
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return RateFit(float(slope), float(intercept), (k_lo, k_hi), r_squared)


def sequence_bound_check(alpha0: float, steps: int) -> bool:
    """Iterate a_{k+1} = a_k - (2/3) a_k^{3/2} and check a_{k+1} <= 1 / (1 + k/3)^2 for every k < steps."""
    if not 0 < alpha0 < 2.25:
        raise ValueError(f"alpha0 must lie in (0, 2.25), got {alpha0!r}")
    alpha = alpha0
    for k in range(steps):
        alpha -= (2.0 / 3.0) * alpha**1.5
        if alpha > 1.0 / (1.0 + k / 3.0) ** 2:
            logger.debug("Sequence bound fails at k=%d for alpha0=%.6g", k, alpha0)
            return False
    return True


class IterationPartition(NamedTuple):
    steady: list[int]
    sharp: list[int]
    blow_ups: list[int] = []

    @property
    def no_blow_up(self) -> bool:
        return not self.blow_ups


def blow_up_indices(trace: list[TraceRecord]) -> list[int]:
    """Indices i with ||grad f(x^{i+1})|| > 2 ||grad f(x^i)|| (1 + 1e-8)."""
    return [
        i
        for i, (current, following) in enumerate(zip(trace, trace[1:]))
        if following.grad_norm > 2.0 * current.grad_norm * (1.0 + BLOW_UP_RTOL)
    ]


def steady_sharp_partition(trace: list[TraceRecord]) -> IterationPartition:
    """Split 0..K-1 into steady steps (gradient shrinks by less than 4x) and sharp ones."""
    steady: list[int] = []
    sharp: list[int] = []
    for i, (current, following) in enumerate(zip(trace, trace[1:])):
        (steady if following.grad_norm >= STEADY_RATIO * current.grad_norm else sharp).append(i)
    blow_ups = blow_up_indices(trace)
    if blow_ups:
        logger.warning("Gradient more than doubled at %d step(s), first at i=%d", len(blow_ups), blow_ups[0])
    return IterationPartition(steady, sharp, blow_ups)


def iterations_to_tol(trace: list, grad_tol: float) -> int | None:
    """First k with ||grad|| <= grad_tol, or None."""
    for record in trace:
        if record.grad_norm <= grad_tol:
            return record.k
    return None
