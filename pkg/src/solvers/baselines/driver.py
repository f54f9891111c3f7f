import itertools
import logging
import time
from collections.abc import Callable
from typing import NamedTuple

import numpy as np

from errors import BisectFailError, NoDescentError, SingularSystemError, StallNoStepError
from oracles import ObjectiveOracle

from ..audit import elapsed_ms, finish_run
from ..types import RunResult, RunStatus, SolverConfig, TraceRecord

logger = logging.getLogger(__name__)


class BaselineStep(NamedTuple):
    """Outcome of one baseline iteration.

    `scale` is the method's own parameter (step size, L or H) and is written
    to the trace as h_k. `solves` counts shifted linear solves only.
    """

    x_next: np.ndarray
    scale: float
    inner_count: int
    solves: int = 0
    lam: float = 0.0


StepFn = Callable[[int, np.ndarray, float, np.ndarray], BaselineStep]


def drive(method: str, oracle: ObjectiveOracle, x0, cfg: SolverConfig, step: StepFn, *, scale0: float) -> RunResult:
    """Run `step` until ||grad f|| <= grad_tol or max_iters, recording one trace row per iterate."""
    x = np.array(x0, dtype=float)
    trace: list[TraceRecord] = []
    started = time.perf_counter()
    status = RunStatus.MAX_ITERS
    message = ""
    solves = 0
    scale = scale0

    for k in itertools.count():
        f = oracle.value(x)
        g = oracle.gradient(x)
        grad_norm = float(np.linalg.norm(g))
        if grad_norm <= cfg.grad_tol:
            status = RunStatus.CONVERGED
            break
        if k >= cfg.max_iters:
            break

        try:
            out = step(k, x, f, g)
        except SingularSystemError as exc:
            status, message = RunStatus.SINGULAR_SYSTEM, str(exc)
            break
        except (NoDescentError, StallNoStepError, BisectFailError) as exc:
            status, message = RunStatus.LINE_SEARCH_STALLED, str(exc)
            break

        solves += out.solves
        scale = out.scale
        step_norm = float(np.linalg.norm(out.x_next - x))
        record = TraceRecord(k, f, grad_norm, out.lam, step_norm, scale, out.inner_count, solves, elapsed_ms(started))
        logger.debug(
            "%s k=%d f=%.12e |g|=%.3e scale=%.3e n=%d", method, k, f, grad_norm, scale, out.inner_count
        )
        trace.append(record)
        x = out.x_next

    trace.append(TraceRecord(k, f, grad_norm, 0.0, 0.0, scale, 0, solves, elapsed_ms(started)))
    return finish_run(RunResult(x, trace, status, [], method=method, message=message))
