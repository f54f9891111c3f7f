import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from errors import NoDescentError, StallNoStepError
from oracles import ObjectiveOracle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArmijoConfig:
    """Backtracking settings. The first trial of each search is 2 * the previous alpha."""

    alpha_init: float = 1.0
    sufficient_decrease: float = 0.5
    max_halvings: int = 60

    def __post_init__(self) -> None:
        if not self.alpha_init > 0:
            raise ValueError(f"'alpha_init' must be positive, got {self.alpha_init!r}")
        if not 0 < self.sufficient_decrease < 1:
            raise ValueError(f"'sufficient_decrease' must lie in (0, 1), got {self.sufficient_decrease!r}")
        if self.max_halvings < 1:
            raise ValueError(f"'max_halvings' must be >= 1, got {self.max_halvings!r}")


class ArmijoStep(NamedTuple):
    alpha: float
    x_next: np.ndarray


def armijo_search(
    oracle: ObjectiveOracle,
    x: np.ndarray,
    direction: np.ndarray,
    prev_alpha: float,
    cfg: ArmijoConfig,
    *,
    f: float | None = None,
    grad: np.ndarray | None = None,
) -> ArmijoStep:
    """Halve alpha from 2 * prev_alpha until f(x + alpha d) <= f(x) + c alpha <grad f(x), d>."""
    f = oracle.value(x) if f is None else f
    g = oracle.gradient(x) if grad is None else grad
    slope = float(g @ direction)
    if not slope < 0:
        raise NoDescentError(f"Direction is not a descent direction (<grad, d> = {slope:.3e})")

    alpha = 2.0 * prev_alpha
    for _ in range(cfg.max_halvings + 1):
        x_next = x + alpha * direction
        # NaN trial values compare False and get halved
        if oracle.value(x_next) <= f + cfg.sufficient_decrease * alpha * slope:
            return ArmijoStep(alpha, x_next)
        alpha /= 2.0
    raise StallNoStepError(f"Armijo condition not met after {cfg.max_halvings} halvings (alpha={alpha:.3e})")


def armijo_trials(prev_alpha: float, alpha: float) -> int:
    """Number of trial points armijo_search evaluated to accept alpha."""
    return int(round(math.log2(2.0 * prev_alpha / alpha))) + 1
