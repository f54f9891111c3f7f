from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np


class RunStatus(StrEnum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    LINE_SEARCH_STALLED = "line_search_stalled"
    SINGULAR_SYSTEM = "singular_system"


def _require_positive(obj, *names: str) -> None:
    for name in names:
        value = getattr(obj, name)
        if not value > 0:
            raise ValueError(f"'{name}' must be positive, got {value!r}")


@dataclass(frozen=True)
class SolverConfig:
    """Settings shared by the Newton-family drivers.

    h_const is the H used by the fixed-regularization method, h0 seeds the
    adaptive ones.
    """

    h_const: float = 1.0
    h0: float = 1.0
    grad_tol: float = 1e-8
    max_iters: int = 1000
    max_inner: int = 60
    check_invariants: bool = False

    def __post_init__(self) -> None:
        _require_positive(self, "h_const", "h0", "grad_tol", "max_iters", "max_inner")


@dataclass(frozen=True)
class LMConfig:
    c_const: float = 1.0
    grad_tol: float = 1e-8
    max_iters: int = 1000
    adaptive_c: bool = False
    check_invariants: bool = False

    def __post_init__(self) -> None:
        _require_positive(self, "c_const", "grad_tol", "max_iters")


@dataclass(frozen=True, eq=False)
class NewtonState:
    x: np.ndarray
    k: int = 0
    h_k: float = 1.0
    newton_steps: int = 0
    prev_x: np.ndarray | None = None


@dataclass(frozen=True)
class TraceRecord:
    k: int
    f: float
    grad_norm: float
    lam: float
    step_norm: float
    h_k: float
    inner_count: int
    newton_steps_cum: int
    wall_ms: float


@dataclass(frozen=True)
class LMTraceRecord:
    k: int
    residual_norm: float
    grad_norm: float
    lam: float
    step_norm: float
    c_k: float


@dataclass(frozen=True)
class InvariantViolation:
    k: int
    name: str
    lhs: float
    rhs: float


@dataclass(eq=False)
class RunResult:
    final_x: np.ndarray
    trace: list = field(default_factory=list)
    status: RunStatus = RunStatus.MAX_ITERS
    invariant_violations: list[InvariantViolation] = field(default_factory=list)
    method: str = ""
    message: str = ""

    @property
    def iterations(self) -> int:
        return max(0, len(self.trace) - 1)

    @property
    def final_record(self):
        return self.trace[-1] if self.trace else None
