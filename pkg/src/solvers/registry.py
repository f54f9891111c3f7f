from dataclasses import dataclass
from typing import Any, Callable, Dict, List

import numpy as np

from .types import LMConfig, RunResult, SolverConfig


@dataclass(frozen=True)
class MethodSpec:
    name: str
    title: str
    description: str
    # "objective" methods take an ObjectiveOracle, "least_squares" a LeastSquaresOracle
    family: str = "objective"


@dataclass(frozen=True)
class MethodSettings:
    """Everything a registered method may read; each method builds its own config from it.

    `lipschitz` is the gradient Lipschitz constant used by fixed-step first-order
    methods; when None the handler estimates it at x0.
    """

    h_const: float = 1.0
    c_const: float = 1.0
    h0: float = 1.0
    grad_tol: float = 1e-8
    max_iters: int = 1000
    max_inner: int = 60
    check_invariants: bool = False
    lipschitz: float | None = None
    adaptive_c: bool = False

    def solver_config(self, **overrides: Any) -> SolverConfig:
        fields = dict(
            h_const=self.h_const,
            h0=self.h0,
            grad_tol=self.grad_tol,
            max_iters=self.max_iters,
            max_inner=self.max_inner,
            check_invariants=self.check_invariants,
        )
        fields.update(overrides)
        return SolverConfig(**fields)

    def lm_config(self) -> LMConfig:
        return LMConfig(
            c_const=self.c_const,
            grad_tol=self.grad_tol,
            max_iters=self.max_iters,
            adaptive_c=self.adaptive_c,
            check_invariants=self.check_invariants,
        )


MethodHandler = Callable[[Any, np.ndarray, MethodSettings], RunResult]

_METHOD_SPECS: Dict[str, MethodSpec] = {}
_METHOD_HANDLERS: Dict[str, MethodHandler] = {}


def register_method(spec: MethodSpec, handler: MethodHandler) -> None:
    _METHOD_SPECS[spec.name] = spec
    _METHOD_HANDLERS[spec.name] = handler


def list_all_methods() -> List[MethodSpec]:
    return list(_METHOD_SPECS.values())


def get_method(name: str) -> MethodSpec:
    if name not in _METHOD_SPECS:
        raise ValueError(f"Unknown method: {name}")
    return _METHOD_SPECS[name]


def dispatch(name: str, oracle: Any, x0, settings: MethodSettings) -> RunResult:
    spec = get_method(name)
    return _METHOD_HANDLERS[spec.name](oracle, np.asarray(x0, dtype=float), settings)
