from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from linalg import DenseSymmetricMatrix

Vector = np.ndarray


@dataclass(frozen=True, eq=False)
class ProblemMetadata:
    """Known constants of a problem. Any of them may be unknown (None)."""

    hessian_lipschitz: float | None = None
    strong_convexity: float | None = None
    optimal_value: float | None = None
    cubic_growth: float | None = None
    minimizer: Vector | None = None

    def __post_init__(self) -> None:
        for name in ("hessian_lipschitz", "strong_convexity", "cubic_growth"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"'{name}' must be nonnegative, got {value!r}")


@dataclass(frozen=True, eq=False)
class ObjectiveOracle:
    """f, its gradient and its Hessian for a smooth objective on R^dim."""

    name: str
    dim: int
    value: Callable[[Vector], float]
    gradient: Callable[[Vector], Vector]
    hessian: Callable[[Vector], DenseSymmetricMatrix]
    metadata: ProblemMetadata = field(default_factory=ProblemMetadata)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"Oracle dimension must be >= 1, got {self.dim}")


@dataclass(frozen=True, eq=False)
class LeastSquaresOracle:
    """Residual operator F: R^dim -> R^dim and its Jacobian, for min 1/2 ||F(x)||^2.

    `jacobian_bound` (the J with ||dF(x)|| <= J) is informational only; no
    algorithm reads it.
    """

    name: str
    dim: int
    residual: Callable[[Vector], Vector]
    jacobian: Callable[[Vector], np.ndarray]
    jacobian_bound: float | None = None
    metadata: ProblemMetadata = field(default_factory=ProblemMetadata)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"Oracle dimension must be >= 1, got {self.dim}")
        if self.jacobian_bound is not None and self.jacobian_bound < 0:
            raise ValueError(f"'jacobian_bound' must be nonnegative, got {self.jacobian_bound!r}")
