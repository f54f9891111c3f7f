import numpy as np
import pytest

from linalg import DenseSymmetricMatrix
from oracles import ObjectiveOracle, ProblemMetadata, make_least_squares, make_quadratic
from solvers import register_all_methods


def half_square() -> ObjectiveOracle:
    """f(x) = x^2 / 2 on R."""
    return make_quadratic(DenseSymmetricMatrix(np.array([[1.0]])), np.zeros(1))


def scalar_cubic() -> ObjectiveOracle:
    """f(x) = |x|^3 / 3 on R; f'' = 2|x| is 2-Lipschitz, so H = 1."""
    return ObjectiveOracle(
        name="scalar_cubic",
        dim=1,
        value=lambda x: float(np.abs(x[0]) ** 3 / 3.0),
        gradient=lambda x: x * np.abs(x),
        hessian=lambda x: DenseSymmetricMatrix(np.array([[2.0 * abs(x[0])]])),
        metadata=ProblemMetadata(hessian_lipschitz=1.0, strong_convexity=0.0, optimal_value=0.0),
    )


def identity_residual():
    """F(x) = x on R."""
    return make_least_squares(1, lambda x: np.array(x, dtype=float), lambda x: np.eye(1), name="identity")


@pytest.fixture
def quad():
    return half_square()


@pytest.fixture
def cubic():
    return scalar_cubic()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def registered_methods():
    register_all_methods()
