"""Named problem instances shared by the CLI and the experiment runner."""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from data_io import gen_logistic_instance, gen_logsumexp_instance, load_libsvm
from linalg import DenseSymmetricMatrix
from oracles import (
    ProblemMetadata,
    logsumexp_constants,
    make_cubic_norm_worstcase,
    make_least_squares_poly,
    make_logistic,
    make_logsumexp,
    make_quadratic,
    squared_spectral_norm,
)
from oracles.logistic import as_feature_matrix

logger = logging.getLogger(__name__)

# l = 1e-10 * ||A||^2 / n makes the regularized problem ill-conditioned
LOGREG_REG_SCALE = 1e-10


@dataclass(frozen=True, eq=False)
class Problem:
    """An oracle with its starting point and the constants the non-adaptive methods need.

    `hessian_lipschitz` is the H handed to reg_newton and cubic_newton when the
    caller does not override it; `lipschitz` is the gradient constant for the
    fixed-step first-order methods.
    """

    name: str
    oracle: Any
    x0: np.ndarray
    lipschitz: float | None = None
    hessian_lipschitz: float | None = None


def logistic_problem(features, labels, reg: float | None = None, *, name: str = "logistic") -> Problem:
    a = as_feature_matrix(features)
    n = a.shape[0]
    lipschitz = squared_spectral_norm(a) / n
    if reg is None:
        reg = LOGREG_REG_SCALE * lipschitz
    oracle = make_logistic(a, labels, reg)
    logger.info("%s: n=%d d=%d L=%.6e reg=%.3e H=%.6e", name, n, a.shape[1], lipschitz, reg, oracle.metadata.hessian_lipschitz)
    return Problem(
        name=name,
        oracle=oracle,
        x0=np.ones(a.shape[1]),
        lipschitz=lipschitz + reg,
        hessian_lipschitz=oracle.metadata.hessian_lipschitz,
    )


def logsumexp_problem(n: int, d: int, rho: float, seed: int) -> Problem:
    vectors, offsets = gen_logsumexp_instance(n, d, seed)
    lipschitz, h = logsumexp_constants(vectors, rho)
    oracle = make_logsumexp(vectors, offsets, rho, metadata=ProblemMetadata(hessian_lipschitz=h))
    return Problem(name=f"logsumexp_rho{rho:g}", oracle=oracle, x0=np.zeros(d), lipschitz=lipschitz, hessian_lipschitz=h)


def quadratic_problem(dim: int, seed: int) -> Problem:
    """Random SPD quadratic with eigenvalues spread over [1, 100]."""
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    eigenvalues = np.logspace(0.0, 2.0, dim)
    a = DenseSymmetricMatrix(q @ np.diag(eigenvalues) @ q.T)
    oracle = make_quadratic(a, rng.standard_normal(dim))
    return Problem(name="quadratic", oracle=oracle, x0=np.zeros(dim), lipschitz=float(eigenvalues[-1]), hessian_lipschitz=0.0)


def build_problem(
    problem: str,
    *,
    dataset: str | None = None,
    seed: int = 0,
    rho: float = 0.5,
    reg: float | None = None,
    dim: int = 5,
    n: int = 200,
    d: int = 50,
    positive_label: float | None = None,
) -> Problem:
    if problem == "quadratic":
        return quadratic_problem(dim, seed)
    if problem == "cubic_worstcase":
        oracle = make_cubic_norm_worstcase(dim)
        return Problem(
            name="cubic_worstcase",
            oracle=oracle,
            x0=np.zeros(dim),
            hessian_lipschitz=oracle.metadata.hessian_lipschitz,
        )
    if problem == "logistic":
        if dataset is not None:
            data = load_libsvm(dataset, positive_label=positive_label)
            return logistic_problem(data.to_csr(), data.labels, reg, name=f"logistic[{dataset}]")
        features, labels = gen_logistic_instance(n, d, seed)
        return logistic_problem(features, labels, reg)
    if problem == "logsumexp":
        return logsumexp_problem(n, d, rho, seed)
    if problem == "least_squares":
        oracle = make_least_squares_poly("quadratic", dim=dim)
        return Problem(name="least_squares", oracle=oracle, x0=np.full(dim, 2.0))
    raise ValueError(f"Unknown problem: {problem}")
