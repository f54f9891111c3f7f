import numpy as np
from scipy.special import expit


def _check_shape(n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise ValueError(f"n and d must be >= 1, got n={n}, d={d}")


def gen_logsumexp_instance(n: int, d: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Standard-normal a_1..a_n (rows, n x d) and b (length n)."""
    _check_shape(n, d)
    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((n, d))
    offsets = rng.standard_normal(n)
    return vectors, offsets


def gen_logistic_instance(n: int, d: int, seed: int, *, binary: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Features and 0/1 labels drawn from a planted logistic model.

    With `binary`, features are 0/1 with probability 1/2 each, similar to
    one-hot encoded categorical datasets.
    """
    _check_shape(n, d)
    rng = np.random.default_rng(seed)
    if binary:
        features = (rng.random((n, d)) < 0.5).astype(float)
    else:
        features = rng.standard_normal((n, d))
    planted = rng.standard_normal(d) / np.sqrt(d)
    labels = (rng.random(n) < expit(features @ planted)).astype(float)
    return features, labels
