"""Shared generators for the test suite."""

import numpy as np

from sl2lab import polar_matrix


def random_sl2_list(rng, count, c_max=10.0):
    """Random unit-determinant matrices with operator norm in [1, c_max]."""
    beta = rng.uniform(0.0, 2.0 * np.pi, count)
    alpha = rng.uniform(0.0, 2.0 * np.pi, count)
    c = np.exp(rng.uniform(0.0, np.log(c_max), count))
    return list(polar_matrix(beta, c, alpha))


def random_instances(rng, count, n_range=(1, 4), c_max=10.0):
    """Lists of 1..4 random matrices, the shape the averaging checks take."""
    out = []
    for _ in range(count):
        n = rng.integers(n_range[0], n_range[1] + 1)
        out.append(random_sl2_list(rng, n, c_max))
    return out


def rel_close(a, b, tol):
    """Entrywise closeness relative to the larger scale (huge products)."""
    a, b = np.asarray(a), np.asarray(b)
    scale = max(1.0, np.abs(a).max(), np.abs(b).max())
    return np.abs(a - b).max() <= tol * scale
