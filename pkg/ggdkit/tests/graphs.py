"""Seeded supplies of small graphs and coefficients for property tests."""

from ggdkit.geometry import CostCoefficients
from ggdkit.instances import random_graph


def random_coeffs(rng):
    c_v, c_e = rng.uniform(0.1, 10.0, size=2)
    return CostCoefficients(float(c_v), float(c_e))


def small_graph(rng, max_vertices=4, max_edges=4, allow_isolated=True):
    while True:
        n = int(rng.integers(1, max_vertices + 1))
        m = int(rng.integers(0, min(max_edges, n * (n - 1) // 2) + 1))
        if not allow_isolated and (m == 0 or n > 2 * m):
            continue
        return random_graph(n, m, seed=int(rng.integers(2**32)), allow_isolated=allow_isolated)
