"""Polynomial-time bounds on the geometric graph distance."""

import logging

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from ggdkit.geometry import distance, volume
from ggdkit.matching import DELETED, matching_cost, matching_from_forward, trivial_matching

logger = logging.getLogger(__name__)


def ggd_lower_bound(g, h, coeffs):
    """C_E |Vol(G) - Vol(H)|, a lower bound on the cost of every matching."""
    return coeffs.c_e * abs(volume(g) - volume(h))


def ggd_upper_bound_trivial(g, h, coeffs):
    """C_E (Vol(G) + Vol(H)), the cost of deleting everything."""
    return coeffs.c_e * (volume(g) + volume(h))


def pairing_costs(g, h, coeffs):
    """Matrix of C_V |u - v| with rows in g.vertex_order and columns in h.vertex_order."""
    u = np.array([g.vertices[v] for v in g.vertex_order], dtype=float).reshape(len(g.vertices), g.dim)
    v = np.array([h.vertices[w] for w in h.vertex_order], dtype=float).reshape(len(h.vertices), h.dim)
    if not len(u) or not len(v):
        return np.zeros((len(u), len(v)))
    return coeffs.c_v * cdist(u, v)


def _deletion_costs(graph, coeffs):
    return np.array(
        [
            0.5 * coeffs.c_e * sum(distance(graph.vertices[v], graph.vertices[w]) for w in graph.neighbors(v))
            for v in graph.vertex_order
        ],
        dtype=float,
    )


def assignment_matching(g, h, coeffs):
    """Vertex matching from a rectangular min-cost assignment.

    Pairing u with v costs C_V |u - v|; deleting a vertex costs half of
    C_E times the length of its incident edges. The square
    (n + m) x (n + m) matrix pads both sides with deletion slots.
    """
    n, m = len(g.vertices), len(h.vertices)
    if n == 0 or m == 0:
        return matching_from_forward(g, h, {})
    size = n + m
    cost = np.full((size, size), np.inf)
    cost[:n, :m] = pairing_costs(g, h, coeffs)
    cost[:n, m:][np.diag_indices(n)] = _deletion_costs(g, coeffs)
    cost[n:, :m][np.diag_indices(m)] = _deletion_costs(h, coeffs)
    cost[n:, m:] = 0.0
    rows, cols = linear_sum_assignment(cost)
    forward = {}
    for row, col in zip(rows, cols):
        if row < n:
            forward[g.vertex_order[row]] = h.vertex_order[col] if col < m else DELETED
    return matching_from_forward(g, h, forward)


def ggd_upper_bound_assignment(g, h, coeffs):
    """Upper bound from a feasible matching.

    Prices the assignment matching exactly. The assignment ignores edge
    structure, so when deleting everything is cheaper the trivial
    matching is returned instead.

    Returns:
      (cost, witness)

    """
    witness = assignment_matching(g, h, coeffs)
    value = matching_cost(g, h, witness, coeffs).total
    trivial = trivial_matching(g, h)
    trivial_value = matching_cost(g, h, trivial, coeffs).total
    if trivial_value < value:
        logger.debug(f"assignment matching ({value}) beaten by the trivial matching ({trivial_value})")
        return trivial_value, trivial
    return value, witness
