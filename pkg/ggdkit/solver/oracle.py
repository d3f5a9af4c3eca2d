from ggdkit.exceptions import DimensionMismatchError
from ggdkit.matching import enumerate_matchings, matching_cost


def brute_force_ggd(g, h, coeffs):
    """Minimum cost over every matching between g and h.

    Exponential in the number of vertices; meant as a reference for small
    instances. Ties keep the first matching in enumeration order.

    Returns:
      (value, witness)

    """
    if g.dim != h.dim:
        raise DimensionMismatchError(g.dim, h.dim)
    best_value = float("inf")
    best_witness = None
    for m in enumerate_matchings(g, h):
        value = matching_cost(g, h, m, coeffs).total
        if value < best_value:
            best_value = value
            best_witness = m
    return best_value, best_witness
