"""Small hand-built graph pairs with known distances."""

import math

from ggdkit.editpath import DeleteEdge, EditPath, InsertEdge, TranslateVertex
from ggdkit.geometry import GeometricGraph


def wiggle_pair():
    """Two parallel unit edges one unit apart in the plane.

    GGD is 2 C_V whenever C_E > C_V, but no finite edit path attains that
    value (see wiggle_edit_path()).
    """
    g = GeometricGraph(2, {"u1": (0.0, 0.0), "u2": (1.0, 0.0)}, [("u1", "u2")])
    h = GeometricGraph(2, {"v1": (0.0, 1.0), "v2": (1.0, 1.0)}, [("v1", "v2")])
    return g, h


def wiggle_edit_path(k):
    """Moves the two ends of the wiggle edge up in 2k alternating steps of 1/k."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    g, _ = wiggle_pair()
    ops = []
    for i in range(1, k + 1):
        y = i / k
        ops.append(TranslateVertex("u1", (0.0, y)))
        ops.append(TranslateVertex("u2", (1.0, y)))
    return EditPath(g, tuple(ops))


def wiggle_path_cost(k, coeffs):
    """Closed form of path_cost(wiggle_edit_path(k))."""
    return 2 * coeffs.c_v + coeffs.c_e * (2 / k) / (math.sqrt(1 / k**2 + 1) + 1)


def _tight_lengths(d_target, coeffs):
    if not d_target > 0:
        raise ValueError(f"d_target must be positive, got {d_target!r}")
    x = d_target / (2 * coeffs.c_v)
    length = (1 + 2 * coeffs.c_v / coeffs.c_e) * x
    return x, length


def tight_pair(d_target, coeffs):
    """Two collinear segments of length L, shifted by x along the line.

    Matching each endpoint to the shifted one costs exactly d_target; any
    edit path pays the edge shrinking and regrowing on top of it.
    """
    x, length = _tight_lengths(d_target, coeffs)
    g = GeometricGraph(1, {"u1": (0.0,), "u2": (length,)}, [("u1", "u2")])
    h = GeometricGraph(1, {"v1": (x,), "v2": (length + x,)}, [("v1", "v2")])
    return g, h


def tight_edit_path(d_target, coeffs):
    """Shifts u1 then u2 by x: the edge shrinks by x, then grows back."""
    x, length = _tight_lengths(d_target, coeffs)
    g, _ = tight_pair(d_target, coeffs)
    return EditPath(g, (TranslateVertex("u1", (x,)), TranslateVertex("u2", (length + x,))))


def tight_ged(d_target, coeffs):
    """Geometric edit distance of tight_pair(d_target, coeffs)."""
    return (1 + coeffs.c_e / coeffs.c_v) * d_target


def orbit_demo_pair():
    g = GeometricGraph(
        2,
        {"u1": (0.0, 1.0), "u2": (0.0, 0.0), "u3": (2.0, 0.0)},
        [("u1", "u2"), ("u2", "u3")],
    )
    h = GeometricGraph(
        2,
        {"v3": (1.0, 2.0), "v2": (3.0, 2.0), "v1": (3.0, 3.0)},
        [("v3", "v2"), ("v2", "v1")],
    )
    return g, h


def orbit_demo_path():
    """Four ops on orbit_demo_pair()'s G: u2 follows v3, the edge (u2, u3) follows (v3, v2)."""
    g, h = orbit_demo_pair()
    return EditPath(
        g,
        (
            DeleteEdge("u1", "u2"),
            TranslateVertex("u2", h.vertices["v3"]),
            TranslateVertex("u3", h.vertices["v2"]),
            InsertEdge("u1", "u3"),
        ),
    )
