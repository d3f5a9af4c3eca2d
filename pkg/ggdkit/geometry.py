"""Geometric graphs: vertices embedded in R^d joined by straight-line edges.

Graphs are immutable. Embedding validity (edges meeting only at shared
endpoints) is not enforced on construction; call validate_embedding() to
check it. Intermediate states of edit paths and solver tests routinely
build graphs that would fail it.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType

import networkx as nx
import numpy as np
from scipy.spatial import KDTree
from scipy.spatial.distance import directed_hausdorff

from ggdkit.exceptions import DimensionMismatchError, InvalidGraphError, UnknownEdgeError, UnknownVertexError
from ggdkit.utils import id_key
from ggdkit.validation import ValidationReport, Violation


def make_point(coords, dim=None):
    """Returns coords as a tuple of floats, checking finiteness and length."""
    point = tuple(float(c) for c in coords)
    if not point:
        raise InvalidGraphError("a point needs at least one coordinate")
    if not all(math.isfinite(c) for c in point):
        raise InvalidGraphError(f"non-finite coordinate in {point!r}")
    if dim is not None and len(point) != dim:
        raise InvalidGraphError(f"point {point!r} has {len(point)} coordinates, expected {dim}")
    return point


def distance(p, q):
    """Euclidean distance. Symmetric bit-for-bit in its arguments."""
    return math.dist(p, q)


def normalize_edge(a, b):
    """Canonical (sorted) representation of the unordered pair {a, b}."""
    return (a, b) if id_key(a) <= id_key(b) else (b, a)


@dataclass(frozen=True)
class CostCoefficients:
    c_v: float = 1.0
    c_e: float = 1.0

    def __post_init__(self):
        for name in ("c_v", "c_e"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
            object.__setattr__(self, name, float(value))


@dataclass(frozen=True, eq=False)
class GeometricGraph:
    dim: int
    vertices: object
    edges: object = frozenset()

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InvalidGraphError(f"dimension must be a positive integer, got {self.dim!r}")
        vertices = {}
        for vertex_id, coords in dict(self.vertices).items():
            vertices[vertex_id] = make_point(coords, self.dim)
        edges = set()
        for pair in self.edges:
            a, b = pair
            if a == b:
                raise InvalidGraphError(f"self-loop on vertex {a!r}")
            for endpoint in (a, b):
                if endpoint not in vertices:
                    raise InvalidGraphError(f"edge {(a, b)!r} references unknown vertex {endpoint!r}")
            edge = normalize_edge(a, b)
            if edge in edges:
                raise InvalidGraphError(f"duplicate edge {edge!r}")
            edges.add(edge)
        object.__setattr__(self, "vertices", MappingProxyType(vertices))
        object.__setattr__(self, "edges", frozenset(edges))

    def __repr__(self):
        return f"GeometricGraph(dim={self.dim}, |V|={len(self.vertices)}, |E|={len(self.edges)})"

    @cached_property
    def adjacency(self):
        adjacency = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        return MappingProxyType({v: frozenset(n) for v, n in adjacency.items()})

    @cached_property
    def vertex_order(self):
        return tuple(sorted(self.vertices, key=id_key))

    @cached_property
    def edge_order(self):
        return tuple(sorted(self.edges, key=lambda e: (id_key(e[0]), id_key(e[1]))))

    def coords(self, vertex_id):
        try:
            return self.vertices[vertex_id]
        except KeyError:
            raise UnknownVertexError(vertex_id) from None

    def neighbors(self, vertex_id):
        try:
            return self.adjacency[vertex_id]
        except KeyError:
            raise UnknownVertexError(vertex_id) from None

    def degree(self, vertex_id):
        return len(self.neighbors(vertex_id))

    def has_edge(self, a, b):
        return a != b and normalize_edge(a, b) in self.edges

    def require_edge(self, edge):
        a, b = edge
        if not self.has_edge(a, b):
            raise UnknownEdgeError(edge)
        return normalize_edge(a, b)


def edge_length(g, e):
    """Euclidean length of edge e of g."""
    a, b = g.require_edge(e)
    return distance(g.vertices[a], g.vertices[b])


def volume(g):
    """Sum of the edge lengths of g."""
    return math.fsum(distance(g.vertices[a], g.vertices[b]) for a, b in g.edges)


def max_degree(g):
    return max((len(n) for n in g.adjacency.values()), default=0)


def has_isolated_vertices(g):
    return any(not n for n in g.adjacency.values())


# Relative error bound of the float orientation determinant; a smaller
# magnitude is settled in exact arithmetic.
ORIENTATION_FILTER = 1e-15


def _closest_params(p1, q1, p2, q2):
    """Parameters (s, t) of the closest points of segments [p1, q1] and [p2, q2] in R^d.

    The points are p1 + s(q1 - p1) and p2 + t(q2 - p2). Works on floats and,
    with no rounding at all, on Fractions.
    """
    d1 = [b - a for a, b in zip(p1, q1)]
    d2 = [b - a for a, b in zip(p2, q2)]
    r = [a - b for a, b in zip(p1, p2)]
    a = _dot(d1, d1)
    e = _dot(d2, d2)
    f = _dot(d2, r)
    if a == 0 and e == 0:
        return 0, 0
    if a == 0:
        return 0, _clamp(f / e)
    c = _dot(d1, r)
    if e == 0:
        return _clamp(-c / a), 0
    b = _dot(d1, d2)
    denom = a * e - b * b
    s = _clamp((b * f - c * e) / denom) if denom != 0 else 0
    t = (b * s + f) / e
    if t < 0:
        return _clamp(-c / a), 0
    if t > 1:
        return _clamp((b - c) / a), 1
    return s, t


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _clamp(x):
    return min(max(x, 0), 1)


def _lerp(p, q, s):
    return tuple(a + (b - a) * s for a, b in zip(p, q))


def _closest_points(p1, q1, p2, q2):
    s, t = _closest_params(p1, q1, p2, q2)
    return _lerp(p1, q1, s), _lerp(p2, q2, t)


def _point_segment_distance(p, a, b):
    c1, c2 = _closest_points(p, p, a, b)
    return distance(c1, c2)


def _orientation(a, b, c):
    """Sign of the cross product (b - a) x (c - a) of planar points, exactly."""
    left = (b[0] - a[0]) * (c[1] - a[1])
    right = (b[1] - a[1]) * (c[0] - a[0])
    det = left - right
    bound = ORIENTATION_FILTER * (abs(left) + abs(right))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    a, b, c = (tuple(Fraction(x) for x in p) for p in (a, b, c))
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def _in_box(p, a, b):
    return all(min(x, y) <= z <= max(x, y) for x, y, z in zip(a, b, p))


def _boxes_overlap(p1, q1, p2, q2):
    return all(
        max(min(a1, b1), min(a2, b2)) <= min(max(a1, b1), max(a2, b2)) for a1, b1, a2, b2 in zip(p1, q1, p2, q2)
    )


def _on_segment(p, a, b):
    """Whether point p lies on the closed segment [a, b], exactly."""
    if not _in_box(p, a, b):
        return False
    return all(
        _orientation((a[i], a[j]), (b[i], b[j]), (p[i], p[j])) == 0
        for i, j in itertools.combinations(range(len(p)), 2)
    )


def _planar_meet(p1, q1, p2, q2):
    o1 = _orientation(p1, q1, p2)
    o2 = _orientation(p1, q1, q2)
    o3 = _orientation(p2, q2, p1)
    o4 = _orientation(p2, q2, q1)
    if o1 * o2 < 0 and o3 * o4 < 0:
        d1 = (q1[0] - p1[0], q1[1] - p1[1])
        d2 = (q2[0] - p2[0], q2[1] - p2[1])
        denom = d1[0] * d2[1] - d1[1] * d2[0]
        if denom == 0.0:
            return p2
        s = ((p2[0] - p1[0]) * d2[1] - (p2[1] - p1[1]) * d2[0]) / denom
        return _lerp(p1, q1, s)
    for point, o, a, b in ((p2, o1, p1, q1), (q2, o2, p1, q1), (p1, o3, p2, q2), (q1, o4, p2, q2)):
        if o == 0 and _in_box(point, a, b):
            return point
    return None


def _segments_meet(p1, q1, p2, q2):
    """A point shared by the closed segments [p1, q1] and [p2, q2], or None.

    The decision is exact for the given float coordinates. Above two
    dimensions, segments that meet only up to rounding do not meet.
    """
    if not _boxes_overlap(p1, q1, p2, q2):
        return None
    if len(p1) == 1:
        return (max(min(p1[0], q1[0]), min(p2[0], q2[0])),)
    if len(p1) == 2:
        return _planar_meet(p1, q1, p2, q2)
    exact = [tuple(Fraction(x) for x in p) for p in (p1, q1, p2, q2)]
    c1, c2 = _closest_points(*exact)
    return tuple(float(x) for x in c1) if c1 == c2 else None


def validate_embedding(g, tol=0.0):
    """Checks that g is a geometric graph.

    Reports coincident vertices, zero-length edges, and pairs of edges
    whose segments meet anywhere other than a shared endpoint. Meeting is
    decided exactly; tol > 0 also reports segments that come within tol.
    In three or more dimensions rounded coordinates rarely meet exactly,
    so pass a tolerance there.
    """
    violations = []
    points = g.vertices
    order = g.vertex_order

    if len(order) > 1:
        tree = KDTree(np.array([points[v] for v in order], dtype=float))
        for i, j in sorted(tree.query_pairs(r=tol)):
            violations.append(
                Violation("coincident-vertices", (order[i], order[j]), f"{points[order[i]]}"),
            )

    for a, b in g.edge_order:
        if distance(points[a], points[b]) <= tol:
            violations.append(Violation("zero-length-edge", ((a, b),)))

    for e, f in itertools.combinations(g.edge_order, 2):
        shared = set(e) & set(f)
        if shared:
            (shared_id,) = shared
            x = points[e[0] if e[1] == shared_id else e[1]]
            y = points[f[0] if f[1] == shared_id else f[1]]
            p = points[shared_id]
            overlap = x != p and y != p and (_on_segment(x, p, y) or _on_segment(y, p, x))
            if not overlap and tol > 0.0:
                overlap = (distance(x, p) > tol and _point_segment_distance(x, p, y) <= tol) or (
                    distance(y, p) > tol and _point_segment_distance(y, p, x) <= tol
                )
            if overlap:
                violations.append(Violation("overlap", (e, f), f"edges overlap beyond shared endpoint {shared_id!r}"))
            continue
        segments = (points[e[0]], points[e[1]], points[f[0]], points[f[1]])
        at = _segments_meet(*segments)
        if at is None and tol > 0.0:
            c1, c2 = _closest_points(*segments)
            if distance(c1, c2) <= tol:
                at = _lerp(c1, c2, 0.5)
        if at is not None:
            at = tuple(float(c) for c in at)
            violations.append(Violation("crossing", (e, f), f"segments meet at {at}"))

    return ValidationReport(tuple(violations))


def geometric_isomorphism(g, h, tol=0.0):
    """Map from ids of g to ids of h under which g and h coincide, or None.

    Vertices correspond when their points are within tol of each other and
    the map must carry edges onto edges.
    """
    if g.dim != h.dim:
        raise DimensionMismatchError(g.dim, h.dim)
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    matcher = nx.algorithms.isomorphism.GraphMatcher(
        to_networkx(g),
        to_networkx(h),
        node_match=lambda x, y: distance(x["coords"], y["coords"]) <= tol,
    )
    for mapping in matcher.isomorphisms_iter():
        return dict(mapping)
    return None


def graphs_equal(g, h, tol=0.0):
    """Geometric equality: same point sets and same edges between them.

    Vertex ids are ignored.
    """
    return geometric_isomorphism(g, h, tol) is not None


def vertex_hausdorff(g, h):
    """Hausdorff distance between the vertex sets of g and h."""
    if g.dim != h.dim:
        raise DimensionMismatchError(g.dim, h.dim)
    if not g.vertices and not h.vertices:
        return 0.0
    if not g.vertices or not h.vertices:
        return math.inf
    u = np.array(list(g.vertices.values()), dtype=float)
    v = np.array(list(h.vertices.values()), dtype=float)
    return max(directed_hausdorff(u, v)[0], directed_hausdorff(v, u)[0])


def to_networkx(g):
    graph = nx.Graph()
    for v in g.vertex_order:
        graph.add_node(v, coords=g.vertices[v])
    for a, b in g.edge_order:
        graph.add_edge(a, b, length=distance(g.vertices[a], g.vertices[b]))
    return graph


def transform(g, matrix=None, offset=None):
    """Applies x -> matrix @ x + offset to every vertex of g."""
    matrix = np.eye(g.dim) if matrix is None else np.asarray(matrix, dtype=float)
    offset = np.zeros(g.dim) if offset is None else np.asarray(offset, dtype=float)
    vertices = {v: matrix @ np.asarray(p, dtype=float) + offset for v, p in g.vertices.items()}
    return GeometricGraph(g.dim, vertices, g.edges)


def relabel(g, mapping):
    """Returns a copy of g with vertex ids renamed through mapping."""
    vertices = {mapping[v]: p for v, p in g.vertices.items()}
    edges = [(mapping[a], mapping[b]) for a, b in g.edges]
    return GeometricGraph(g.dim, vertices, edges)
