"""Seeded random graphs and random legal edit paths.

Each call owns its generator (numpy.random.default_rng(seed)); nothing
touches global random state.
"""

import itertools
import logging
import math

import numpy as np

from ggdkit.editpath import DeleteEdge, DeleteVertex, EditPath, EditState, InsertEdge, InsertVertex, TranslateVertex
from ggdkit.geometry import GeometricGraph, has_isolated_vertices, validate_embedding
from ggdkit.utils import id_key

logger = logging.getLogger(__name__)

UNIT_SQUARE = ((0.0, 0.0), (1.0, 1.0))

MAX_TRIES = 1000


def _sample(rng, n_vertices, n_edges, low, high):
    points = rng.uniform(low, high, size=(n_vertices, len(low)))
    pairs = list(itertools.combinations(range(n_vertices), 2))
    chosen = rng.choice(len(pairs), size=n_edges, replace=False) if n_edges else []
    vertices = {i: tuple(float(c) for c in points[i]) for i in range(n_vertices)}
    return GeometricGraph(len(low), vertices, [pairs[int(k)] for k in chosen])


def random_graph(n_vertices, n_edges, box=UNIT_SQUARE, seed=None, planar=False, allow_isolated=True):
    """Uniform points in box joined by edges drawn without replacement.

    planar resamples until validate_embedding() passes; allow_isolated=False
    resamples until every vertex has an edge. Gives up after MAX_TRIES
    draws. Vertex ids are 0..n_vertices-1.
    """
    low = np.asarray(box[0], dtype=float)
    high = np.asarray(box[1], dtype=float)
    if low.shape != high.shape or low.ndim != 1 or not len(low):
        raise ValueError(f"box must be a pair of points of equal dimension, got {box!r}")
    if n_vertices < 0 or n_edges < 0:
        raise ValueError("vertex and edge counts must be nonnegative")
    if n_edges > math.comb(n_vertices, 2):
        raise ValueError(f"{n_vertices} vertices cannot carry {n_edges} edges")
    if not allow_isolated and n_vertices > 2 * n_edges:
        raise ValueError(f"{n_edges} edges cannot cover {n_vertices} vertices")

    rng = np.random.default_rng(seed)
    for attempt in range(MAX_TRIES):
        g = _sample(rng, n_vertices, n_edges, low, high)
        if not allow_isolated and has_isolated_vertices(g):
            continue
        if planar and not validate_embedding(g).is_valid:
            continue
        if attempt:
            logger.debug(f"random graph accepted after {attempt + 1} draws")
        return g
    raise ValueError(f"no acceptable graph with {n_vertices} vertices and {n_edges} edges in {MAX_TRIES} draws")


def random_edit_path(g, n_ops, seed=None, box=None):
    """A legal edit path of n_ops random operations starting at g.

    Inserted vertices are named "r0", "r1", ... and placed uniformly in
    box (the bounding box of g by default, or the unit cube).
    """
    rng = np.random.default_rng(seed)
    if box is None:
        if g.vertices:
            points = np.array(list(g.vertices.values()), dtype=float)
            box = (points.min(axis=0), points.max(axis=0) + 1e-3)
        else:
            box = (np.zeros(g.dim), np.ones(g.dim))
    low, high = (np.asarray(b, dtype=float) for b in box)

    state = EditState.from_graph(g)
    ops = []
    fresh = 0
    while len(ops) < n_ops:
        vertices = sorted(state.vertices, key=id_key)
        edges = sorted(state.edges(), key=lambda e: (id_key(e[0]), id_key(e[1])))
        isolated = [v for v in vertices if not state.adjacency[v]]
        missing = [(a, b) for a, b in itertools.combinations(vertices, 2) if not state.has_edge(a, b)]
        choices = ["insert_vertex"]
        if vertices:
            choices.append("translate")
        if isolated:
            choices.append("delete_vertex")
        if edges:
            choices.append("delete_edge")
        if missing:
            choices.append("insert_edge")
        kind = choices[int(rng.integers(len(choices)))]
        point = tuple(float(c) for c in rng.uniform(low, high))
        if kind == "insert_vertex":
            while f"r{fresh}" in state.vertices:
                fresh += 1
            op = InsertVertex(f"r{fresh}", point)
            fresh += 1
        elif kind == "translate":
            op = TranslateVertex(vertices[int(rng.integers(len(vertices)))], point)
        elif kind == "delete_vertex":
            op = DeleteVertex(isolated[int(rng.integers(len(isolated)))])
        elif kind == "delete_edge":
            op = DeleteEdge(*edges[int(rng.integers(len(edges)))])
        else:
            op = InsertEdge(*missing[int(rng.integers(len(missing)))])
        state.apply(op, index=len(ops))
        ops.append(op)
    return EditPath(g, tuple(ops))
