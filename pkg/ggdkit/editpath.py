"""Edit operations, edit paths and their orbits.

An edit path is a source graph plus a sequence of operations, each legal
on the state its predecessors produce. Intermediate states are not
required to be valid embeddings.

Vertex ids are stable along a path: translation moves a vertex but keeps
its id. A subject (vertex or edge of the source) that gets deleted stays
deleted, even if a later insertion reuses its id.
"""

import logging
import math
from dataclasses import dataclass
from typing import ClassVar

from prometheus_client import Counter

from ggdkit.conf import NAMESPACE
from ggdkit.exceptions import IllegalEditOperationError, UnknownVertexError
from ggdkit.geometry import GeometricGraph, distance, geometric_isomorphism, make_point, max_degree, normalize_edge
from ggdkit.matching import DELETED, Matching, _require_valid, edge_image, edge_preimage
from ggdkit.solver import ggd_exact, ggd_lower_bound
from ggdkit.validation import ValidationReport, Violation

logger = logging.getLogger(__name__)

edit_operations_total = Counter(
    "ggdkit_edit_operations_total",
    "Number of edit operations applied, by operation.",
    ["op"],
    namespace=NAMESPACE,
)


def _check_id(vertex_id):
    if vertex_id is None or vertex_id == "":
        raise ValueError("vertex ids must be nonempty")


@dataclass(frozen=True)
class InsertVertex:
    tag: ClassVar[str] = "insert_vertex"
    id: object
    point: tuple

    def __post_init__(self):
        _check_id(self.id)
        object.__setattr__(self, "point", make_point(self.point))

    def to_dict(self):
        return {"op": self.tag, "id": self.id, "coords": list(self.point)}


@dataclass(frozen=True)
class DeleteVertex:
    tag: ClassVar[str] = "delete_vertex"
    id: object

    def __post_init__(self):
        _check_id(self.id)

    def to_dict(self):
        return {"op": self.tag, "id": self.id}


@dataclass(frozen=True)
class InsertEdge:
    tag: ClassVar[str] = "insert_edge"
    u: object
    v: object

    def __post_init__(self):
        _check_id(self.u)
        _check_id(self.v)

    def to_dict(self):
        return {"op": self.tag, "ids": [self.u, self.v]}


@dataclass(frozen=True)
class DeleteEdge:
    tag: ClassVar[str] = "delete_edge"
    u: object
    v: object

    def __post_init__(self):
        _check_id(self.u)
        _check_id(self.v)

    def to_dict(self):
        return {"op": self.tag, "ids": [self.u, self.v]}


@dataclass(frozen=True)
class TranslateVertex:
    tag: ClassVar[str] = "translate"
    id: object
    to: tuple

    def __post_init__(self):
        _check_id(self.id)
        object.__setattr__(self, "to", make_point(self.to))

    def to_dict(self):
        return {"op": self.tag, "id": self.id, "to": list(self.to)}


OPS = (InsertVertex, DeleteVertex, InsertEdge, DeleteEdge, TranslateVertex)


@dataclass(frozen=True)
class EditPath:
    source: GeometricGraph
    ops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self):
        return len(self.ops)

    def to_dict(self):
        return {"ops": [op.to_dict() for op in self.ops]}


def _length_change(s, before, target):
    """|d(s, before) - d(s, target)|, computed as a difference of squares over a sum of lengths.

    Symmetric in before and target, and accurate when the two lengths are
    nearly equal.
    """
    total = distance(s, before) + distance(s, target)
    if total == 0.0:
        return 0.0
    return abs(math.fsum((b - t) * (b + t - 2.0 * c) for b, t, c in zip(before, target, s))) / total


class EditState:
    """Mutable graph state used while replaying a path."""

    def __init__(self, dim, vertices, edges):
        self.dim = dim
        self.vertices = dict(vertices)
        self.adjacency = {v: set() for v in self.vertices}
        for a, b in edges:
            self.adjacency[a].add(b)
            self.adjacency[b].add(a)

    @classmethod
    def from_graph(cls, g):
        return cls(g.dim, g.vertices, g.edges)

    def edges(self):
        return {normalize_edge(a, b) for a, nbrs in self.adjacency.items() for b in nbrs}

    def has_edge(self, a, b):
        return a in self.adjacency and b in self.adjacency[a]

    def to_graph(self):
        return GeometricGraph(self.dim, self.vertices, self.edges())

    def _illegal(self, index, rule, op):
        raise IllegalEditOperationError(index, rule, op)

    def _require_vertex(self, index, op, vertex_id):
        if vertex_id not in self.vertices:
            self._illegal(index, "unknown-vertex", op)

    def _point(self, index, op, point):
        if len(point) != self.dim:
            self._illegal(index, "dimension-mismatch", op)
        return point

    def apply(self, op, coeffs=None, index=0):
        """Applies op in place and returns its cost (None without coeffs)."""
        cost = None
        if isinstance(op, InsertVertex):
            if op.id in self.vertices:
                self._illegal(index, "vertex-exists", op)
            self.vertices[op.id] = self._point(index, op, op.point)
            self.adjacency[op.id] = set()
            cost = 0.0
        elif isinstance(op, DeleteVertex):
            self._require_vertex(index, op, op.id)
            if self.adjacency[op.id]:
                self._illegal(index, "vertex-not-isolated", op)
            del self.vertices[op.id]
            del self.adjacency[op.id]
            cost = 0.0
        elif isinstance(op, (InsertEdge, DeleteEdge)):
            self._require_vertex(index, op, op.u)
            self._require_vertex(index, op, op.v)
            if op.u == op.v:
                self._illegal(index, "self-loop", op)
            if isinstance(op, InsertEdge):
                if self.has_edge(op.u, op.v):
                    self._illegal(index, "edge-exists", op)
                self.adjacency[op.u].add(op.v)
                self.adjacency[op.v].add(op.u)
            else:
                if not self.has_edge(op.u, op.v):
                    self._illegal(index, "unknown-edge", op)
                self.adjacency[op.u].discard(op.v)
                self.adjacency[op.v].discard(op.u)
            if coeffs is not None:
                cost = coeffs.c_e * distance(self.vertices[op.u], self.vertices[op.v])
        elif isinstance(op, TranslateVertex):
            self._require_vertex(index, op, op.id)
            target = self._point(index, op, op.to)
            before = self.vertices[op.id]
            if coeffs is not None:
                terms = [coeffs.c_e * _length_change(self.vertices[s], before, target) for s in self.adjacency[op.id]]
                cost = coeffs.c_v * distance(before, target) + math.fsum(terms)
            self.vertices[op.id] = target
        else:
            raise TypeError(f"not an edit operation: {op!r}")
        edit_operations_total.labels(op.tag).inc()
        return cost


def apply_op(state, op, coeffs):
    """Applies op to the graph state.

    Returns:
      (new graph, cost of op)

    """
    replay = EditState.from_graph(state)
    cost = replay.apply(op, coeffs)
    return replay.to_graph(), cost


def _replay(p, coeffs=None):
    state = EditState.from_graph(p.source)
    costs = [state.apply(op, coeffs, index) for index, op in enumerate(p.ops)]
    return state, costs


def path_cost(p, coeffs):
    """Sum of the op costs along p, and the final graph.

    Returns:
      (total, final graph)

    """
    state, costs = _replay(p, coeffs)
    return math.fsum(costs), state.to_graph()


def final_graph(p):
    state, _ = _replay(p)
    return state.to_graph()


def validate_path(p):
    """Replays p and reports the first illegal operation, without raising."""
    try:
        _replay(p)
    except IllegalEditOperationError as e:
        return ValidationReport((Violation("illegal-op", (e.index,), f"{e.rule}: {e.op!r}"),))
    return ValidationReport()


def invert_path(p):
    """The path from the final graph of p back to its source, cost for cost."""
    state = EditState.from_graph(p.source)
    inverse = []
    for index, op in enumerate(p.ops):
        if isinstance(op, InsertVertex):
            inverse.append(DeleteVertex(op.id))
        elif isinstance(op, DeleteVertex) and op.id in state.vertices:
            inverse.append(InsertVertex(op.id, state.vertices[op.id]))
        elif isinstance(op, InsertEdge):
            inverse.append(DeleteEdge(op.u, op.v))
        elif isinstance(op, DeleteEdge):
            inverse.append(InsertEdge(op.u, op.v))
        elif isinstance(op, TranslateVertex) and op.id in state.vertices:
            inverse.append(TranslateVertex(op.id, state.vertices[op.id]))
        state.apply(op, index=index)
    inverse.reverse()
    return EditPath(state.to_graph(), tuple(inverse))


@dataclass(frozen=True)
class OrbitTrace:
    """States of one subject after each op; states[0] is the initial state.

    Vertex states are points, edge states are pairs of endpoint points,
    and DELETED once the subject is gone.
    """

    subject: object
    kind: str
    states: tuple

    @property
    def final(self):
        return self.states[-1]

    @property
    def deleted(self):
        return self.states[-1] is DELETED


def _edge_subject(subject):
    return isinstance(subject, tuple) and len(subject) == 2


def orbits(p):
    """Orbit traces of every vertex and edge of p.source, keyed by subject."""
    state = EditState.from_graph(p.source)
    alive_vertices = set(p.source.vertices)
    alive_edges = set(p.source.edges)
    vertex_states = {u: [p.source.vertices[u]] for u in p.source.vertices}
    edge_states = {e: [(p.source.vertices[e[0]], p.source.vertices[e[1]])] for e in p.source.edges}
    for index, op in enumerate(p.ops):
        state.apply(op, index=index)
        if isinstance(op, DeleteVertex):
            alive_vertices.discard(op.id)
        elif isinstance(op, DeleteEdge):
            alive_edges.discard(normalize_edge(op.u, op.v))
        for u, states in vertex_states.items():
            states.append(state.vertices[u] if u in alive_vertices else DELETED)
        for e, states in edge_states.items():
            states.append((state.vertices[e[0]], state.vertices[e[1]]) if e in alive_edges else DELETED)
    traces = {u: OrbitTrace(u, "vertex", tuple(s)) for u, s in vertex_states.items()}
    traces.update({e: OrbitTrace(e, "edge", tuple(s)) for e, s in edge_states.items()})
    return traces


def orbit(p, subject):
    """Orbit of a vertex id, or of an edge given as a pair of ids, of p.source."""
    if _edge_subject(subject):
        edge = p.source.require_edge(subject)
        return orbits(p)[edge]
    if subject not in p.source.vertices:
        raise UnknownVertexError(subject)
    return orbits(p)[subject]


def _state_length(state):
    return 0.0 if state is DELETED else distance(*state)


def _trace_cost(trace, coeffs):
    states = trace.states
    if trace.kind == "vertex":
        return coeffs.c_v * math.fsum(
            distance(a, b) for a, b in zip(states, states[1:]) if a is not DELETED and b is not DELETED
        )
    return coeffs.c_e * math.fsum(abs(_state_length(a) - _state_length(b)) for a, b in zip(states, states[1:]))


def orbit_cost(p, subject, coeffs):
    """C_V times the distance travelled by a vertex, or C_E times the total length change of an edge."""
    return _trace_cost(orbit(p, subject), coeffs)


@dataclass(frozen=True)
class OrbitDecomposition:
    vertex_translations: float
    vertex_deletions: float
    vertex_insertions: float
    edge_translations: float
    edge_deletions: float
    edge_insertions: float

    @property
    def total(self):
        return math.fsum(
            (
                self.vertex_translations,
                self.vertex_deletions,
                self.vertex_insertions,
                self.edge_translations,
                self.edge_deletions,
                self.edge_insertions,
            )
        )

    def to_dict(self):
        return {
            "vertex_translations": self.vertex_translations,
            "vertex_deletions": self.vertex_deletions,
            "vertex_insertions": self.vertex_insertions,
            "edge_translations": self.edge_translations,
            "edge_deletions": self.edge_deletions,
            "edge_insertions": self.edge_insertions,
            "total": self.total,
        }


def orbit_decomposition(p, coeffs):
    """Orbit costs of p grouped by what happens to each subject.

    Source subjects are split by whether they survive; subjects of the
    final graph that the path inserted are priced through the inverse
    path. The total never exceeds path_cost(p).
    """
    forward = orbits(p)
    backward = orbits(invert_path(p))
    buckets = {key: [] for key in ("vt", "vd", "vi", "et", "ed", "ei")}
    for trace in forward.values():
        prefix = "v" if trace.kind == "vertex" else "e"
        buckets[prefix + ("d" if trace.deleted else "t")].append(_trace_cost(trace, coeffs))
    for trace in backward.values():
        if trace.deleted:
            buckets[("v" if trace.kind == "vertex" else "e") + "i"].append(_trace_cost(trace, coeffs))
    return OrbitDecomposition(
        vertex_translations=math.fsum(buckets["vt"]),
        vertex_deletions=math.fsum(buckets["vd"]),
        vertex_insertions=math.fsum(buckets["vi"]),
        edge_translations=math.fsum(buckets["et"]),
        edge_deletions=math.fsum(buckets["ed"]),
        edge_insertions=math.fsum(buckets["ei"]),
    )


def path_cost_lower_bound(p, coeffs):
    """Lower bound on path_cost(p) from where each subject ends up.

    Surviving vertices pay C_V times their net displacement, surviving
    edges C_E times their net length change, deleted source edges and
    inserted final edges C_E times their length.
    """
    forward = orbits(p)
    backward = orbits(invert_path(p))
    terms = []
    for trace in forward.values():
        if trace.kind == "vertex":
            if not trace.deleted:
                terms.append(coeffs.c_v * distance(trace.states[0], trace.final))
        else:
            terms.append(coeffs.c_e * abs(_state_length(trace.states[0]) - _state_length(trace.final)))
    for trace in backward.values():
        if trace.kind == "edge" and trace.deleted:
            terms.append(coeffs.c_e * _state_length(trace.states[0]))
    return math.fsum(terms)


def path_to_matching(p, target=None, tol=0.0):
    """Matching induced by p: each surviving source vertex to where it ends up.

    Without target the matching is over (p.source, final_graph(p)) and
    survivors keep their ids. With target, the final graph must coincide
    with it within tol and the matching is expressed in target ids.
    """
    final = final_graph(p)
    survivors = {u for u, trace in orbits(p).items() if not _edge_subject(u) and not trace.deleted}
    rename = {v: v for v in final.vertices}
    if target is not None:
        rename = geometric_isomorphism(final, target, tol)
        if rename is None:
            raise ValueError("the path does not end at the target graph")
    pairs = [(u, rename[u] if u in survivors else DELETED) for u in p.source.vertex_order]
    pairs.extend((DELETED, rename[v]) for v in final.vertex_order if v not in survivors)
    return Matching(tuple(pairs))


def _fresh_id(vertex_id, taken):
    candidate = f"h:{vertex_id}"
    while candidate in taken:
        candidate = f"h:{candidate}"
    return candidate


def matching_to_path(g, h, m):
    """Edit path realising matching m from g to h.

    Ops come in five phases, each sorted by id: deletion of edges whose
    image is DELETED, deletion of unmatched G-vertices, translation of
    matched vertices onto their images, insertion of unmatched H-vertices,
    insertion of H-edges whose preimage is DELETED. Matched H-vertices keep
    their G ids in the final graph; an inserted H-vertex whose id is used
    in G gets a fresh "h:" id.
    """
    _require_valid(g, h, m)
    ops = []
    for a, b in g.edge_order:
        if edge_image(g, h, m, (a, b)) is DELETED:
            ops.append(DeleteEdge(a, b))
    for u in g.vertex_order:
        if m.image(u) is DELETED:
            ops.append(DeleteVertex(u))
    for u in g.vertex_order:
        v = m.image(u)
        if v is not DELETED and distance(g.vertices[u], h.vertices[v]) > 0.0:
            ops.append(TranslateVertex(u, h.vertices[v]))
    ids = {}
    taken = set(g.vertices)
    for v in h.vertex_order:
        u = m.preimage(v)
        if u is not DELETED:
            ids[v] = u
            continue
        ids[v] = v if v not in taken else _fresh_id(v, taken | set(h.vertices))
        taken.add(ids[v])
        ops.append(InsertVertex(ids[v], h.vertices[v]))
    for x, y in h.edge_order:
        if edge_preimage(g, h, m, (x, y)) is DELETED:
            ops.append(InsertEdge(ids[x], ids[y]))
    return EditPath(g, tuple(ops))


@dataclass(frozen=True)
class GedBounds:
    lower: float
    upper: float
    delta: int
    witness_path: EditPath
    lower_proven: bool = True

    def to_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "delta": self.delta,
            "lower_proven": self.lower_proven,
        }


def comparison_factor(g, h, coeffs):
    """1 + delta C_E / C_V with delta the larger maximum degree of g and h."""
    delta = max(max_degree(g), max_degree(h))
    return 1.0 + delta * coeffs.c_e / coeffs.c_v, delta


def ged_bounds(g, h, coeffs, budget=None, workers=None):
    """Bounds on the geometric edit distance from an exact GGD solve.

    The GGD is a lower bound. The upper bound is the cheaper of the
    comparison factor times the witness cost and the cost of the path
    built from the witness. When the solve runs out of budget the lower
    bound falls back to the volume bound and lower_proven is False.
    """
    result = ggd_exact(g, h, coeffs, budget=budget, workers=workers)
    factor, delta = comparison_factor(g, h, coeffs)
    witness_path = matching_to_path(g, h, result.witness)
    walked, _ = path_cost(witness_path, coeffs)
    upper = min(factor * result.value, walked)
    if result.proven_optimal:
        lower = result.value
    else:
        lower = ggd_lower_bound(g, h, coeffs)
        logger.info(f"GGD solve not proven after {result.nodes_explored} nodes; lower bound is the volume gap")
    return GedBounds(
        lower=lower,
        upper=upper,
        delta=delta,
        witness_path=witness_path,
        lower_proven=result.proven_optimal,
    )

