"""Inexact matchings between two geometric graphs.

A matching pairs every vertex of G with exactly one vertex of H or with
DELETED, and every vertex of H likewise. DELETED plays the role of the
dummy vertex; (DELETED, DELETED) pairs are never stored.
"""

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from prometheus_client import Counter

from ggdkit.conf import NAMESPACE
from ggdkit.exceptions import DimensionMismatchError, InvalidMatchingError
from ggdkit.geometry import distance, normalize_edge, volume
from ggdkit.utils import id_key
from ggdkit.validation import ValidationReport, Violation

DELETED = None

matchings_priced_total = Counter(
    "ggdkit_matchings_priced_total",
    "Number of inexact matchings priced.",
    namespace=NAMESPACE,
)


def _pair_key(pair):
    left, right = pair
    return (
        (0,) if left is DELETED else (1, id_key(left)),
        (0,) if right is DELETED else (1, id_key(right)),
    )


@dataclass(frozen=True)
class Matching:
    """A set of (left, right) pairs, stored sorted so equality is set equality.

    The pairs are kept as given, even when they break the exactly-once
    rule; validate_matching() reports such problems.
    """

    pairs: tuple = ()

    def __post_init__(self):
        pairs = []
        for left, right in self.pairs:
            if left is DELETED and right is DELETED:
                continue
            pairs.append((left, right))
        object.__setattr__(self, "pairs", tuple(sorted(pairs, key=_pair_key)))

    @cached_property
    def forward(self):
        """Map from left ids to right ids (or DELETED)."""
        return {left: right for left, right in self.pairs if left is not DELETED}

    @cached_property
    def backward(self):
        """Map from right ids to left ids (or DELETED)."""
        return {right: left for left, right in self.pairs if right is not DELETED}

    def image(self, vertex_id):
        return self.forward.get(vertex_id, DELETED)

    def preimage(self, vertex_id):
        return self.backward.get(vertex_id, DELETED)

    def matched_pairs(self):
        return [(left, right) for left, right in self.pairs if left is not DELETED and right is not DELETED]

    def to_dict(self):
        return {"pairs": [[left, right] for left, right in self.pairs]}


@dataclass(frozen=True)
class MatchingCostBreakdown:
    vertex_translation: float
    edge_translation: float
    edge_deletions_g: float
    edge_deletions_h: float
    total: float

    def to_dict(self):
        return {
            "vertex_translation": self.vertex_translation,
            "edge_translation": self.edge_translation,
            "edge_deletions_g": self.edge_deletions_g,
            "edge_deletions_h": self.edge_deletions_h,
            "total": self.total,
        }


def trivial_matching(g, h):
    """The matching that deletes every vertex of both graphs."""
    return Matching(tuple((u, DELETED) for u in g.vertices) + tuple((DELETED, v) for v in h.vertices))


def identity_matching(g):
    return Matching(tuple((v, v) for v in g.vertices))


def matching_from_forward(g, h, forward):
    """Builds a matching from a partial map V^G -> V^H.

    Vertices of G missing from forward are deleted, as are vertices of H
    that nothing maps onto.
    """
    pairs = [(u, forward.get(u, DELETED)) for u in g.vertex_order]
    hit = {v for v in forward.values() if v is not DELETED}
    pairs.extend((DELETED, v) for v in h.vertex_order if v not in hit)
    return Matching(tuple(pairs))


def validate_matching(g, h, m):
    violations = []
    left_seen = {}
    right_seen = {}
    for left, right in m.pairs:
        if left is not DELETED:
            left_seen[left] = left_seen.get(left, 0) + 1
            if left not in g.vertices:
                violations.append(Violation("unknown-left", (left,), "not a vertex of G"))
        if right is not DELETED:
            right_seen[right] = right_seen.get(right, 0) + 1
            if right not in h.vertices:
                violations.append(Violation("unknown-right", (right,), "not a vertex of H"))
    for u in g.vertex_order:
        count = left_seen.get(u, 0)
        if count == 0:
            violations.append(Violation("missing-left", (u,), "vertex of G not covered"))
        elif count > 1:
            violations.append(Violation("duplicate-left", (u,), f"covered {count} times"))
    for v in h.vertex_order:
        count = right_seen.get(v, 0)
        if count == 0:
            violations.append(Violation("missing-right", (v,), "vertex of H not covered"))
        elif count > 1:
            violations.append(Violation("duplicate-right", (v,), f"covered {count} times"))
    return ValidationReport(tuple(violations))


def _require_valid(g, h, m):
    if g.dim != h.dim:
        raise DimensionMismatchError(g.dim, h.dim)
    report = validate_matching(g, h, m)
    if not report.is_valid:
        raise InvalidMatchingError(report)


def edge_image(g, h, m, e):
    """Image of edge e of G, or DELETED.

    An edge survives only when both endpoints are matched and their images
    are adjacent in H; otherwise it is deleted. This keeps the cost of a
    matching equal to the cost of its inverse, term by term.
    """
    a, b = g.require_edge(e)
    x, y = m.image(a), m.image(b)
    if x is DELETED or y is DELETED or not h.has_edge(x, y):
        return DELETED
    return normalize_edge(x, y)


def edge_preimage(g, h, m, f):
    """Preimage of edge f of H, or DELETED. Mirror of edge_image()."""
    x, y = h.require_edge(f)
    a, b = m.preimage(x), m.preimage(y)
    if a is DELETED or b is DELETED or not g.has_edge(a, b):
        return DELETED
    return normalize_edge(a, b)


def matching_cost(g, h, m, coeffs):
    """Cost of m: vertex translations, edge translations and edge deletions on both sides.

    Each component is an exactly rounded sum (math.fsum), so the value does
    not depend on iteration order and equals the cost of the inverse
    matching bit for bit.
    """
    _require_valid(g, h, m)
    matchings_priced_total.inc()

    translations = []
    for u, v in m.matched_pairs():
        translations.append(coeffs.c_v * distance(g.vertices[u], h.vertices[v]))

    edge_translations = []
    deletions_g = []
    for a, b in g.edge_order:
        length = distance(g.vertices[a], g.vertices[b])
        image = edge_image(g, h, m, (a, b))
        if image is DELETED:
            deletions_g.append(coeffs.c_e * length)
        else:
            x, y = image
            edge_translations.append(coeffs.c_e * abs(length - distance(h.vertices[x], h.vertices[y])))

    deletions_h = []
    for x, y in h.edge_order:
        if edge_preimage(g, h, m, (x, y)) is DELETED:
            deletions_h.append(coeffs.c_e * distance(h.vertices[x], h.vertices[y]))

    vertex_translation = math.fsum(translations)
    edge_translation = math.fsum(edge_translations)
    edge_deletions_g = math.fsum(deletions_g)
    edge_deletions_h = math.fsum(deletions_h)
    return MatchingCostBreakdown(
        vertex_translation=vertex_translation,
        edge_translation=edge_translation,
        edge_deletions_g=edge_deletions_g,
        edge_deletions_h=edge_deletions_h,
        total=math.fsum((vertex_translation, edge_translation, edge_deletions_g, edge_deletions_h)),
    )


def matching_volume_bound(g, h, m, coeffs):
    """Lower bound on matching_cost() from the volume imbalance.

    C_V times the matched displacement, plus C_E |Vol(G) - Vol(H)|, plus
    twice the smaller of the two deleted-edge volumes.
    """
    _require_valid(g, h, m)
    displacement = math.fsum(coeffs.c_v * distance(g.vertices[u], h.vertices[v]) for u, v in m.matched_pairs())
    deleted_g = math.fsum(
        coeffs.c_e * distance(g.vertices[a], g.vertices[b])
        for a, b in g.edges
        if edge_image(g, h, m, (a, b)) is DELETED
    )
    deleted_h = math.fsum(
        coeffs.c_e * distance(h.vertices[x], h.vertices[y])
        for x, y in h.edges
        if edge_preimage(g, h, m, (x, y)) is DELETED
    )
    return displacement + coeffs.c_e * abs(volume(g) - volume(h)) + 2 * min(deleted_g, deleted_h)


def invert_matching(m):
    return Matching(tuple((right, left) for left, right in m.pairs))


def compose_matchings(m1, m2):
    """Composes m1 over (G, H) with m2 over (H, I) into a matching over (G, I)."""
    middle_from_m1 = set(m1.backward)
    middle_from_m2 = set(m2.forward)
    if middle_from_m1 != middle_from_m2:
        missing = sorted(middle_from_m1 ^ middle_from_m2, key=id_key)
        raise ValueError(f"middle graphs differ on vertices {missing!r}")
    pairs = []
    for u, v in m1.forward.items():
        pairs.append((u, DELETED if v is DELETED else m2.forward[v]))
    for w, v in m2.backward.items():
        if v is DELETED or m1.backward[v] is DELETED:
            pairs.append((DELETED, w))
    return Matching(tuple(pairs))


def enumerate_matchings(g, h):
    """Yields every matching between g and h exactly once.

    Order: by number of matched pairs, then G-subsets and H-subsets in
    lexicographic order of sorted ids, then permutations in lexicographic
    order. The count is sum_k C(n, k) C(m, k) k!.
    """
    left = g.vertex_order
    right = h.vertex_order
    for k in range(min(len(left), len(right)) + 1):
        for chosen_left in itertools.combinations(left, k):
            rest_left = [u for u in left if u not in chosen_left]
            for chosen_right in itertools.combinations(right, k):
                rest_right = [v for v in right if v not in chosen_right]
                for image in itertools.permutations(chosen_right):
                    pairs = list(zip(chosen_left, image))
                    pairs.extend((u, DELETED) for u in rest_left)
                    pairs.extend((DELETED, v) for v in rest_right)
                    yield Matching(tuple(pairs))


def count_matchings(n, m):
    """Closed form for the number of matchings between n and m vertices."""
    return sum(math.comb(n, k) * math.comb(m, k) * math.factorial(k) for k in range(min(n, m) + 1))
