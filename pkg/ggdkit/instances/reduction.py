"""Encoding 3-PARTITION instances as pairs of planar graphs.

G holds one blob per integer of the instance, H one blob of size B per
part. Both sit side by side in a box of width x and height L chosen so
that a valid partition yields a matching of cost at most tau, while
anything that is not a bijection respecting blobs costs more.
"""

import itertools
import logging
from dataclasses import dataclass

from ggdkit.exceptions import InvalidCertificateError, InvalidInstanceError, LayoutInfeasibleError
from ggdkit.geometry import GeometricGraph
from ggdkit.matching import Matching

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThreePartitionInstance:
    n: int
    b: int
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))

    def violations(self):
        problems = []
        if self.n <= 1:
            problems.append(f"N must be greater than 1, got {self.n}")
        if self.b <= 0:
            problems.append(f"B must be positive, got {self.b}")
        if len(self.s) != 3 * self.n:
            problems.append(f"S must hold 3N = {3 * self.n} integers, got {len(self.s)}")
        if sum(self.s) != self.n * self.b:
            problems.append(f"S must sum to N*B = {self.n * self.b}, got {sum(self.s)}")
        for i, a in enumerate(self.s):
            if not 4 * a > self.b or not 2 * a < self.b:
                problems.append(f"s[{i}] = {a} is outside (B/4, B/2)")
        return problems

    def require_valid(self):
        problems = self.violations()
        if problems:
            raise InvalidInstanceError(problems)

    def to_dict(self):
        return {"n": self.n, "b": self.b, "s": list(self.s)}


@dataclass(frozen=True)
class ReductionLayout:
    tau: float
    x: float
    l: float  # noqa: E741
    vertex_spacing: float
    blob_gap: float
    width: float
    g_blobs: tuple = ()
    h_blobs: tuple = ()

    def to_dict(self):
        return {
            "tau": self.tau,
            "x": self.x,
            "l": self.l,
            "vertex_spacing": self.vertex_spacing,
            "blob_gap": self.blob_gap,
            "width": self.width,
            "g_blobs": [list(b) for b in self.g_blobs],
            "h_blobs": [list(b) for b in self.h_blobs],
        }


def blob_vertices(k, prefix=""):
    """Upper then lower row ids of a blob of size k."""
    return [f"{prefix}u{j}" for j in range(1, k + 1)], [f"{prefix}l{j}" for j in range(1, k + 1)]


def _blob_parts(k, height, spacing, origin, prefix):
    ox, oy = origin
    upper, lower = blob_vertices(k, prefix)
    vertices = {}
    edges = []
    for j in range(1, k + 1):
        vertices[upper[j - 1]] = (ox + (j - 1) * spacing, oy + height)
        vertices[lower[j - 1]] = (ox + j * spacing, oy)
        edges.append((upper[j - 1], lower[j - 1]))
        if j > 1:
            edges.append((upper[j - 1], lower[j - 2]))
    return vertices, edges


def blob(k, height, spacing, origin=(0.0, 0.0), prefix=""):
    """Two rows of k vertices, height apart, zigzag-connected.

    u_j sits straight above l_(j-1), so (u_j, l_(j-1)) is vertical and
    (u_j, l_j) slanted; the blob spans [ox, ox + k*spacing].
    """
    if k < 1:
        raise ValueError(f"blob size must be at least 1, got {k!r}")
    if not (height > 0 and spacing > 0):
        raise ValueError("blob height and spacing must be positive")
    vertices, edges = _blob_parts(k, height, spacing, origin, prefix)
    return GeometricGraph(2, vertices, edges)


def _row_of_blobs(sizes, start, height, spacing, gap, name):
    vertices = {}
    edges = []
    prefixes = []
    left = start
    for i, k in enumerate(sizes):
        prefix = f"{name}{i}."
        v, e = _blob_parts(k, height, spacing, (left, 0.0), prefix)
        vertices.update(v)
        edges.extend(e)
        prefixes.append((prefix, k))
        left += k * spacing + gap
    return vertices, edges, tuple(prefixes), left - gap


def encode_reduction(inst, tau, coeffs, spacing=None):
    """G and H for the instance, and the layout they were built with.

    Spacing defaults to x / (4NB + 4N), used for both the vertex spacing
    and the gap between blobs; G's blobs come first, then H's, all inside
    [0, x].
    """
    inst.require_valid()
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    n, b = inst.n, inst.b
    x = tau / (2 * coeffs.c_v * (n + 1) * n * b)
    height = tau / (2 * coeffs.c_e * (n + 1))
    spacing = x / (4 * n * b + 4 * n) if spacing is None else spacing
    gap = spacing

    g_vertices, g_edges, g_blobs, g_end = _row_of_blobs(inst.s, 0.0, height, spacing, gap, "g")
    h_vertices, h_edges, h_blobs, h_end = _row_of_blobs([b] * n, g_end + gap, height, spacing, gap, "h")
    if h_end > x:
        raise LayoutInfeasibleError(f"graphs need width {h_end} but the box is {x} wide")
    logger.debug(f"reduction layout: x={x} L={height} spacing={spacing} width={h_end}")

    layout = ReductionLayout(
        tau=tau,
        x=x,
        l=height,
        vertex_spacing=spacing,
        blob_gap=gap,
        width=h_end,
        g_blobs=g_blobs,
        h_blobs=h_blobs,
    )
    return GeometricGraph(2, g_vertices, g_edges), GeometricGraph(2, h_vertices, h_edges), layout


def certificate_violations(inst, partition):
    problems = []
    if len(partition) != inst.n:
        problems.append(f"expected {inst.n} triples, got {len(partition)}")
    used = [i for triple in partition for i in triple]
    if sorted(used) != list(range(len(inst.s))):
        problems.append("every index of S must appear in exactly one triple")
    for part, triple in enumerate(partition):
        if len(triple) != 3:
            problems.append(f"part {part} has {len(triple)} elements")
        elif all(0 <= i < len(inst.s) for i in triple) and sum(inst.s[i] for i in triple) != inst.b:
            problems.append(f"part {part} sums to {sum(inst.s[i] for i in triple)}, not {inst.b}")
    return problems


def partition_to_matching(inst, partition, layout, g, h):
    """Bijection that lays the three G-blobs of part i consecutively onto H-blob i.

    Partition indices are 0-based positions in inst.s.
    """
    problems = certificate_violations(inst, partition)
    if problems:
        raise InvalidCertificateError(problems)
    pairs = []
    for part, triple in enumerate(partition):
        h_prefix, h_size = layout.h_blobs[part]
        h_upper, h_lower = blob_vertices(h_size, h_prefix)
        offset = 0
        for i in triple:
            g_prefix, g_size = layout.g_blobs[i]
            g_upper, g_lower = blob_vertices(g_size, g_prefix)
            for j in range(g_size):
                pairs.append((g_upper[j], h_upper[offset + j]))
                pairs.append((g_lower[j], h_lower[offset + j]))
            offset += g_size
    m = Matching(tuple(pairs))
    missing = (set(g.vertices) - set(m.forward)) | (set(h.vertices) - set(m.backward))
    if missing:
        raise InvalidCertificateError([f"layout does not match the graphs: {len(missing)} vertices left out"])
    return m


def brute_force_3partition(inst):
    """A partition of inst.s into triples summing to B, or None.

    Triples are tuples of 0-based indices into inst.s. Exhaustive; fine
    for N up to 4.
    """
    if len(inst.s) != 3 * inst.n:
        return None

    def search(remaining):
        if not remaining:
            return []
        first, rest = remaining[0], remaining[1:]
        for j, k in itertools.combinations(rest, 2):
            if inst.s[first] + inst.s[j] + inst.s[k] == inst.b:
                found = search([i for i in rest if i not in (j, k)])
                if found is not None:
                    return [(first, j, k)] + found
        return None

    return search(list(range(len(inst.s))))


def reduction_no_instance():
    """A small valid instance with no 3-partition: no triple of {4, 4, 4, 4, 4, 6} sums to 13."""
    return ThreePartitionInstance(n=2, b=13, s=(4, 4, 4, 4, 4, 6))
