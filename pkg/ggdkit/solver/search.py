"""Exact geometric graph distance by branch-and-bound over matchings.

G-vertices are decided one at a time, in decreasing degree, each either
paired with a free H-vertex (cheapest pairing first) or deleted. A
partial assignment is priced exactly for everything already decided.
Undecided edges that can no longer be preserved (a decided endpoint was
deleted, or its partner has no free neighbour left) are priced as
deletions, and the rest of the undecided remainder is bounded below by
C_E times the imbalance of its edge volumes.

Leaves are always re-priced with matching_cost(), so the reported value
is computed along the same arithmetic path as any other pricing of the
witness.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from ggdkit import conf
from ggdkit.exceptions import DimensionMismatchError
from ggdkit.geometry import distance, normalize_edge
from ggdkit.matching import DELETED, Matching, matching_cost, matching_from_forward
from ggdkit.solver.bounds import ggd_lower_bound, ggd_upper_bound_assignment, pairing_costs
from ggdkit.solver.metrics import (
    budget_exhausted_total,
    duration_seconds,
    nodes_per_run,
    nodes_total,
    pruned_total,
    runs_total,
)
from ggdkit.utils import Time, TimeSince, id_key

logger = logging.getLogger(__name__)

# How many nodes pass between two wall-clock checks.
_CLOCK_STRIDE = 64


@dataclass(frozen=True)
class SolveBudget:
    max_nodes: Optional[int] = None
    time_limit: Optional[float] = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ValueError(f"max_nodes must be at least 1, got {self.max_nodes!r}")
        if self.time_limit is not None and not self.time_limit > 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit!r}")

    @property
    def exhaustive(self):
        return self.max_nodes is None and self.time_limit is None


@dataclass(frozen=True)
class GgdResult:
    value: float
    witness: Matching
    nodes_explored: int
    proven_optimal: bool
    pruned: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class DecisionResult:
    answer: bool
    witness: Optional[Matching]
    proven: bool
    nodes_explored: int = 0


class _Search:
    """Shared state of one branch-and-bound run.

    Workers explore disjoint subtrees and share the incumbent, the node
    counter and the stop flag through a lock.
    """

    def __init__(self, g, h, coeffs, budget, prune, tau=None):
        self.g = g
        self.h = h
        self.coeffs = coeffs
        self.budget = budget
        self.prune = prune
        self.tau = tau
        self.lock = threading.Lock()
        self.started = Time()

        self.nodes = 0
        self.pruned = 0
        self.exhausted = False
        self.found = False
        self.best_value = float("inf")
        self.best_witness = None

        self.order = tuple(sorted(g.vertices, key=lambda u: (-g.degree(u), id_key(u))))
        position = {u: i for i, u in enumerate(self.order)}
        costs = pairing_costs(g, h, coeffs)
        row = {u: i for i, u in enumerate(g.vertex_order)}
        col = {v: j for j, v in enumerate(h.vertex_order)}
        self.pair_cost = {u: {v: float(costs[row[u], col[v]]) for v in h.vertex_order} for u in g.vertex_order}
        self.candidates = {
            u: tuple(sorted(h.vertex_order, key=lambda v, u=u: (self.pair_cost[u][v], id_key(v)))) for u in self.order
        }
        self.earlier = {
            u: tuple(
                (a, distance(g.vertices[u], g.vertices[a]))
                for a in sorted(g.neighbors(u), key=id_key)
                if position[a] < position[u]
            )
            for u in self.order
        }
        self.later = {
            u: tuple(
                (b, distance(g.vertices[u], g.vertices[b]))
                for b in sorted(g.neighbors(u), key=id_key)
                if position[b] > position[u]
            )
            for u in self.order
        }
        self.position = position
        self.h_length = {(x, y): distance(h.vertices[x], h.vertices[y]) for x, y in h.edges}

    @property
    def stopped(self):
        return self.exhausted or self.found

    def threshold(self):
        return self.tau if self.tau is not None else self.best_value

    def offer(self, value, witness):
        with self.lock:
            if value < self.best_value:
                self.best_value = value
                self.best_witness = witness
            if self.tau is not None and value <= self.tau:
                self.found = True

    def _visit(self):
        with self.lock:
            self.nodes += 1
            budget = self.budget
            if budget.max_nodes is not None and self.nodes > budget.max_nodes:
                self.exhausted = True
            elif (
                budget.time_limit is not None
                and self.nodes % _CLOCK_STRIDE == 0
                and TimeSince(self.started) > budget.time_limit
            ):
                self.exhausted = True
            return not self.stopped

    def _step(self, u, v, forward, backward):
        """Exact cost of deciding u -> v and the edge volume it settles on each side."""
        c_e = self.coeffs.c_e
        cost = 0.0 if v is DELETED else self.pair_cost[u][v]
        settled_g = 0.0
        settled_h = 0.0
        for a, length in self.earlier[u]:
            settled_g += length
            x = forward[a]
            if v is not DELETED and x is not DELETED and self.h.has_edge(v, x):
                cost += c_e * abs(length - self.h_length[normalize_edge(v, x)])
            else:
                cost += c_e * length
        if v is not DELETED:
            for w in self.h.neighbors(v):
                c = backward.get(w)
                if c is None:
                    continue
                length = self.h_length[normalize_edge(v, w)]
                settled_h += length
                if not self.g.has_edge(u, c):
                    cost += c_e * length
        return cost, settled_g, settled_h

    def _forced(self, depth, forward, backward, rest_g):
        """Undecided edge volume on each side that no completion can preserve.

        depth is the number of decided G-vertices.
        """
        if len(backward) == len(self.h.vertices):
            forced_g = rest_g
        else:
            forced_g = 0.0
            for a in self.order[:depth]:
                x = forward[a]
                if x is not DELETED and any(w not in backward for w in self.h.neighbors(x)):
                    continue
                forced_g += sum(length for b, length in self.later[a] if self.position[b] >= depth)
        forced_h = 0.0
        for x, c in backward.items():
            if any(self.position[b] >= depth for b in self.g.neighbors(c)):
                continue
            forced_h += sum(self.h_length[normalize_edge(x, y)] for y in self.h.neighbors(x) if y not in backward)
        return forced_g, forced_h

    def bound(self, depth, forward, backward, acc, rest_g, rest_h):
        """Lower bound on every completion of a partial assignment.

        Forced deletions and insertions are charged in full; the other
        undecided edges only for their volume imbalance. This is never
        below C_E (|rest_g - rest_h| + 2 min(forced_g, forced_h)).
        """
        forced_g, forced_h = self._forced(depth, forward, backward, rest_g)
        free = abs((rest_g - forced_g) - (rest_h - forced_h))
        return acc + self.coeffs.c_e * (free + forced_g + forced_h)

    def branches(self, depth, forward, backward, acc, rest_g, rest_h):
        """Children of a node in branch order, with their bounds, skipping pruned ones."""
        u = self.order[depth]
        options = [v for v in self.candidates[u] if v not in backward]
        options.append(DELETED)
        for v in options:
            cost, settled_g, settled_h = self._step(u, v, forward, backward)
            child_acc = acc + cost
            child_g = rest_g - settled_g
            child_h = rest_h - settled_h
            if self.prune:
                forward[u] = v
                if v is not DELETED:
                    backward[v] = u
                bound = self.bound(depth + 1, forward, backward, child_acc, child_g, child_h)
                del forward[u]
                if v is not DELETED:
                    del backward[v]
                if bound > self.threshold() + conf.INCUMBENT_SLACK:
                    with self.lock:
                        self.pruned += 1
                    continue
            yield v, child_acc, child_g, child_h

    def descend(self, depth, forward, backward, acc, rest_g, rest_h):
        if not self._visit():
            return
        if depth == len(self.order):
            witness = matching_from_forward(self.g, self.h, forward)
            self.offer(matching_cost(self.g, self.h, witness, self.coeffs).total, witness)
            return
        u = self.order[depth]
        for v, child_acc, child_g, child_h in self.branches(depth, forward, backward, acc, rest_g, rest_h):
            forward[u] = v
            if v is not DELETED:
                backward[v] = u
            self.descend(depth + 1, forward, backward, child_acc, child_g, child_h)
            del forward[u]
            if v is not DELETED:
                del backward[v]
            if self.stopped:
                return

    def run(self, workers):
        rest_g = sum(distance(self.g.vertices[a], self.g.vertices[b]) for a, b in self.g.edges)
        rest_h = sum(self.h_length.values())
        if workers <= 1 or not self.order:
            self.descend(0, {}, {}, 0.0, rest_g, rest_h)
            return
        if not self._visit():
            return
        u = self.order[0]
        children = list(self.branches(0, {}, {}, 0.0, rest_g, rest_h))

        def explore(child):
            v, child_acc, child_g, child_h = child
            forward = {u: v}
            backward = {} if v is DELETED else {v: u}
            self.descend(1, forward, backward, child_acc, child_g, child_h)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(explore, children))


def _finish(search, mode):
    elapsed = TimeSince(search.started)
    runs_total.labels(mode).inc()
    nodes_total.labels(mode).inc(search.nodes)
    pruned_total.labels(mode).inc(search.pruned)
    duration_seconds.labels(mode).observe(elapsed)
    nodes_per_run.labels(mode).observe(search.nodes)
    if search.exhausted:
        budget_exhausted_total.labels(mode).inc()
        logger.info(f"{mode} search stopped on budget after {search.nodes} nodes")
    return elapsed


def ggd_exact(g, h, coeffs, budget=None, workers=None, prune=True):
    """Minimum matching cost between g and h.

    The assignment upper bound seeds the incumbent. With an exhaustive
    budget the result is proven optimal; otherwise the best matching found
    is returned with proven_optimal=False. The value does not depend on
    the number of workers; the witness is deterministic with one worker.
    """
    if g.dim != h.dim:
        raise DimensionMismatchError(g.dim, h.dim)
    budget = budget or SolveBudget()
    workers = conf.THREADS if workers is None else workers

    search = _Search(g, h, coeffs, budget, prune)
    value, witness = ggd_upper_bound_assignment(g, h, coeffs)
    logger.debug(f"initial incumbent {value} from the assignment bound")
    search.offer(value, witness)
    search.run(workers)
    elapsed = _finish(search, "exact")
    return GgdResult(
        value=search.best_value,
        witness=search.best_witness,
        nodes_explored=search.nodes,
        proven_optimal=not search.exhausted,
        pruned=search.pruned,
        elapsed=elapsed,
    )


def ggd_decision(g, h, coeffs, tau, budget=None, incumbent=None, workers=None):
    """Is there a matching of cost at most tau?

    Candidates are tried cheapest-first: the caller's incumbent, the
    assignment bound, the volume lower bound (for an early NO), and only
    then the search, which stops at the first matching within tau. A NO
    answer is proven only when the search ran to completion.
    """
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau!r}")
    if g.dim != h.dim:
        raise DimensionMismatchError(g.dim, h.dim)
    budget = budget or SolveBudget()
    workers = conf.THREADS if workers is None else workers

    if incumbent is not None and matching_cost(g, h, incumbent, coeffs).total <= tau:
        return DecisionResult(answer=True, witness=incumbent, proven=True)
    value, witness = ggd_upper_bound_assignment(g, h, coeffs)
    if value <= tau:
        return DecisionResult(answer=True, witness=witness, proven=True)
    if ggd_lower_bound(g, h, coeffs) > tau + conf.INCUMBENT_SLACK:
        return DecisionResult(answer=False, witness=None, proven=True)

    search = _Search(g, h, coeffs, budget, prune=True, tau=tau)
    search.run(workers)
    _finish(search, "decision")
    if search.found:
        return DecisionResult(answer=True, witness=search.best_witness, proven=True, nodes_explored=search.nodes)
    return DecisionResult(answer=False, witness=None, proven=not search.exhausted, nodes_explored=search.nodes)
