# Import all metrics
from ggdkit.solver.bounds import (
    assignment_matching,
    ggd_lower_bound,
    ggd_upper_bound_assignment,
    ggd_upper_bound_trivial,
    pairing_costs,
)
from ggdkit.solver.metrics import (
    budget_exhausted_total,
    duration_seconds,
    nodes_per_run,
    nodes_total,
    pruned_total,
    runs_total,
)
from ggdkit.solver.oracle import brute_force_ggd
from ggdkit.solver.search import DecisionResult, GgdResult, SolveBudget, ggd_decision, ggd_exact

__all__ = [
    "DecisionResult",
    "GgdResult",
    "SolveBudget",
    "assignment_matching",
    "brute_force_ggd",
    "budget_exhausted_total",
    "duration_seconds",
    "ggd_decision",
    "ggd_exact",
    "ggd_lower_bound",
    "ggd_upper_bound_assignment",
    "ggd_upper_bound_trivial",
    "nodes_per_run",
    "nodes_total",
    "pairing_costs",
    "pruned_total",
    "runs_total",
]
