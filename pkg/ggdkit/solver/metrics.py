from prometheus_client import Counter, Histogram

from ggdkit.conf import NAMESPACE, SEARCH_NODE_BUCKETS, SOLVE_LATENCY_BUCKETS

runs_total = Counter(
    "ggdkit_solver_runs_total",
    "Counter of branch-and-bound runs by mode.",
    ["mode"],
    namespace=NAMESPACE,
)

nodes_total = Counter(
    "ggdkit_solver_nodes_total",
    "Counter of search nodes explored by mode.",
    ["mode"],
    namespace=NAMESPACE,
)

pruned_total = Counter(
    "ggdkit_solver_pruned_total",
    "Counter of subtrees cut by the volume-imbalance bound, by mode.",
    ["mode"],
    namespace=NAMESPACE,
)

budget_exhausted_total = Counter(
    "ggdkit_solver_budget_exhausted_total",
    "Counter of runs that stopped on a node or time budget before proving optimality.",
    ["mode"],
    namespace=NAMESPACE,
)

duration_seconds = Histogram(
    "ggdkit_solver_duration_seconds",
    "Histogram of solve wall time by mode.",
    ["mode"],
    buckets=SOLVE_LATENCY_BUCKETS,
    namespace=NAMESPACE,
)

nodes_per_run = Histogram(
    "ggdkit_solver_nodes_per_run",
    "Histogram of search nodes explored per run, by mode.",
    ["mode"],
    buckets=SEARCH_NODE_BUCKETS,
    namespace=NAMESPACE,
)
