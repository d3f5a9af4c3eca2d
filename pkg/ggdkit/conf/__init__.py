import logging
import os

from ggdkit.utils import PowersOf

logger = logging.getLogger(__name__)

NAMESPACE = ""

SOLVE_LATENCY_BUCKETS = (
    0.001,
    0.0025,
    0.005,
    0.01,
    0.025,
    0.05,
    0.1,
    0.25,
    0.5,
    1.0,
    2.5,
    5.0,
    10.0,
    30.0,
    60.0,
    float("inf"),
)

SEARCH_NODE_BUCKETS = tuple(PowersOf(4, 12, include_zero=False)) + (float("inf"),)

# Relative tolerance for comparing costs that went through square roots.
DEFAULT_TOLERANCE = 1e-9

# Absolute slack applied when comparing bounds against the incumbent.
INCUMBENT_SLACK = 1e-12

THREADS = 1


def _threads_from_env(raw):
    try:
        threads = int(raw)
    except ValueError:
        logger.warning(f"Ignoring GGDKIT_THREADS={raw!r}: not an integer")
        return 1
    if threads < 1:
        logger.warning(f"Ignoring GGDKIT_THREADS={raw!r}: must be at least 1")
        return 1
    return threads


NAMESPACE = os.environ.get("GGDKIT_METRIC_NAMESPACE", NAMESPACE)
if "GGDKIT_THREADS" in os.environ:
    THREADS = _threads_from_env(os.environ["GGDKIT_THREADS"])
