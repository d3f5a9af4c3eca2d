"""Helpers for test cases that check solver metrics and costs.

Metric assertions work on a live registry or on a frozen copy taken
with save_registry() at the start of a test.
"""

import copy

from prometheus_client import REGISTRY

from ggdkit.conf import DEFAULT_TOLERANCE
from ggdkit.utils import costs_close

METRIC_EQUALS_ERR_EXPLANATION = """
%s%s = %s, expected %s.
The values for %s are:
%s"""

METRIC_DIFF_ERR_EXPLANATION = """
%s%s changed by %f, expected %f.
Value before: %s
Value after: %s
"""

METRIC_DIFF_ERR_NONE_EXPLANATION = """
%s%s was never recorded.
Value before: %s
Value after: %s
"""

COSTS_CLOSE_ERR_EXPLANATION = """
%s = %r, expected %r (relative tolerance %g, difference %g)."""

SANDWICH_ERR_EXPLANATION = """
Bounds out of order: %s.
lower = %r, value = %r, upper = %r"""


def assert_metric_equal(expected_value, metric_name, registry=REGISTRY, **labels):
    """Asserts that metric_name{**labels} == expected_value."""
    value = get_metric(metric_name, registry=registry, **labels)
    assert_err = METRIC_EQUALS_ERR_EXPLANATION % (
        metric_name,
        format_labels(labels),
        value,
        expected_value,
        metric_name,
        format_vector(get_metrics_vector(metric_name, registry=registry)),
    )
    assert expected_value == value, assert_err


def assert_metric_diff(frozen_registry, expected_diff, metric_name, registry=REGISTRY, **labels):
    """Asserts that metric_name{**labels} moved by expected_diff since frozen_registry was saved.

        registry = save_registry()
        ggd_exact(g, h, coeffs)
        assert_metric_diff(registry, 1, "ggdkit_solver_runs_total", mode="exact")
    """
    saved_value = get_metric_from_frozen_registry(metric_name, frozen_registry, **labels)
    current_value = get_metric(metric_name, registry=registry, **labels)
    assert current_value is not None, METRIC_DIFF_ERR_NONE_EXPLANATION % (
        metric_name,
        format_labels(labels),
        saved_value,
        current_value,
    )
    diff = current_value - (saved_value or 0.0)
    assert_err = METRIC_DIFF_ERR_EXPLANATION % (
        metric_name,
        format_labels(labels),
        diff,
        expected_diff,
        saved_value,
        current_value,
    )
    assert expected_diff == diff, assert_err


def save_registry(registry=REGISTRY):
    """Freezes a registry so later assertions can test changes instead of absolute values."""
    return copy.deepcopy(list(registry.collect()))


def get_metric(metric_name, registry=REGISTRY, **labels):
    """Gets a single sample, or None."""
    return get_metric_from_frozen_registry(metric_name, registry.collect(), **labels)


def get_metrics_vector(metric_name, registry=REGISTRY):
    """Returns (labels, value) for every labelset of metric_name, labels as a dict."""
    output = []
    for metric in registry.collect():
        for sample in metric.samples:
            if sample.name == metric_name:
                output.append((sample.labels, sample.value))
    return output


def get_metric_from_frozen_registry(metric_name, frozen_registry, **labels):
    for metric in frozen_registry:
        for sample in metric.samples:
            if sample.name == metric_name and sample.labels == labels:
                return sample.value


def format_labels(labels):
    """Format a set of labels to Prometheus representation.

    In:
      {'mode': 'exact', 'type': 'ValueError'}

    Out:
      '{mode="exact",type="ValueError"}'
    """
    return "{{{}}}".format(",".join([f'{k}="{v}"' for k, v in labels.items()]))


def format_vector(vector):
    return "\n".join([f"{format_labels(labels)} = {value}" for labels, value in vector])


def assert_costs_close(actual, expected, rel_tol=DEFAULT_TOLERANCE, what="cost"):
    """Asserts two costs agree to rel_tol (and to 1e-12 absolutely near zero)."""
    assert_err = COSTS_CLOSE_ERR_EXPLANATION % (what, actual, expected, rel_tol, abs(actual - expected))
    assert costs_close(actual, expected, rel_tol=rel_tol), assert_err


def assert_sandwich(lower, value, upper, rel_tol=DEFAULT_TOLERANCE, what="lower <= value <= upper"):
    """Asserts lower <= value <= upper, allowing rel_tol of rounding on either side."""
    slack = rel_tol * max(abs(lower), abs(value), abs(upper), 1.0)
    assert_err = SANDWICH_ERR_EXPLANATION % (what, lower, value, upper)
    assert lower <= value + slack and value <= upper + slack, assert_err
