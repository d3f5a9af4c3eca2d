import logging
import os
from pathlib import Path

import prometheus_client
from prometheus_client import multiprocess

logger = logging.getLogger(__name__)


def _registry():
    if "PROMETHEUS_MULTIPROC_DIR" in os.environ or "prometheus_multiproc_dir" in os.environ:
        registry = prometheus_client.CollectorRegistry()
        multiprocess.MultiProcessCollector(registry)
        return registry
    return prometheus_client.REGISTRY


def ExportToString(registry=None):
    """Renders the registry in the Prometheus text exposition format."""
    return prometheus_client.generate_latest(registry or _registry()).decode("utf-8")


def ExportToTextfile(path, registry=None):
    """Writes the registry to path, atomically, for a node exporter textfile collector.

    When PROMETHEUS_MULTIPROC_DIR is set the metrics of every process
    writing there are aggregated first.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    prometheus_client.write_to_textfile(str(path), registry or _registry())
    logger.info(f"Exported Prometheus metrics to {path}")
    return path
