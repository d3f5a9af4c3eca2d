#!/usr/bin/env python
import logging

import prometheus_client
import pytest

from ggdkit.cli.common import ExceptionCounterByType
from ggdkit.conf import SEARCH_NODE_BUCKETS, _threads_from_env
from ggdkit.utils import PowersOf, Time, TimeSince, costs_close, id_key


class TestUtils:
    def testPowersOf(self):
        """Tests utils.PowersOf."""
        assert PowersOf(2, 4) == [0, 1, 2, 4, 8]
        assert PowersOf(3, 5, lower=1) == [0, 3, 9, 27, 81, 243]
        assert PowersOf(2, 4, include_zero=False) == [1, 2, 4, 8]
        assert PowersOf(2, 6, lower=2, include_zero=False) == [4, 8, 16, 32, 64, 128]

    def test_node_buckets(self):
        assert SEARCH_NODE_BUCKETS[0] == 1
        assert SEARCH_NODE_BUCKETS[-2] == 4**11
        assert SEARCH_NODE_BUCKETS[-1] == float("inf")

    def test_time_since(self):
        started = Time()
        assert TimeSince(started) >= 0

    def test_costs_close(self):
        assert costs_close(1.0, 1.0 + 1e-12)
        assert costs_close(0.0, 1e-13)
        assert not costs_close(1.0, 1.001)

    def test_id_key(self):
        assert sorted(["b", 3, "a", 1], key=id_key) == [1, 3, "a", "b"]


class TestThreadsFromEnv:
    def test_valid(self):
        assert _threads_from_env("4") == 4

    @pytest.mark.parametrize("raw", ["zero", "0", "-2", ""])
    def test_ignored(self, raw, caplog):
        with caplog.at_level(logging.WARNING, logger="ggdkit.conf"):
            assert _threads_from_env(raw) == 1
        assert "GGDKIT_THREADS" in caplog.text


class TestExceptionCounterByType:
    @pytest.fixture
    def counter(self):
        registry = prometheus_client.CollectorRegistry()
        counter = prometheus_client.Counter("errors", "Errors.", ["command", "type"], registry=registry)
        return registry, counter

    def test_counts_by_type(self, counter):
        registry, c = counter
        with pytest.raises(ValueError):
            with ExceptionCounterByType(c, extra_labels={"command": "ggd"}):
                raise ValueError("boom")
        with ExceptionCounterByType(c, extra_labels={"command": "ggd"}):
            pass
        assert registry.get_sample_value("errors_total", {"command": "ggd", "type": "ValueError"}) == 1

    def test_ignores_system_exit(self, counter):
        registry, c = counter
        with pytest.raises(SystemExit):
            with ExceptionCounterByType(c, extra_labels={"command": "gen"}):
                raise SystemExit(2)
        assert registry.get_sample_value("errors_total", {"command": "gen", "type": "SystemExit"}) is None
