import numpy as np
import pytest

from ggdkit.geometry import CostCoefficients, GeometricGraph


@pytest.fixture
def unit_coeffs():
    return CostCoefficients(1.0, 1.0)


@pytest.fixture
def path3():
    return GeometricGraph(2, {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (1.0, 1.0)}, [("a", "b"), ("b", "c")])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
