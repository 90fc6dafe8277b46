"""
Shared fixtures: small graphs and the complexes built over them, once per session
"""
import sys
from pathlib import Path

import pytest

# Add the project root to the Python path
sys.path.append(str(Path(__file__).parent))

from src.core.complex import build_Q, build_Z
from src.core.graphs import WeightedGraph, gen_graph


@pytest.fixture(scope="session")
def c8():
    return gen_graph("cycle", 8)


@pytest.fixture(scope="session")
def c4():
    return gen_graph("cycle", 4)


@pytest.fixture(scope="session")
def k2():
    return WeightedGraph.from_edges(2, [(0, 1, 1)])


@pytest.fixture(scope="session")
def k4():
    return gen_graph("complete", 4)


@pytest.fixture(scope="session")
def c4_weighted():
    """4-cycle with distinct edge weights."""
    return WeightedGraph.from_edges(4, [(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 5)])


@pytest.fixture(scope="session")
def z_c8_h3(c8):
    return build_Z(c8, 3, 6)


@pytest.fixture(scope="session")
def q_c8_h3(c8):
    return build_Q(c8, 3, 6)


@pytest.fixture(scope="session")
def z_k2_h2(k2):
    return build_Z(k2, 2, 4)
