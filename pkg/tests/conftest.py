"""Pytest configuration and graph fixtures for grundy-lab tests."""
from typing import Dict

import pytest

from grundy_lab.core.generators import (
    complete,
    complete_bipartite,
    cycle,
    extremal_even,
    path,
    petersen,
    prop_gamma_equality,
)
from grundy_lab.core.graph import Graph, empty_graph, graph_from_edges


@pytest.fixture
def petersen_graph() -> Graph:
    """Petersen graph: girth 5, gamma 3, Grundy number 4."""
    return petersen()


@pytest.fixture
def p4() -> Graph:
    """Path 0-1-2-3."""
    return path(4)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def c5() -> Graph:
    return cycle(5)


@pytest.fixture
def c6() -> Graph:
    return cycle(6)


@pytest.fixture
def k4() -> Graph:
    return complete(4)


@pytest.fixture
def k33() -> Graph:
    return complete_bipartite(3, 3)


@pytest.fixture
def star() -> Graph:
    """K_{1,4} with center 0."""
    return graph_from_edges(5, [(0, i) for i in range(1, 5)])


@pytest.fixture
def edgeless() -> Graph:
    return empty_graph(4)


@pytest.fixture
def k33_minus_matching():
    """K_{3,3} minus a 2-matching with its Grundy 4-coloring."""
    return extremal_even(3)


@pytest.fixture
def clique_with_pendants() -> Graph:
    """K_3 with a pendant on every clique vertex: gamma 3, Grundy 4."""
    return prop_gamma_equality(3, 3)


@pytest.fixture
def small_graphs() -> Dict[str, Graph]:
    """Named fixtures small enough for every brute-force oracle."""
    return {
        "k1": empty_graph(1),
        "edgeless3": empty_graph(3),
        "k2": complete(2),
        "p4": path(4),
        "p5": path(5),
        "c4": cycle(4),
        "c5": cycle(5),
        "c6": cycle(6),
        "k4": complete(4),
        "k23": complete_bipartite(2, 3),
        "k33": complete_bipartite(3, 3),
        "paw": graph_from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
        "bull": graph_from_edges(5, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]),
        "k33_minus_matching": extremal_even(3)[0],
        "clique_with_pendants": prop_gamma_equality(3, 3),
        "two_components": graph_from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (3, 5)]),
    }
