"""Tests for the graph type and its structural helpers."""
import networkx as nx
import pytest

from grundy_lab.core.generators import complete, cycle, path, petersen, random_graphs
from grundy_lab.core.graph import (
    Girth,
    Graph,
    empty_graph,
    from_networkx,
    girth,
    graph_from_edges,
    induced_subgraph,
    is_clique,
    is_connected,
    is_independent,
    is_triangle_free,
    mask_to_vertices,
    max_degree,
    min_degree,
    to_networkx,
    vertices_to_mask,
)
from grundy_lab.errors import GraphError


class TestGraphConstruction:
    """Tests for graph_from_edges and the Graph invariants."""

    def test_basic_counts(self, p4):
        """Test vertex, edge and degree bookkeeping on a path."""
        assert p4.n == 4
        assert p4.m == 3
        assert p4.edges == [(0, 1), (1, 2), (2, 3)]
        assert p4.degrees == [1, 2, 2, 1]
        assert p4.masks[1] == 0b101

    def test_duplicate_edges_collapse(self):
        """Test that repeated and reversed pairs give one edge."""
        G = graph_from_edges(3, [(0, 1), (1, 0), (0, 1), (1, 2)])

        assert G.m == 2

    def test_self_loop_rejected(self):
        """Test that a self-loop reports the offending pair index."""
        with pytest.raises(GraphError) as exc:
            graph_from_edges(3, [(0, 1), (2, 2)])

        assert exc.value.index == 1

    def test_out_of_range_endpoint_rejected(self):
        """Test that endpoints outside 0..n-1 are rejected."""
        with pytest.raises(GraphError):
            graph_from_edges(3, [(0, 3)])

    def test_asymmetric_adjacency_rejected(self):
        """Test that a one-sided adjacency cannot build a Graph."""
        with pytest.raises(GraphError):
            Graph(2, (frozenset({1}), frozenset()))

    def test_empty_graph(self):
        """Test the graph on zero vertices."""
        G = empty_graph(0)

        assert G.n == 0
        assert G.m == 0
        assert G.full_mask == 0
        assert max_degree(G) == 0
        assert min_degree(G) == 0

    def test_isolated_vertices(self):
        """Test isolated vertex listing."""
        G = graph_from_edges(4, [(0, 1)])

        assert G.isolated_vertices() == [2, 3]


class TestGirth:
    """Tests for exact girth."""

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 9])
    def test_cycles(self, n):
        """Test that C_n has girth n."""
        assert girth(cycle(n)).value == n

    def test_petersen(self, petersen_graph):
        """Test the Petersen graph has girth 5."""
        assert girth(petersen_graph) == Girth(5)

    def test_forest_is_infinite(self):
        """Test that acyclic graphs have infinite girth."""
        g = girth(path(6))

        assert not g.is_finite
        assert str(g) == "inf"

    def test_edgeless_is_infinite(self, edgeless):
        """Test that graphs without edges have infinite girth."""
        assert not girth(edgeless).is_finite

    def test_parity_flags(self):
        """Test odd and even girth flags."""
        assert Girth(5).is_odd and not Girth(5).is_even
        assert Girth(4).is_even and not Girth(4).is_odd
        assert not Girth().is_odd and not Girth().is_even

    def test_invalid_girth_value(self):
        """Test that finite girth below 3 is rejected."""
        with pytest.raises(GraphError):
            Girth(2)

    def test_matches_networkx(self):
        """Test girth against networkx on a graph with a long and a short cycle."""
        edges = [(i, (i + 1) % 7) for i in range(7)] + [(7, 8), (8, 9), (9, 7), (6, 7)]
        G = graph_from_edges(10, edges)

        assert girth(G).value == nx.girth(to_networkx(G)) == 3

    def test_matches_networkx_on_random_graphs(self):
        """Test girth against networkx on seeded random graphs with n <= 10."""
        for n in range(3, 11):
            for p in (0.15, 0.3, 0.5):
                for index, G in enumerate(random_graphs(n, p, seed=100 * n, count=20)):
                    expected = nx.girth(to_networkx(G))
                    g = girth(G)
                    if expected == float("inf"):
                        assert not g.is_finite, (n, p, index)
                    else:
                        assert g.value == expected, (n, p, index)


class TestStructure:
    """Tests for structural predicates and conversions."""

    def test_triangle_free(self, c4, k4, petersen_graph):
        """Test triangle detection."""
        assert is_triangle_free(c4)
        assert is_triangle_free(petersen_graph)
        assert not is_triangle_free(k4)

    def test_connected(self):
        """Test connectivity on connected and split graphs."""
        assert is_connected(cycle(5))
        assert not is_connected(graph_from_edges(4, [(0, 1), (2, 3)]))
        assert is_connected(empty_graph(0))

    def test_independent_and_clique(self, k4, c5):
        """Test independence and clique predicates."""
        assert is_independent(c5, [0, 2])
        assert not is_independent(c5, [0, 1])
        assert is_clique(k4, [0, 1, 2, 3])
        assert not is_clique(c5, [0, 1, 2])

    def test_induced_subgraph_relabels(self, c6):
        """Test that induced subgraphs keep relative order and return the id table."""
        H, table = induced_subgraph(c6, [5, 0, 1, 3])

        assert table == (0, 1, 3, 5)
        assert H.n == 4
        assert sorted(H.edges) == [(0, 1), (0, 3)]

    def test_masks_round_trip(self):
        """Test bitmask conversions."""
        assert mask_to_vertices(0b10110) == [1, 2, 4]
        assert vertices_to_mask([1, 2, 4]) == 0b10110

    def test_networkx_conversion(self):
        """Test conversion to and from networkx keeps the graph up to isomorphism."""
        G = petersen()
        H = to_networkx(G)

        assert nx.is_isomorphic(H, nx.petersen_graph())
        assert from_networkx(H) == G

    def test_complete_graph_degrees(self):
        """Test degree extremes on K_5."""
        G = complete(5)

        assert max_degree(G) == min_degree(G) == 4
