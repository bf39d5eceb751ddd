"""Tests for the leveled witness trees and their count identities."""
import networkx as nx
import pytest

from grundy_lab.core.coloring import tree_atom
from grundy_lab.core.domination import is_star_partition
from grundy_lab.core.graph import girth, to_networkx
from grundy_lab.core.witness import (
    binomial_lower_bound_check,
    count_identities,
    demand_property_holds,
    depth_for_girth,
    render_dot,
    tree_size,
    witness_star_partition,
    witness_tree,
)
from grundy_lab.errors import ParameterError


class TestWitnessTree:
    """Tests for witness tree construction."""

    def test_single_root_sizes(self):
        """Test level sizes of the odd-girth tree for k=4, depth 3."""
        W = witness_tree(4, 3)

        assert [len(level) for level in W.levels] == [1, 3, 3]
        assert W.graph.n == 7
        assert W.graph.m == 6
        assert W.roots == (0,)
        assert W.demanded_color[0] == 4

    def test_children_ordered_by_color(self):
        """Test that level 2 lists the root's children by descending color."""
        W = witness_tree(4, 3)

        assert [W.demanded_color[v] for v in W.levels[1]] == [3, 2, 1]
        assert W.children(0) == [1, 2, 3]

    def test_doubled_roots(self):
        """Test the two adjacent roots of the even-girth tree."""
        W = witness_tree(5, 4, doubled=True)

        assert W.roots == (0, 1)
        assert W.graph.has_edge(0, 1)
        assert W.demanded_color[:2] == (5, 4)
        assert W.graph.n == tree_size(5, 4, True) == 16
        assert W.parent[0] == W.parent[1] == -1

    def test_is_a_tree(self):
        """Test that witness trees are acyclic and connected."""
        for W in (witness_tree(5, 4), witness_tree(5, 3, doubled=True)):
            assert W.graph.m == W.graph.n - 1
            assert not girth(W.graph).is_finite

    def test_demand_property(self):
        """Test that every inner vertex sees each lower color exactly once."""
        assert demand_property_holds(witness_tree(5, 4))
        assert demand_property_holds(witness_tree(5, 4, doubled=True))

    def test_parameter_validation(self):
        """Test rejected parameters."""
        with pytest.raises(ParameterError):
            witness_tree(1, 3)
        with pytest.raises(ParameterError):
            witness_tree(2, 3, doubled=True)
        with pytest.raises(ParameterError):
            witness_tree(4, 0)
        with pytest.raises(ParameterError):
            witness_tree(12, 12, max_vertices=100)

    def test_depth_for_girth(self):
        """Test depth (g+1)/2 for odd girth and g/2 for even girth."""
        assert depth_for_girth(5) == 3
        assert depth_for_girth(7) == 4
        assert depth_for_girth(6) == 3
        assert depth_for_girth(8) == 4

    def test_render_dot(self):
        """Test the DOT rendering lists every vertex and edge."""
        W = witness_tree(3, 2)
        dot = render_dot(W)

        assert dot.startswith("graph witness {")
        assert 'v0 [label="0:3"];' in dot
        assert "v0 -- v1;" in dot
        assert dot.count(" -- ") == W.graph.m


class TestCountIdentities:
    """Tests for the closed-form counts."""

    @pytest.mark.parametrize(
        "k,g,v_H,s_prime",
        [(4, 7, 8, 4), (4, 5, 7, 3), (5, 8, 16, 8), (5, 6, 14, 6)],
    )
    def test_spot_values(self, k, g, v_H, s_prime):
        """Test known (|V(H)|, |S'|) pairs."""
        identity = count_identities(k, g, strict=False)

        assert identity.v_H == v_H
        assert identity.s_prime == s_prime
        assert identity.uncovered == v_H - s_prime

    def test_case_labels(self):
        """Test that the case label follows g mod 4."""
        assert count_identities(5, 7).case == "g=3 mod 4"
        assert count_identities(5, 6).case == "g=2 mod 4"

    @pytest.mark.parametrize("k,g", [(4, 5), (6, 5), (5, 7), (7, 9), (8, 11), (5, 6), (6, 8), (7, 10), (8, 12)])
    def test_constructed_tree_matches(self, k, g):
        """Test that the built tree and its star partition match the closed forms."""
        identity = count_identities(k, g)
        W = witness_tree(k, depth_for_girth(g), doubled=g % 2 == 0)
        partition = witness_star_partition(W, g)

        assert W.graph.n == identity.v_H
        assert len(partition) == identity.s_prime
        assert is_star_partition(W.graph, partition)

    def test_preconditions(self):
        """Test that counts below the girth thresholds are rejected unless relaxed."""
        for k, g in [(4, 4), (4, 7), (5, 8), (4, 6)]:
            with pytest.raises(ParameterError):
                count_identities(k, g)
        with pytest.raises(ParameterError):
            count_identities(2, 6, strict=False)
        with pytest.raises(ParameterError):
            count_identities(4, 4, strict=False)

    def test_bound_range_flag(self):
        """Test the in_bound_range flag on both sides of the thresholds."""
        assert count_identities(5, 7).in_bound_range
        assert not count_identities(4, 7, strict=False).in_bound_range
        assert count_identities(6, 8).in_bound_range
        assert not count_identities(5, 8, strict=False).in_bound_range

    def test_partition_parameter_checks(self):
        """Test girth parity and depth mismatches."""
        with pytest.raises(ParameterError):
            witness_star_partition(witness_tree(5, 3), 6)
        with pytest.raises(ParameterError):
            witness_star_partition(witness_tree(5, 4), 5)

    def test_binomial_lower_bound(self):
        """Test (a/b)^b <= C(a, b) on a small grid."""
        for a in range(1, 15):
            for b in range(1, a + 1):
                assert binomial_lower_bound_check(a, b)

    def test_binomial_lower_bound_rejects(self):
        """Test the parameter range."""
        with pytest.raises(ParameterError):
            binomial_lower_bound_check(3, 4)

class TestTreeAtomAgreement:
    """Tests tying the full witness tree to the tree atoms."""

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
    def test_full_depth_tree_is_tree_atom(self, k):
        """Test that the single-root tree of depth k is isomorphic to T_k."""
        W = witness_tree(k, k)

        assert W.graph.n == 2 ** (k - 1)
        assert nx.is_isomorphic(to_networkx(W.graph), to_networkx(tree_atom(k)))
