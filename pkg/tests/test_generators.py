"""Tests for the graph families and seeded random graphs."""
import pytest

from grundy_lab.core.coloring import grundy_number_exact, is_grundy_coloring
from grundy_lab.core.domination import domination_number_exact
from grundy_lab.core.generators import (
    GeneratorSpec,
    build,
    complete_bipartite,
    cycle,
    extremal_even,
    extremal_odd,
    path,
    prop_gamma_equality,
    random_graph,
    random_graphs,
    random_with_min_girth,
)
from grundy_lab.core.graph import girth, is_triangle_free
from grundy_lab.errors import GeneratorExhaustedError, ParameterError


class TestExtremalFamilies:
    """Tests for the graphs attaining the triangle-free bound."""

    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_extremal_even(self, t):
        """Test K_{t,t} minus a (t-1)-matching: Grundy t+1, gamma 2."""
        G, labeling = extremal_even(t)

        assert G.n == 2 * t
        assert is_triangle_free(G)
        assert is_grundy_coloring(G, labeling)
        assert labeling.num_colors == t + 1
        assert grundy_number_exact(G).k == t + 1
        assert domination_number_exact(G).gamma == 2

    @pytest.mark.parametrize("t", [3, 4])
    def test_extremal_odd(self, t):
        """Test the odd-order family: Grundy t+1, gamma 3, girth 4."""
        G, labeling = extremal_odd(t)

        assert G.n == 2 * t + 1
        assert is_triangle_free(G)
        assert girth(G).value == 4
        assert is_grundy_coloring(G, labeling)
        assert grundy_number_exact(G).k == t + 1
        assert domination_number_exact(G).gamma == 3

    def test_extremal_parameter_checks(self):
        """Test rejected family parameters."""
        with pytest.raises(ParameterError):
            extremal_even(1)
        with pytest.raises(ParameterError):
            extremal_odd(2)

    def test_prop_gamma_equality(self):
        """Test the clique plus independent dominating set family."""
        G = prop_gamma_equality(4, 2)

        assert G.n == 6
        assert domination_number_exact(G).gamma == 2
        assert grundy_number_exact(G).k == 5

    def test_prop_gamma_equality_checks(self):
        """Test that D larger than Q is rejected."""
        with pytest.raises(ParameterError):
            prop_gamma_equality(2, 3)
        with pytest.raises(ParameterError):
            prop_gamma_equality(0, 1)


class TestFixtures:
    """Tests for the deterministic fixture families."""

    def test_small_family_checks(self):
        """Test parameter validation of cycles, paths and bipartite graphs."""
        with pytest.raises(ParameterError):
            cycle(2)
        with pytest.raises(ParameterError):
            path(0)
        with pytest.raises(ParameterError):
            complete_bipartite(0, 3)

    def test_build_expected_values(self):
        """Test that build reports expected invariants that hold."""
        for spec in [
            GeneratorSpec("extremal-even", {"t": 3}),
            GeneratorSpec("extremal_odd", {"t": 3}),
            GeneratorSpec("prop-gamma-equality", {"q": 3, "d": 2}),
            GeneratorSpec("atom", {"k": 4}),
            GeneratorSpec("cycle", {"n": 7}),
            GeneratorSpec("complete", {"n": 5}),
            GeneratorSpec("petersen"),
        ]:
            generated = build(spec)
            G = generated.graph
            if "grundy" in generated.expected:
                assert grundy_number_exact(G).k == generated.expected["grundy"], spec
            if "gamma" in generated.expected:
                assert domination_number_exact(G).gamma == generated.expected["gamma"], spec
            if generated.labeling is not None:
                assert is_grundy_coloring(G, generated.labeling), spec

    def test_build_unknown_family(self):
        """Test that unknown families are rejected."""
        with pytest.raises(ParameterError):
            build(GeneratorSpec("hypercube", {"d": 3}))


class TestRandomGraphs:
    """Tests for seeded random graphs."""

    def test_reproducible(self):
        """Test that (n, p, seed) determines the sample."""
        assert random_graph(12, 0.3, 7) == random_graph(12, 0.3, 7)

    def test_extreme_probabilities(self):
        """Test p = 0 and p = 1."""
        assert random_graph(6, 0.0, 1).m == 0
        assert random_graph(6, 1.0, 1).m == 15

    def test_stream_starts_with_single_sample(self):
        """Test that the first sample of a stream equals the single sample."""
        samples = random_graphs(10, 0.4, 3, count=3)

        assert len(samples) == 3
        assert samples[0] == random_graph(10, 0.4, 3)

    def test_mean_edge_count(self):
        """Test that the mean edge count of 200 samples is close to p * n(n-1)/2."""
        samples = random_graphs(20, 0.3, 11, count=200)
        mean = sum(G.m for G in samples) / len(samples)

        assert abs(mean - 0.3 * 190) < 3

    def test_parameter_checks(self):
        """Test rejected random graph parameters."""
        with pytest.raises(ParameterError):
            random_graph(5, 1.5, 0)
        with pytest.raises(ParameterError):
            random_graph(5, 0.5, -1)
        with pytest.raises(ParameterError):
            random_graph(-1, 0.5, 0)

    def test_min_girth(self):
        """Test rejection sampling for girth at least 5."""
        G = random_with_min_girth(10, 0.2, 5, seed=1)
        g = girth(G)

        assert not g.is_finite or g.value >= 5

    def test_min_girth_exhausted(self):
        """Test that impossible girth demands give up."""
        with pytest.raises(GeneratorExhaustedError):
            random_with_min_girth(8, 1.0, 4, seed=0, max_attempts=3)
