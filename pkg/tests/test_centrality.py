import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from quasistable.centrality import approx_centrality, brandes_exact, spearman
from quasistable.coloring import Coloring, refine_stable
from quasistable.errors import UndefinedCorrelation
from quasistable.graph import WeightedDigraph


def undirected(pairs, n):
    edges = {}
    for u, v in pairs:
        edges[(u, v)] = 1.0
        edges[(v, u)] = 1.0
    return WeightedDigraph(n, edges)


class TestBrandesExact:
    def test_path_center(self):
        g = undirected([(0, 1), (1, 2)], 3)
        scores = brandes_exact(g)
        assert scores.tolist() == [0.0, 2.0, 0.0]

    def test_star_center(self):
        g = undirected([(0, 1), (0, 2), (0, 3)], 4)
        scores = brandes_exact(g)
        assert scores[0] == 6.0
        assert scores[1:].tolist() == [0.0, 0.0, 0.0]

    def test_disconnected_pairs_contribute_zero(self):
        g = WeightedDigraph(4, {(0, 1): 1.0, (2, 3): 1.0})
        assert brandes_exact(g).tolist() == [0.0] * 4

    def test_directed_cycle(self):
        g = WeightedDigraph(3, {(0, 1): 1.0, (1, 2): 1.0, (2, 0): 1.0})
        # each node is interior to exactly one of the six ordered pairs' paths
        assert brandes_exact(g).tolist() == [1.0, 1.0, 1.0]

    @settings(deadline=None, max_examples=30)
    @given(st.integers(0, 10_000), st.integers(2, 8))
    def test_matches_path_enumeration_oracle(self, seed, n):
        rng = np.random.default_rng(seed)
        g = oracles.random_graph(rng, n)
        assert brandes_exact(g) == pytest.approx(
            oracles.betweenness_by_enumeration(g), abs=1e-9
        )


class TestApproxCentrality:
    def test_singleton_coloring_is_exact(self):
        rng = np.random.default_rng(4)
        g = oracles.random_graph(rng, 10)
        c = Coloring(np.arange(g.n))
        assert approx_centrality(g, c) == pytest.approx(brandes_exact(g))

    def test_single_color_gives_constant_scores(self):
        rng = np.random.default_rng(9)
        g = oracles.random_graph(rng, 8)
        c = Coloring(np.zeros(g.n, dtype=np.int64))
        scores = approx_centrality(g, c)
        assert np.ptp(scores) == 0.0

    def test_same_color_same_score(self):
        rng = np.random.default_rng(14)
        g = oracles.random_graph(rng, 12)
        c = Coloring(np.arange(g.n) % 4)
        scores = approx_centrality(g, c)
        for cls in c.classes:
            assert np.ptp(scores[cls]) == 0.0

    def test_deterministic_given_coloring(self):
        rng = np.random.default_rng(21)
        g = oracles.random_graph(rng, 12)
        c = Coloring(np.arange(g.n) % 3)
        assert np.array_equal(approx_centrality(g, c), approx_centrality(g, c))


class TestSpearman:
    def test_identical_vectors(self):
        assert spearman([1, 5, 3], [1, 5, 3]) == pytest.approx(1.0)

    def test_reversed_ranking(self):
        assert spearman([1, 2, 3, 4], [9, 7, 5, 3]) == pytest.approx(-1.0)

    def test_hand_computed_tie_case(self):
        a = [1.0, 2.0, 2.0, 3.0, 5.0]
        b = [2.0, 1.0, 4.0, 4.0, 5.0]
        assert spearman(a, b) == pytest.approx(oracles.spearman_textbook(a, b))

    def test_constant_vector_is_undefined(self):
        with pytest.raises(UndefinedCorrelation):
            spearman([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    @settings(deadline=None, max_examples=50)
    @given(st.lists(st.integers(0, 5), min_size=3, max_size=12))
    def test_matches_textbook_formula(self, xs):
        rng = np.random.default_rng(len(xs))
        ys = rng.integers(0, 5, size=len(xs)).tolist()
        try:
            ours = spearman(xs, ys)
        except UndefinedCorrelation:
            assert len(set(xs)) == 1 or len(set(ys)) == 1
            return
        assert ours == pytest.approx(oracles.spearman_textbook(xs, ys))


class TestStableColorDoesNotPreserveCentrality:
    def test_regression_fixture(self):
        # two nodes share a stable color yet have different exact centrality;
        # found by randomized search over small undirected graphs, frozen here
        pairs = [
            (0, 1), (0, 2), (0, 7), (1, 3), (1, 6), (2, 3), (2, 4),
            (3, 6), (3, 7), (4, 5), (4, 7), (5, 6), (5, 7),
        ]
        g = undirected(pairs, 8)
        stable = refine_stable(g)
        scores = brandes_exact(g)
        cls = next(c for c in stable.classes if 0 in c)
        assert len(cls) >= 2
        assert np.ptp(scores[cls]) > 1e-9
