import numpy as np
import pytest

from quasistable.coloring import refine_stable
from quasistable.generators import barabasi_albert, gen_blowup, perturb
from quasistable.graph import WeightedDigraph


class TestGenBlowup:
    def test_stable_coloring_recovers_groups(self):
        for groups, size in ((5, 3), (10, 4), (100, 10)):
            g = gen_blowup(groups, size, 4.0, seed=0)
            assert g.n == groups * size
            assert refine_stable(g).k == groups

    def test_edge_count_tracks_inter_degree(self):
        g = gen_blowup(100, 10, 43.2, seed=0)
        assert g.m == 2 * 21_600  # symmetric digraph: two arcs per edge

    def test_symmetric_unit_weights(self):
        g = gen_blowup(8, 3, 3.0, seed=5)
        assert g.is_symmetric()
        assert set(g.edges.values()) == {1.0}

    def test_deterministic(self):
        a = gen_blowup(6, 4, 3.0, seed=9)
        b = gen_blowup(6, 4, 3.0, seed=9)
        assert a == b

    def test_single_group_is_complete(self):
        g = gen_blowup(1, 4, 0.0, seed=0)
        assert g.m == 4 * 3


class TestPerturb:
    def test_adds_requested_fraction(self):
        g = gen_blowup(10, 5, 4.0, seed=1)
        undirected_before = g.m // 2
        g2 = perturb(g, 0.1, seed=2)
        added = (g2.m - g.m) // 2
        assert added == int(np.ceil(0.1 * undirected_before))

    def test_original_edges_kept(self):
        g = gen_blowup(6, 4, 3.0, seed=3)
        g2 = perturb(g, 0.05, seed=4)
        for e, w in g.edges.items():
            assert g2.edges[e] == w

    def test_zero_fraction_is_identity(self):
        g = gen_blowup(6, 4, 3.0, seed=3)
        assert perturb(g, 0.0, seed=1) == g

    def test_perturbation_breaks_stability(self):
        g = gen_blowup(20, 8, 6.0, seed=7)
        k_before = refine_stable(g).k
        g2 = perturb(g, 0.02, seed=8)
        assert refine_stable(g2).k > k_before


class TestBarabasiAlbert:
    def test_edge_count(self):
        g = barabasi_albert(100, 3, seed=0)
        # m seed nodes fully joined to the first arrival, then m per new node
        assert g.m // 2 == 3 + (100 - 4) * 3

    def test_symmetric(self):
        assert barabasi_albert(60, 2, seed=1).is_symmetric()

    def test_deterministic(self):
        assert barabasi_albert(50, 3, seed=5) == barabasi_albert(50, 3, seed=5)

    def test_skewed_degree_distribution(self):
        g = barabasi_albert(400, 3, seed=2)
        deg = np.zeros(g.n)
        for (u, v) in g.edges:
            deg[u] += 1
        assert deg.max() > 8 * np.median(deg)
