import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from quasistable.coloring import Coloring, refine_stable, validate
from quasistable.errors import CapacityError, InputError
from quasistable.flow import (
    FlowNetwork,
    check_uniform_condition,
    degenerate_bipartite_piece,
    example_chain_network,
    flow_bounds,
    load_network,
    max_flow,
    max_uniform_flow,
)
from quasistable.generators import gen_blowup
from quasistable.graph import WeightedDigraph


def network(n, caps, s, t):
    return FlowNetwork(WeightedDigraph(n, caps), frozenset({s}), frozenset({t}))


class TestMaxFlow:
    def test_single_edge(self):
        value, _ = max_flow(network(2, {(0, 1): 3.0}, 0, 1))
        assert value == 3.0

    def test_series_bottleneck(self):
        value, _ = max_flow(network(3, {(0, 1): 5.0, (1, 2): 2.0}, 0, 2))
        assert value == 2.0

    def test_parallel_paths_add(self):
        caps = {(0, 1): 2.0, (1, 3): 2.0, (0, 2): 3.0, (2, 3): 3.0}
        value, _ = max_flow(network(4, caps, 0, 3))
        assert value == 5.0

    def test_disconnected_is_zero(self):
        value, _ = max_flow(network(3, {(0, 1): 1.0}, 0, 2))
        assert value == 0.0

    def test_classic_diamond(self):
        caps = {
            (0, 1): 10.0, (0, 2): 10.0, (1, 2): 1.0,
            (1, 3): 10.0, (2, 3): 10.0,
        }
        value, _ = max_flow(network(4, caps, 0, 3))
        assert value == 20.0

    def test_flow_conservation_and_capacity(self):
        rng = np.random.default_rng(2)
        g = oracles.random_graph(rng, 8, p=0.4, weighted=True)
        net = FlowNetwork(g, frozenset({0}), frozenset({7}))
        value, flow = max_flow(net)
        for (u, v), f in flow.items():
            assert -1e-9 <= f <= g.edges[(u, v)] + 1e-9
        for v in range(1, 7):
            inflow = sum(f for (a, b), f in flow.items() if b == v)
            outflow = sum(f for (a, b), f in flow.items() if a == v)
            assert inflow == pytest.approx(outflow, abs=1e-9)
        assert value >= 0

    @settings(deadline=None, max_examples=60)
    @given(st.integers(0, 10_000))
    def test_matches_lp_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(4, 10))
        g = oracles.random_graph(rng, n, p=0.35, weighted=True)
        value, _ = max_flow(FlowNetwork(g, frozenset({0}), frozenset({n - 1})))
        oracle = oracles.max_flow_by_lp(n, g.edges, 0, n - 1)
        assert value == pytest.approx(oracle, abs=1e-6)

    def test_multi_source_multi_sink(self):
        caps = {(0, 2): 1.0, (1, 2): 1.0, (2, 3): 5.0, (2, 4): 1.0}
        net = FlowNetwork(WeightedDigraph(5, caps), frozenset({0, 1}), frozenset({3, 4}))
        value, _ = max_flow(net)
        assert value == 2.0


class TestMaxUniformFlow:
    def test_complete_bipartite_is_total(self):
        X, Y = [0, 1], [2, 3]
        w = {(x, y): 1.0 for x in X for y in Y}
        assert max_uniform_flow(X, Y, w) == pytest.approx(4.0)

    def test_degenerate_piece_is_zero(self):
        X, Y, w = degenerate_bipartite_piece()
        assert max_uniform_flow(X, Y, w) == pytest.approx(0.0, abs=1e-6)

    def test_single_pair(self):
        assert max_uniform_flow([0], [1], {(0, 1): 7.0}) == pytest.approx(7.0)

    def test_skewed_weights_limit_uniformity(self):
        # both columns must carry the same amount, so the weak one binds
        X, Y = [0, 1], [2, 3]
        w = {(0, 2): 10.0, (1, 2): 10.0, (0, 3): 1.0, (1, 3): 1.0}
        assert max_uniform_flow(X, Y, w) == pytest.approx(4.0, abs=1e-6)

    @settings(deadline=None, max_examples=40)
    @given(st.integers(0, 10_000))
    def test_feasibility_matches_subset_oracle(self, seed):
        rng = np.random.default_rng(seed)
        nx, ny = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        X = list(range(nx))
        Y = list(range(nx, nx + ny))
        w = {
            (x, y): float(rng.integers(0, 4))
            for x in X
            for y in Y
            if rng.random() < 0.7
        }
        w = {k: v for k, v in w.items() if v > 0}
        F = max_uniform_flow(X, Y, w)
        assert oracles.uniform_flow_feasible(X, Y, w, F * (1 - 1e-6))
        if F > 1e-9:
            assert F <= sum(w.values()) + 1e-9


class TestCheckUniformCondition:
    def test_marriage_condition_positive(self):
        X, Y = [0, 1], [2, 3]
        w = {(x, y): 1.0 for x in X for y in Y}
        assert check_uniform_condition(X, Y, w, a=2.0, b=2.0)

    def test_marriage_condition_negative(self):
        X, Y = [0, 1], [2, 3]
        w = {(0, 2): 1.0}
        assert not check_uniform_condition(X, Y, w, a=2.0, b=2.0)

    def test_large_side_rejected(self):
        X = list(range(25))
        Y = [100]
        with pytest.raises(CapacityError):
            check_uniform_condition(X, Y, {}, a=0.0, b=0.0)


class TestFlowBounds:
    def test_chain_example(self):
        net, coloring = example_chain_network()
        exact, _ = max_flow(net)
        assert exact == 2.0
        assert validate(net.graph, coloring, "q_stable", q=1.0)
        bounds = flow_bounds(net, coloring)
        assert bounds.lower <= exact <= bounds.upper
        assert bounds.upper >= 3.0

    def test_sandwich_on_random_networks(self):
        rng = np.random.default_rng(31)
        for _ in range(15):
            n = int(rng.integers(5, 10))
            g = oracles.random_graph(rng, n, p=0.4, weighted=True)
            net = FlowNetwork(g, frozenset({0}), frozenset({n - 1}))
            exact, _ = max_flow(net)
            colors = np.zeros(n, dtype=np.int64)
            colors[0] = 1
            colors[n - 1] = 2
            coloring = Coloring(colors, pinned=(1, 2))
            bounds = flow_bounds(net, coloring)
            assert bounds.lower <= exact + 1e-6
            assert exact <= bounds.upper + 1e-6

    def test_blowup_with_pinned_terminals_is_tight(self):
        g = gen_blowup(5, 3, 2.0, seed=3)
        n = g.n
        edges = dict(g.edges)
        # attach fresh s and t so their classes are genuine singletons
        for v in range(3):
            edges[(n, v)] = 2.0
            edges[(n - 1 - v, n + 1)] = 2.0
        g2 = WeightedDigraph(n + 2, edges)
        net = FlowNetwork(g2, frozenset({n}), frozenset({n + 1}))
        coloring = refine_stable(g2, pins=(n, n + 1))
        bounds = flow_bounds(net, coloring)
        exact, _ = max_flow(net)
        assert bounds.c1 == pytest.approx(bounds.c2, abs=1e-6)
        assert bounds.lower == pytest.approx(exact, abs=1e-6)
        assert bounds.upper == pytest.approx(exact, abs=1e-6)


class TestLoadNetwork:
    def test_header_and_edges(self):
        text = "s a\nt c\na b 2\nb c 3\n"
        net = load_network(io.StringIO(text))
        assert len(net.sources) == 1 and len(net.targets) == 1
        value, _ = max_flow(net)
        assert value == 2.0

    def test_missing_terminal_label_is_isolated(self):
        net = load_network(io.StringIO("s x\nt y\na b 1\n"))
        value, _ = max_flow(net)
        assert value == 0.0

    def test_missing_header_rejected(self):
        with pytest.raises(InputError):
            load_network(io.StringIO("a b 1\n"))
