"""Exact max-flow (Dinic), maximum uniform flow, and colored-graph flow bounds."""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, InputError, ParameterError, ParseError
from .graph import WeightedDigraph, induced_bipartite_weights

_EPS = 1e-12


class FlowNetwork:
    """A capacitated digraph with distinguished source and target node sets."""

    def __init__(self, graph: WeightedDigraph, sources, targets):
        sources, targets = frozenset(sources), frozenset(targets)
        if any(w < 0 for w in graph.edges.values()):
            raise ParameterError("capacities must be nonnegative")
        if sources & targets:
            raise InputError("source and target sets must be disjoint")
        if not sources or not targets:
            raise InputError("need at least one source and one target")
        for v in sources | targets:
            if not 0 <= v < graph.n:
                raise InputError(f"node {v} not in graph")
        self.graph = graph
        self.sources = sources
        self.targets = targets


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[float] = []

    def add_edge(self, u: int, v: int, c: float) -> int:
        idx = len(self.to)
        self.head[u].append(idx)
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(0.0)
        return idx

    def _levels(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if level[v] < 0 and self.cap[e] > _EPS:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> float:
        total = 0.0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            # iterative DFS for a blocking flow
            while True:
                path = []
                u = s
                while u != t:
                    advanced = False
                    while it[u] < len(self.head[u]):
                        e = self.head[u][it[u]]
                        v = self.to[e]
                        if self.cap[e] > _EPS and level[v] == level[u] + 1:
                            path.append(e)
                            u = v
                            advanced = True
                            break
                        it[u] += 1
                    if not advanced:
                        if not path:
                            u = None
                            break
                        level[u] = -1  # dead end; prune
                        e = path.pop()
                        u = self.to[e ^ 1]
                        it[u] += 1
                if u is None:
                    break
                bottleneck = min(self.cap[e] for e in path)
                for e in path:
                    self.cap[e] -= bottleneck
                    self.cap[e ^ 1] += bottleneck
                total += bottleneck


def max_flow(net: FlowNetwork):
    """Maximum flow value plus a per-edge flow assignment."""
    g = net.graph
    n = g.n
    multi = len(net.sources) > 1 or len(net.targets) > 1
    size = n + 2 if multi else n
    din = _Dinic(size)
    edge_idx = {}
    for (u, v), c in g.edges.items():
        edge_idx[(u, v)] = din.add_edge(u, v, c)
    if multi:
        inf = sum(g.edges.values()) + 1.0
        s, t = n, n + 1
        for u in net.sources:
            din.add_edge(s, u, inf)
        for v in net.targets:
            din.add_edge(v, t, inf)
    else:
        (s,) = net.sources
        (t,) = net.targets
    value = din.max_flow(s, t)
    original_caps = {e: g.edges[e] for e in edge_idx}
    flow = {e: original_caps[e] - din.cap[idx] for e, idx in edge_idx.items()}
    return value, flow


def _uniform_feasible(X, Y, weights, F: float) -> bool:
    idx = {x: i + 1 for i, x in enumerate(X)}
    idx.update({y: len(X) + 1 + i for i, y in enumerate(Y)})
    s, t = 0, len(X) + len(Y) + 1
    din = _Dinic(len(X) + len(Y) + 2)
    for x in X:
        din.add_edge(s, idx[x], F / len(X))
    for y in Y:
        din.add_edge(idx[y], t, F / len(Y))
    for (x, y), c in weights.items():
        din.add_edge(idx[x], idx[y], c)
    return din.max_flow(s, t) >= F * (1 - 1e-9) - _EPS


def max_uniform_flow(X, Y, weights, iterations: int = 60) -> float:
    """Largest F so every source emits F/|X| and every sink absorbs F/|Y|.

    Feasibility of a given F is a max-flow check on the network augmented with
    a super source and sink; F is found by monotone bisection on [0, c(X,Y)].
    """
    X, Y = sorted(X), sorted(Y)
    if not X or not Y:
        return 0.0
    total = sum(weights.values())
    if total <= 0:
        return 0.0
    if _uniform_feasible(X, Y, weights, total):
        return total
    lo, hi = 0.0, total
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if _uniform_feasible(X, Y, weights, mid):
            lo = mid
        else:
            hi = mid
    return lo


def check_uniform_condition(X, Y, weights, a: float, b: float) -> bool:
    """Marriage-style sufficient condition: c(S,T) + F >= a|S| + b|T| for all S, T.

    With F = min(a|X|, b|Y|).  For each S the worst T is closed-form, so only
    subsets of X are enumerated; |X| is capped at 20.
    """
    X, Y = sorted(X), sorted(Y)
    if len(X) > 20:
        raise CapacityError("subset enumeration limited to |X| <= 20")
    if not X or not Y:
        return True
    F = min(a * len(X), b * len(Y))
    cap_to = {y: {} for y in Y}
    for (x, y), c in weights.items():
        cap_to[y][x] = cap_to[y].get(x, 0.0) + c
    for mask in range(1 << len(X)):
        S = [X[i] for i in range(len(X)) if mask >> i & 1]
        worst = a * len(S)
        for y in Y:
            cSy = sum(cap_to[y].get(x, 0.0) for x in S)
            worst += max(b - cSy, 0.0)
        if worst > F + 1e-9:
            return False
    return True


@dataclass
class FlowBounds:
    lower: float
    upper: float
    c1: np.ndarray  # k x k uniform-flow capacities
    c2: np.ndarray  # k x k total capacities


def flow_bounds(net: FlowNetwork, coloring) -> FlowBounds:
    """Sandwich bounds from the reduced networks with capacities c1 and c2."""
    if len(net.sources) != 1 or len(net.targets) != 1:
        raise ParameterError("flow bounds need a single source and target")
    (s,) = net.sources
    (t,) = net.targets
    cs, ct = int(coloring.color_of[s]), int(coloring.color_of[t])
    if len(coloring.classes[cs]) != 1 or len(coloring.classes[ct]) != 1:
        raise ParameterError("source and target must be pinned in singleton colors")
    g = net.graph
    k = coloring.k
    c2 = np.zeros((k, k))
    for (u, v), c in g.edges.items():
        i, j = coloring.color_of[u], coloring.color_of[v]
        if i != j:
            c2[i, j] += c
    c1 = np.zeros((k, k))
    for i in range(k):
        for j in range(k):
            if i != j and c2[i, j] > 0:
                piece = induced_bipartite_weights(g, coloring.classes[i], coloring.classes[j])
                c1[i, j] = max_uniform_flow(coloring.classes[i], coloring.classes[j], piece)

    def reduced_value(cap: np.ndarray) -> float:
        edges = {(i, j): cap[i, j] for i in range(k) for j in range(k) if cap[i, j] > 0}
        rg = WeightedDigraph(k, edges)
        return max_flow(FlowNetwork(rg, {cs}, {ct}))[0]

    return FlowBounds(reduced_value(c1), reduced_value(c2), c1, c2)


def load_network(stream) -> FlowNetwork:
    """Edge list with mandatory capacities plus `s <label>` / `t <label>` headers."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    s_labels, t_labels, edge_lines = [], [], []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] in ("s", "t") and len(parts) == 2:
            (s_labels if parts[0] == "s" else t_labels).append(parts[1])
        elif len(parts) == 3:
            edge_lines.append((line_no, parts))
        else:
            raise ParseError(f"expected 's <id>', 't <id>' or 'u v cap', got {line!r}", line_no)
    if not s_labels or not t_labels:
        raise ParseError("network file needs s and t header lines")
    text = "\n".join(" ".join(p) for _, p in edge_lines)
    from .graph import load_edge_list

    g = load_edge_list(text, directed=True)
    missing = [lab for lab in s_labels + t_labels if lab not in g.label_to_id]
    if missing:  # isolated endpoint: legal, the flow is just 0
        g = WeightedDigraph(g.n + len(missing), g.edges, g.labels + missing)
    sources = {g.label_to_id[lab] for lab in s_labels}
    targets = {g.label_to_id[lab] for lab in t_labels}
    return FlowNetwork(g, sources, targets)


def example_chain_network():
    """The 11-node pathological instance: true flow 2, q=1 coloring upper bound 3.

    Three columns of three unit-capacity nodes between s and t; consecutive
    columns are joined by four edges with degree pattern (2,1,1)/(1,1,2), so
    every column coloring is 1-stable but carries no uniform flow.
    """
    edges = {}

    def add(u, v):
        edges[(u, v)] = 1.0

    s, t = 0, 10
    A = [1, 2, 3]
    B = [4, 5, 6]
    C = [7, 8, 9]
    for a in A:
        add(s, a)
    for c in C:
        add(c, t)
    # out-degrees (2,1,1) and in-degrees (1,1,2) between consecutive columns
    for X, Y in ((A, B), (B, C)):
        add(X[0], Y[0])
        add(X[0], Y[1])
        add(X[1], Y[2])
        add(X[2], Y[2])
    g = WeightedDigraph(11, edges)
    net = FlowNetwork(g, {s}, {t})
    from .coloring import Coloring

    color_of = np.array([0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4])
    return net, Coloring(color_of, pinned=(0, 4))


def degenerate_bipartite_piece():
    """X={x1,x2}, Y={y1,y2,y3} with edges x1y1, x1y2, x2y3: maxUFlow is 0."""
    X, Y = [0, 1], [2, 3, 4]
    weights = {(0, 2): 1.0, (0, 3): 1.0, (1, 4): 1.0}
    return X, Y, weights
