"""Weighted directed graphs with dense node ids and directional degree queries.

Node labels from input files are interned to 0-based ids; the label map is kept
on the graph so CLI output can refer to the original names.  Graphs are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import io
from typing import Iterable, Mapping

import numpy as np

from .errors import InputError, ParseError

NodeSet = frozenset  # sets of node ids; must be < n of the owning graph


class WeightedDigraph:
    """A directed graph G = (X, w); an edge (u, v) exists iff w(u, v) != 0."""

    def __init__(self, n: int, edges: Mapping[tuple[int, int], float], labels=None):
        if n < 0:
            raise InputError("node count must be nonnegative")
        self.n = n
        self.edges: dict[tuple[int, int], float] = {}
        self.out_adj: list[dict[int, float]] = [dict() for _ in range(n)]
        self.in_adj: list[dict[int, float]] = [dict() for _ in range(n)]
        for (u, v), w in edges.items():
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if w == 0:
                continue
            self.edges[(u, v)] = w
            self.out_adj[u][v] = w
            self.in_adj[v][u] = w
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.label_to_id = {lab: i for i, lab in enumerate(self.labels)}
        # flat edge arrays in insertion order; shared by the refinement kernels
        m = len(self.edges)
        self.edge_src = np.empty(m, dtype=np.int64)
        self.edge_dst = np.empty(m, dtype=np.int64)
        self.edge_w = np.empty(m, dtype=np.float64)
        for e, ((u, v), w) in enumerate(self.edges.items()):
            self.edge_src[e] = u
            self.edge_dst[e] = v
            self.edge_w[e] = w

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> float:
        return self.out_adj[u].get(v, 0.0)

    def is_symmetric(self) -> bool:
        return all(self.weight(v, u) == w for (u, v), w in self.edges.items())

    def __eq__(self, other):
        return (
            isinstance(other, WeightedDigraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, m={self.m})"


def load_edge_list(stream, directed: bool = True, default_weight: float = 1.0) -> WeightedDigraph:
    """Parse lines `u v` or `u v w` into a graph; `#` starts a comment.

    Labels are interned in order of first appearance.  Parallel edges are summed
    into one weighted edge; undirected input inserts both directions.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    labels: list[str] = []
    index: dict[str, int] = {}
    weights: dict[tuple[int, int], float] = {}

    def intern(tok: str) -> int:
        if tok not in index:
            index[tok] = len(labels)
            labels.append(tok)
        return index[tok]

    for line_no, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'u v' or 'u v w', got {line!r}", line_no)
        u, v = intern(parts[0]), intern(parts[1])
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise ParseError(f"bad weight {parts[2]!r}", line_no) from None
        else:
            w = default_weight
        if w == 0:
            raise ParseError("zero weight means no edge; omit the line instead", line_no)
        weights[(u, v)] = weights.get((u, v), 0.0) + w
        if not directed:
            weights[(v, u)] = weights.get((v, u), 0.0) + w if (v, u) != (u, v) else weights[(u, v)]
    return WeightedDigraph(len(labels), weights, labels)


def dump_edge_list(g: WeightedDigraph) -> str:
    """Serialize as directed `u v w` lines; round-trips through load_edge_list."""
    out = []
    for (u, v), w in sorted(g.edges.items()):
        out.append(f"{g.labels[u]} {g.labels[v]} {w!r}")
    return "\n".join(out) + ("\n" if out else "")


def weight_between(g: WeightedDigraph, U: Iterable[int], V: Iterable[int]) -> float:
    """Total weight from U to V; the sets may overlap."""
    U, V = list(U), set(V)
    total = 0.0
    for u in U:
        for v, w in g.out_adj[u].items():
            if v in V:
                total += w
    return total


def color_degree(g: WeightedDigraph, v: int, C: Iterable[int], direction: str = "out") -> float:
    """Weighted degree of v into (out) or from (in) the node set C."""
    adj = g.out_adj[v] if direction == "out" else g.in_adj[v]
    C = set(C)
    return sum(w for u, w in adj.items() if u in C)


def induced_bipartite_weights(g: WeightedDigraph, left, right) -> dict[tuple[int, int], float]:
    """Edges of g restricted to left -> right, keyed by original node ids."""
    right = set(right)
    return {
        (u, v): w
        for u in left
        for v, w in g.out_adj[u].items()
        if v in right
    }
