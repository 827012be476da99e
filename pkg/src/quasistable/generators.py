"""Synthetic graphs: regular blow-up graphs with a known compact stable
coloring, random edge perturbation, and a Barabasi-Albert generator."""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError
from .graph import WeightedDigraph


def gen_blowup(groups: int, group_size: int, inter_degree: float, seed: int = 0) -> WeightedDigraph:
    """Blow each of `groups` super-nodes into `group_size` copies.

    Super-edges (about groups * inter_degree / 2 of them) are wired as circulant
    perfect matchings between the two blown-up groups, so the group partition is
    equitable by construction.  The result is verified to have exactly `groups`
    stable colors (retrying with a derived seed on the rare symmetric draw).
    """
    if groups < 1 or group_size < 1:
        raise ParameterError("groups and group_size must be positive")
    n = groups * group_size
    if groups == 1:
        edges = {}
        for u in range(n):
            for v in range(n):
                if u != v:
                    edges[(u, v)] = 1.0
        return WeightedDigraph(n, edges)

    from .coloring import refine_stable

    m_super = max(1, round(groups * inter_degree / 2))
    for attempt in range(8):
        rng = np.random.default_rng(seed + 7919 * attempt)
        used: set[tuple[int, int, int]] = set()
        edges: dict[tuple[int, int], float] = {}
        placed = 0
        while placed < m_super:
            a, b = rng.integers(0, groups, size=2)
            if a == b:
                continue
            a, b = (int(a), int(b)) if a < b else (int(b), int(a))
            shift = int(rng.integers(0, group_size))
            if (a, b, shift) in used:
                continue
            used.add((a, b, shift))
            for i in range(group_size):
                u = a * group_size + i
                v = b * group_size + (i + shift) % group_size
                edges[(u, v)] = 1.0
                edges[(v, u)] = 1.0
            placed += 1
        g = WeightedDigraph(n, edges)
        if refine_stable(g).k == groups:
            return g
    raise RuntimeError("could not realize a graph with exactly `groups` stable colors")


def perturb(g: WeightedDigraph, fraction: float, seed: int = 0) -> WeightedDigraph:
    """Add ceil(fraction * |E|) random new undirected unit edges, no duplicates."""
    if fraction < 0:
        raise ParameterError("fraction must be nonnegative")
    existing = {(u, v) for (u, v) in g.edges}
    undirected = {(min(u, v), max(u, v)) for u, v in existing if u != v}
    count = math.ceil(fraction * len(undirected))
    rng = np.random.default_rng(seed)
    edges = dict(g.edges)
    added = 0
    while added < count:
        u, v = rng.integers(0, g.n, size=2)
        u, v = int(u), int(v)
        if u == v:
            continue
        if (u, v) in edges or (v, u) in edges:
            continue
        edges[(u, v)] = 1.0
        edges[(v, u)] = 1.0
        added += 1
    return WeightedDigraph(g.n, edges, g.labels)


def barabasi_albert(n: int, m: int, seed: int = 0) -> WeightedDigraph:
    """Preferential attachment: each new node links to m existing nodes."""
    if n < m + 1 or m < 1:
        raise ParameterError("need n > m >= 1")
    rng = np.random.default_rng(seed)
    edges: dict[tuple[int, int], float] = {}
    repeated: list[int] = []
    targets = list(range(m))
    for v in range(m, n):
        for t in targets:
            edges[(v, t)] = 1.0
            edges[(t, v)] = 1.0
            repeated += [v, t]
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(int(repeated[rng.integers(0, len(repeated))]))
        targets = sorted(chosen)
    return WeightedDigraph(n, edges)
