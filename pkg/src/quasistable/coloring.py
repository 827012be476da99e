"""Partition-producing algorithms and quasi-stability validators.

Includes the budgeted split heuristic (anytime, deterministic), exact
refinement to the maximum stable coloring, capped-degree congruence
refinement, pair-refinement (2-WL), and validators for the q-stable,
relative, equality and bisimulation relations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ParameterError
from .graph import WeightedDigraph

_DIRS = ("out", "in")


class Coloring:
    """A partition of {0..n-1} into k color classes.

    color_of maps node -> color index; classes maps color -> sorted node list.
    pinned colors are singletons that refinement never splits.
    """

    def __init__(self, color_of, classes=None, pinned=()):
        self.color_of = np.asarray(color_of, dtype=np.int64)
        if classes is None:
            k = int(self.color_of.max()) + 1 if len(self.color_of) else 0
            classes = [[] for _ in range(k)]
            for v, c in enumerate(self.color_of):
                classes[c].append(v)
        self.classes = [sorted(c) for c in classes]
        self.pinned = set(pinned)
        self._check()

    def _check(self):
        seen = set()
        for i, cls in enumerate(self.classes):
            if not cls:
                raise ParameterError(f"color {i} is empty")
            for v in cls:
                if v in seen or self.color_of[v] != i:
                    raise ParameterError("classes inconsistent with color_of")
                seen.add(v)
        if len(seen) != len(self.color_of):
            raise ParameterError("classes do not cover all nodes")
        for p in self.pinned:
            if len(self.classes[p]) != 1:
                raise ParameterError(f"pinned color {p} is not a singleton")

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def n(self) -> int:
        return len(self.color_of)

    def copy(self) -> "Coloring":
        return Coloring(self.color_of.copy(), [list(c) for c in self.classes], set(self.pinned))

    def as_partition(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.classes)

    def refines(self, other: "Coloring") -> bool:
        """True if every class of self lies inside a class of other."""
        return all(len({other.color_of[v] for v in cls}) == 1 for cls in self.classes)

    def __repr__(self):
        return f"Coloring(n={self.n}, k={self.k})"


@dataclass
class ErrorReport:
    """Per-direction max/min color-degree matrices and the derived q errors."""

    U_out: np.ndarray
    L_out: np.ndarray
    U_in: np.ndarray
    L_in: np.ndarray
    max_q: float
    mean_q: float
    witness: tuple[int, int, str]  # (source color, target color, direction)

    @property
    def err_out(self) -> np.ndarray:
        return self.U_out - self.L_out

    @property
    def err_in(self) -> np.ndarray:
        return self.U_in - self.L_in


@dataclass
class RothkoParams:
    max_colors: int
    eps: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    mean_kind: str = "arithmetic"  # or "geometric"
    seed: int = 0
    pinned_singletons: frozenset = field(default_factory=frozenset)

    def validate_for(self, g: WeightedDigraph):
        if self.max_colors < 1 + len(self.pinned_singletons):
            raise ParameterError("max_colors must cover the pinned singletons plus one color")
        if self.eps < 0:
            raise ParameterError("eps must be nonnegative")
        if self.mean_kind not in ("arithmetic", "geometric"):
            raise ParameterError(f"unknown mean kind {self.mean_kind!r}")
        if self.mean_kind == "geometric" and len(g.edge_w) and g.edge_w.min() < 0:
            raise ParameterError("geometric mean requires nonnegative weights")
        for v in self.pinned_singletons:
            if not 0 <= v < g.n:
                raise ParameterError(f"pinned node {v} not in graph")


def degree_matrices(g: WeightedDigraph, color_of: np.ndarray, k: int):
    """(n, k) weighted out- and in-degree matrices toward each color."""
    color = np.ascontiguousarray(color_of, dtype=np.int64)
    D_out = kernels.degree_matrix(g.n, k, g.edge_src, g.edge_dst, g.edge_w, color)
    D_in = kernels.degree_matrix(g.n, k, g.edge_dst, g.edge_src, g.edge_w, color)
    return D_out, D_in


def _report(coloring: Coloring, D_out, D_in) -> ErrorReport:
    color = np.ascontiguousarray(coloring.color_of, dtype=np.int64)
    k = coloring.k
    U_out, L_out = kernels.group_minmax(np.ascontiguousarray(D_out), color, k)
    U_in, L_in = kernels.group_minmax(np.ascontiguousarray(D_in), color, k)
    err_out = U_out - L_out
    err_in = U_in - L_in
    max_q = float(max(err_out.max(initial=0.0), err_in.max(initial=0.0)))
    active = []
    for U, err in ((U_out, err_out), (U_in, err_in)):
        mask = U > 0
        if mask.any():
            active.append(err[mask])
    mean_q = float(np.concatenate(active).mean()) if active else 0.0
    witness = _argmax_witness(err_out, err_in)
    return ErrorReport(U_out, L_out, U_in, L_in, max_q, mean_q, witness)


def _argmax_witness(W_out, W_in) -> tuple[int, int, str]:
    """Lexicographically smallest (i, j, direction) attaining the global max."""
    best = max(W_out.max(initial=-np.inf), W_in.max(initial=-np.inf))
    cands = []
    for d, W in enumerate((W_out, W_in)):
        if W.size and W.max() == best:
            ij = np.argwhere(W == best)
            i, j = min(map(tuple, ij))
            cands.append((i, j, d))
    i, j, d = min(cands)
    return int(i), int(j), _DIRS[d]


def q_error(g: WeightedDigraph, coloring: Coloring) -> ErrorReport:
    """Exact U, L, Err matrices plus max and mean q for a coloring."""
    D_out, D_in = degree_matrices(g, coloring.color_of, coloring.k)
    return _report(coloring, D_out, D_in)


def _split_mean(degs: np.ndarray, mean_kind: str) -> float:
    if mean_kind == "geometric":
        # log-domain mean shifted by one so zero degrees stay in-domain
        return float(np.expm1(np.mean(np.log1p(degs))))
    return float(np.mean(degs))


def rothko(g: WeightedDigraph, params: RothkoParams, observer=None):
    """Budgeted iterative color splitting, coarsest partition first.

    Each round recomputes the degree spread between every pair of colors,
    splits the worst offender at the mean degree, and stops once the spread is
    within eps or the color budget is exhausted.  The observer, when given, is
    called after every split with the current (Coloring, ErrorReport); any
    intermediate coloring is valid (anytime contract).
    """
    params.validate_for(g)
    n = g.n
    pins = sorted(params.pinned_singletons)
    color_of = np.zeros(n, dtype=np.int64)
    classes: list[list[int]] = []
    for i, v in enumerate(pins):
        color_of[v] = i
        classes.append([v])
    rest = [v for v in range(n) if v not in params.pinned_singletons]
    if rest:
        for v in rest:
            color_of[v] = len(pins)
        classes.append(rest)
    coloring = Coloring(color_of, classes, pinned=range(len(pins)))
    budget = min(params.max_colors, n)

    while True:
        D_out, D_in = degree_matrices(g, coloring.color_of, coloring.k)
        report = _report(coloring, D_out, D_in)
        if report.max_q <= params.eps or coloring.k >= budget:
            return coloring, report

        sizes = np.array([len(c) for c in coloring.classes], dtype=np.float64)
        C = np.power(sizes[:, None], params.alpha) * np.power(sizes[None, :], params.beta)
        # singleton colors have zero spread everywhere, so they are never picked
        i, j, direction = _argmax_witness(report.err_out * C, report.err_in * C)
        members = coloring.classes[i]
        D = D_out if direction == "out" else D_in
        degs = D[members, j]
        threshold = _split_mean(degs, params.mean_kind)
        keep = degs <= threshold
        if keep.all():  # float rounding of the mean; fall back to a strict split
            keep = degs <= degs.min()
        if keep.all() or not keep.any():
            return coloring, report  # cannot make progress (should not happen)
        retain = [v for v, kf in zip(members, keep) if kf]
        eject = [v for v, kf in zip(members, keep) if not kf]
        new_color = coloring.k
        for v in eject:
            coloring.color_of[v] = new_color
        coloring.classes[i] = retain
        coloring.classes.append(eject)
        if observer is not None:
            observer(coloring.copy(), report)


def _refine_exact(g: WeightedDigraph, transform, pins=()):
    """Iterate signature refinement to the fixpoint (maximum coloring)."""
    n = g.n
    pins = sorted(set(pins))
    color_of = np.zeros(n, dtype=np.int64)
    if pins:
        for i, v in enumerate(pins):
            color_of[v] = i
        rest_color = len(pins)
        for v in range(n):
            if v not in set(pins):
                color_of[v] = rest_color
        color_of = _relabel_first_occurrence(color_of)
    k = int(color_of.max()) + 1 if n else 0
    while True:
        D_out, D_in = degree_matrices(g, color_of, k)
        rows = np.column_stack([color_of.astype(np.float64), transform(D_out), transform(D_in)])
        _, inverse = np.unique(rows, axis=0, return_inverse=True)
        new_color = _relabel_first_occurrence(inverse)
        new_k = int(new_color.max()) + 1 if n else 0
        if new_k == k:
            return Coloring(new_color, pinned=[int(new_color[v]) for v in pins])
        color_of, k = new_color, new_k


def _relabel_first_occurrence(labels: np.ndarray) -> np.ndarray:
    out = np.empty(len(labels), dtype=np.int64)
    seen: dict[int, int] = {}
    for idx, lab in enumerate(labels):
        out[idx] = seen.setdefault(int(lab), len(seen))
    return out


def refine_stable(g: WeightedDigraph, pins=()) -> Coloring:
    """The unique maximum coloring with zero degree spread in both directions."""
    return _refine_exact(g, lambda D: D, pins=pins)


def refine_congruence(g: WeightedDigraph, cap: float, pins=()) -> Coloring:
    """Maximum coloring stable under the capped-degree congruence min(x, cap).

    cap=inf reproduces refine_stable; cap small enough (1 on unit-weight
    graphs) yields the bisimulation coloring.
    """
    if not (cap >= 0):
        raise ParameterError("cap must be nonnegative or infinity")
    if math.isinf(cap):
        return refine_stable(g, pins=pins)
    return _refine_exact(g, lambda D: np.minimum(D, cap), pins=pins)


def validate(g: WeightedDigraph, coloring: Coloring, relation: str,
             q: float = 0.0, eps: float = 0.0, tol: float = 1e-9) -> bool:
    """Check that every ordered color pair (both directions) satisfies ~.

    relation: 'q_stable', 'eps_relative', 'equality', or 'bisimulation'.
    """
    D_out, D_in = degree_matrices(g, coloring.color_of, coloring.k)
    for D in (D_out, D_in):
        for cls in coloring.classes:
            sub = D[cls]  # |P_i| x k member degrees
            mx = sub.max(axis=0)
            mn = sub.min(axis=0)
            if relation == "q_stable":
                if (mx - mn > q + tol).any():
                    return False
            elif relation == "equality":
                if (mx - mn > tol).any():
                    return False
            elif relation == "bisimulation":
                has_zero = (sub == 0).any(axis=0)
                has_nonzero = (sub != 0).any(axis=0)
                if (has_zero & has_nonzero).any():
                    return False
            elif relation == "eps_relative":
                has_zero = (sub == 0).any(axis=0)
                has_nonzero = (sub != 0).any(axis=0)
                if (has_zero & has_nonzero).any():
                    return False  # zero is similar only to itself
                for j in np.nonzero(has_nonzero)[0]:
                    col = sub[:, j]
                    if (col > 0).any() and (col < 0).any():
                        return False
                    a = np.abs(col)
                    if a.max() > a.min() * math.exp(eps) * (1 + tol):
                        return False
            else:
                raise ParameterError(f"unknown relation {relation!r}")
    return True


def refine_wl2(g: WeightedDigraph, max_nodes: int = 200) -> np.ndarray:
    """Node classes from pair-refinement to fixpoint (O(n^3) per round).

    Pairs start from (equality, forward weight, backward weight) and are
    refined by the multiset of (color(u, w), color(w, v)) over all w; a node's
    class is the fixpoint color of its diagonal pair.
    """
    n = g.n
    if n > max_nodes:
        raise ParameterError(f"pair refinement limited to {max_nodes} nodes")
    intern: dict = {}

    def code(sig):
        return intern.setdefault(sig, len(intern))

    color = {}
    for u in range(n):
        for v in range(n):
            color[(u, v)] = code((u == v, g.weight(u, v), g.weight(v, u)))
    k = len(intern)
    while True:
        intern = {}
        new = {}
        for u in range(n):
            for v in range(n):
                multiset = sorted((color[(u, w)], color[(w, v)]) for w in range(n))
                new[(u, v)] = code((color[(u, v)], tuple(multiset)))
        new_k = len(intern)
        color = new
        if new_k == k:
            break
        k = new_k
    return _relabel_first_occurrence(np.array([color[(v, v)] for v in range(n)], dtype=np.int64))


def coloring_to_json(coloring: Coloring, report: ErrorReport | None = None) -> str:
    doc = {"k": coloring.k, "color_of": [int(c) for c in coloring.color_of]}
    if report is not None:
        doc["max_q"] = report.max_q
        doc["mean_q"] = report.mean_q
    return json.dumps(doc)


def coloring_from_json(text: str) -> Coloring:
    doc = json.loads(text)
    return Coloring(np.array(doc["color_of"], dtype=np.int64))
