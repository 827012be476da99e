"""Reduced graphs from colorings, and reduced LPs from colored extended matrices.

The extended matrix of an LP borders A with b (last column) and c^T (last
row); its corner is a sentinel that never enters any sum.  Colorings of the
extended matrix keep the last row and last column in pinned singleton colors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coloring import RothkoParams, _argmax_witness
from .errors import ParameterError
from .graph import WeightedDigraph, weight_between


@dataclass
class ReducedGraph:
    k: int
    w_hat: np.ndarray  # k x k
    mode: str  # "sum" or "mean"
    provenance: object = None


def reduced_graph(g: WeightedDigraph, coloring, mode: str = "sum") -> ReducedGraph:
    """k x k aggregate of the original weights; sum mode matches weight_between."""
    if mode not in ("sum", "mean"):
        raise ParameterError(f"unknown mode {mode!r}")
    k = coloring.k
    w_hat = np.zeros((k, k))
    for (u, v), w in g.edges.items():
        w_hat[coloring.color_of[u], coloring.color_of[v]] += w
    if mode == "mean":
        sizes = np.array([len(c) for c in coloring.classes], dtype=float)
        w_hat = w_hat / (sizes[:, None] * sizes[None, :])
    return ReducedGraph(k, w_hat, mode, provenance=coloring)


@dataclass
class LinearProgram:
    """maximize c^T x subject to A x <= b, x >= 0, with sparse coordinate A."""

    m: int
    n: int
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    b: np.ndarray
    c: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=np.int64)
        self.cols = np.asarray(self.cols, dtype=np.int64)
        self.vals = np.asarray(self.vals, dtype=np.float64)
        self.b = np.asarray(self.b, dtype=np.float64)
        self.c = np.asarray(self.c, dtype=np.float64)
        if len(self.b) != self.m or len(self.c) != self.n:
            raise ParameterError("b/c lengths do not match dimensions")
        if len(self.rows) and (self.rows.max() >= self.m or self.cols.max() >= self.n):
            raise ParameterError("coordinate out of bounds")
        if not (np.isfinite(self.vals).all() and np.isfinite(self.b).all() and np.isfinite(self.c).all()):
            raise ParameterError("LP data must be finite")

    @classmethod
    def from_dense(cls, A, b, c, meta=None) -> "LinearProgram":
        A = np.asarray(A, dtype=np.float64)
        rows, cols = np.nonzero(A)
        return cls(A.shape[0], A.shape[1], rows, cols, A[rows, cols], b, c, meta or {})

    def dense(self) -> np.ndarray:
        A = np.zeros((self.m, self.n))
        np.add.at(A, (self.rows, self.cols), self.vals)
        return A

    def equal_within(self, other: "LinearProgram", tol: float = 0.0) -> bool:
        return (
            self.m == other.m
            and self.n == other.n
            and np.allclose(self.dense(), other.dense(), atol=tol, rtol=tol)
            and np.allclose(self.b, other.b, atol=tol, rtol=tol)
            and np.allclose(self.c, other.c, atol=tol, rtol=tol)
        )


class ExtendedMatrix:
    """The (m+1) x (n+1) bordered matrix; the corner sentinel is stored as 0."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        self.m = lp.m
        self.n = lp.n

    def dense(self) -> np.ndarray:
        ext = np.zeros((self.m + 1, self.n + 1))
        ext[: self.m, : self.n] = self.lp.dense()
        ext[: self.m, self.n] = self.lp.b
        ext[self.m, : self.n] = self.lp.c
        return ext


class BipartiteColoring:
    """Row and column colorings of an extended matrix.

    Normalized so the sentinel row color is the last row color and likewise for
    columns; class lists hold original row/column indices.
    """

    def __init__(self, row_color_of, col_color_of):
        self.row_color_of, self.row_classes = self._normalize(np.asarray(row_color_of, dtype=np.int64))
        self.col_color_of, self.col_classes = self._normalize(np.asarray(col_color_of, dtype=np.int64))
        if len(self.row_classes[-1]) != 1 or self.row_classes[-1][0] != len(self.row_color_of) - 1:
            raise ParameterError("last row must have its own color")
        if len(self.col_classes[-1]) != 1 or self.col_classes[-1][0] != len(self.col_color_of) - 1:
            raise ParameterError("last column must have its own color")

    @staticmethod
    def _normalize(color_of):
        sentinel = color_of[-1]
        order = [c for c in dict.fromkeys(color_of.tolist()) if c != sentinel] + [int(sentinel)]
        remap = {c: i for i, c in enumerate(order)}
        relabeled = np.array([remap[int(c)] for c in color_of], dtype=np.int64)
        classes = [[] for _ in order]
        for idx, c in enumerate(relabeled):
            classes[c].append(idx)
        return relabeled, classes

    @property
    def k(self) -> int:
        """Non-sentinel row color count."""
        return len(self.row_classes) - 1

    @property
    def ell(self) -> int:
        return len(self.col_classes) - 1


def _class_sums(ext: np.ndarray, classes, axis: int) -> np.ndarray:
    """Sum ext over the given classes along axis; result has classes on that axis."""
    if axis == 1:
        return np.stack([ext[:, cls].sum(axis=1) for cls in classes], axis=1)
    return np.stack([ext[cls, :].sum(axis=0) for cls in classes], axis=0)


def _spread_matrix(D: np.ndarray, classes) -> np.ndarray:
    """Err[i, j] = max - min of D[members of class i, j]."""
    out = np.zeros((len(classes), D.shape[1]))
    for i, cls in enumerate(classes):
        sub = D[cls]
        out[i] = sub.max(axis=0) - sub.min(axis=0)
    return out


def bipartite_q_error(ext: ExtendedMatrix, bc: BipartiteColoring) -> float:
    """Measured max q of the coloring: worst row-sum or column-sum spread."""
    A = ext.dense()
    D_row = _class_sums(A, bc.col_classes, axis=1)  # (m+1) x col colors
    D_col = _class_sums(A, bc.row_classes, axis=0).T  # (n+1) x row colors
    err_row = _spread_matrix(D_row, bc.row_classes)
    err_col = _spread_matrix(D_col, bc.col_classes)
    return float(max(err_row.max(initial=0.0), err_col.max(initial=0.0)))


def color_lp(ext: ExtendedMatrix, params: RothkoParams, observer=None) -> BipartiteColoring:
    """Run the budgeted split loop on the extended matrix's bipartite graph.

    Row colors are split by their sums into column colors and vice versa; the
    last row/column stay pinned.  Matrix entries may be negative, so the split
    threshold is always the arithmetic mean.  max_colors bounds the total
    number of row plus column colors.
    """
    A = ext.dense()
    m1, n1 = A.shape
    row_classes = [list(range(m1 - 1)), [m1 - 1]] if m1 > 1 else [[0]]
    col_classes = [list(range(n1 - 1)), [n1 - 1]] if n1 > 1 else [[0]]
    budget = min(params.max_colors, m1 + n1)

    while True:
        D_row = _class_sums(A, col_classes, axis=1)
        D_col = _class_sums(A, row_classes, axis=0).T
        err_row = _spread_matrix(D_row, row_classes)
        err_col = _spread_matrix(D_col, col_classes)
        max_q = max(err_row.max(initial=0.0), err_col.max(initial=0.0))
        if max_q <= params.eps or len(row_classes) + len(col_classes) >= budget:
            break
        rs = np.array([len(c) for c in row_classes], dtype=float)
        cs = np.array([len(c) for c in col_classes], dtype=float)
        W_row = err_row * rs[:, None] ** params.alpha * cs[None, :] ** params.beta
        W_col = err_col * cs[:, None] ** params.alpha * rs[None, :] ** params.beta
        i, j, side = _argmax_witness(W_row, W_col)
        if side == "out":  # split row class i by its sums into column class j
            classes, D = row_classes, D_row
        else:  # split column class i by its sums from row class j
            classes, D = col_classes, D_col
        members = classes[i]
        degs = D[members, j]
        threshold = float(np.mean(degs))
        keep = degs <= threshold
        if keep.all():
            keep = degs <= degs.min()
        if keep.all() or not keep.any():
            break
        classes[i] = [v for v, kf in zip(members, keep) if kf]
        classes.append([v for v, kf in zip(members, keep) if not kf])
        if observer is not None:
            observer(len(row_classes), len(col_classes), max_q)

    return BipartiteColoring(_classes_to_colors(row_classes, m1), _classes_to_colors(col_classes, n1))


def _classes_to_colors(classes, size) -> np.ndarray:
    color_of = np.empty(size, dtype=np.int64)
    for c, cls in enumerate(classes):
        for v in cls:
            color_of[v] = c
    return color_of


def reduce_lp(ext: ExtendedMatrix, bc: BipartiteColoring, normalization: str = "sqrt") -> LinearProgram:
    """Block-sum the LP by the coloring, normalized by sqrt(|P_r| |Q_s|) or |Q_s|."""
    if normalization not in ("sqrt", "count"):
        raise ParameterError(f"unknown normalization {normalization!r}")
    A = ext.lp.dense()
    P = bc.row_classes[:-1]
    Q = bc.col_classes[:-1]
    S = np.array([[A[np.ix_(p, q)].sum() for q in Q] for p in P])
    bP = np.array([ext.lp.b[p].sum() for p in P])
    cQ = np.array([ext.lp.c[q].sum() for q in Q])
    psz = np.array([len(p) for p in P], dtype=float)
    qsz = np.array([len(q) for q in Q], dtype=float)
    if normalization == "sqrt":
        A_hat = S / np.sqrt(psz[:, None] * qsz[None, :])
        b_hat = bP / np.sqrt(psz)
        c_hat = cQ / np.sqrt(qsz)
    else:
        A_hat = S / qsz[None, :]
        b_hat = bP
        c_hat = cQ / qsz
    return LinearProgram.from_dense(A_hat, b_hat, c_hat, meta={"normalization": normalization})


def lift_matrices(bc: BipartiteColoring):
    """Indicator maps U (k x m) and V (ell x n) scaled by 1/sqrt(class size)."""
    m = len(bc.row_color_of) - 1
    n = len(bc.col_color_of) - 1
    U = np.zeros((bc.k, m))
    for r, cls in enumerate(bc.row_classes[:-1]):
        U[r, cls] = 1.0 / np.sqrt(len(cls))
    V = np.zeros((bc.ell, n))
    for s, cls in enumerate(bc.col_classes[:-1]):
        V[s, cls] = 1.0 / np.sqrt(len(cls))
    return U, V


@dataclass
class ErrorMatrices:
    D: np.ndarray  # m x ell
    E: np.ndarray  # k x n
    d1: np.ndarray  # length m
    e2: np.ndarray  # length n
    max_q: float
    bounds_ok: bool


def error_matrices(ext: ExtendedMatrix, bc: BipartiteColoring, reduced: LinearProgram,
                   tol: float = 1e-9) -> ErrorMatrices:
    """Lifting residuals and the per-entry bound check against the measured q."""
    if reduced.meta.get("normalization") != "sqrt":
        raise ParameterError("error matrices are defined for the sqrt normalization")
    A = ext.lp.dense()
    A_hat = reduced.dense()
    b_hat, c_hat = reduced.b, reduced.c
    U, V = lift_matrices(bc)
    D = A @ V.T - U.T @ A_hat
    d1 = ext.lp.b - U.T @ b_hat
    E = U @ A - A_hat @ V
    e2 = ext.lp.c - c_hat @ V
    q = bipartite_q_error(ext, bc)
    qsz = np.array([len(c) for c in bc.col_classes[:-1]], dtype=float)
    psz = np.array([len(c) for c in bc.row_classes[:-1]], dtype=float)
    ok = (
        (np.abs(D) <= q / np.sqrt(qsz)[None, :] + tol).all()
        and (np.abs(d1) <= q + tol).all()
        and (np.abs(E) <= q / np.sqrt(psz)[:, None] + tol).all()
        and (np.abs(e2) <= q + tol).all()
    )
    return ErrorMatrices(D, E, d1, e2, q, bool(ok))


__all__ = [
    "ReducedGraph",
    "reduced_graph",
    "LinearProgram",
    "ExtendedMatrix",
    "BipartiteColoring",
    "bipartite_q_error",
    "color_lp",
    "reduce_lp",
    "lift_matrices",
    "ErrorMatrices",
    "error_matrices",
    "weight_between",
]
