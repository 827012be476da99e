"""Pure-numpy fallback for the refinement hot loops.

Must stay bit-identical to the compiled versions in _speedups.pyx: both
accumulate edge weights in edge-array order, and max/min are order-independent.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def degree_matrix(n, k, src, dst, w, color):
    """D[u, color[v]] = sum of w(u, v); shape (n, k)."""
    D = np.zeros((n, k), dtype=np.float64)
    if len(src):
        np.add.at(D, (src, color[dst]), w)
    return D


def group_minmax(D, color, k):
    """Per-color row-wise max and min of D: U[c, j] = max over v with color[v]=c."""
    n = D.shape[0]
    U = np.full((k, D.shape[1]), -np.inf)
    L = np.full((k, D.shape[1]), np.inf)
    order = np.argsort(color, kind="stable")
    sorted_colors = color[order]
    starts = np.searchsorted(sorted_colors, np.arange(k), side="left")
    ends = np.searchsorted(sorted_colors, np.arange(k), side="right")
    Ds = D[order]
    for c in range(k):
        lo, hi = starts[c], ends[c]
        if lo < hi:
            U[c] = Ds[lo:hi].max(axis=0)
            L[c] = Ds[lo:hi].min(axis=0)
    return U, L
