# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the refinement inner loops.

Semantics match _kernels_py exactly (same accumulation order), so the two
backends are interchangeable bit-for-bit.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def degree_matrix(Py_ssize_t n, Py_ssize_t k,
                  cnp.int64_t[::1] src, cnp.int64_t[::1] dst,
                  cnp.float64_t[::1] w, cnp.int64_t[::1] color):
    """D[u, color[v]] = sum of w(u, v); shape (n, k)."""
    D_arr = np.zeros((n, k), dtype=np.float64)
    cdef cnp.float64_t[:, ::1] D = D_arr
    cdef Py_ssize_t e, m = src.shape[0]
    for e in range(m):
        D[src[e], color[dst[e]]] += w[e]
    return D_arr


def group_minmax(cnp.float64_t[:, ::1] D, cnp.int64_t[::1] color, Py_ssize_t k):
    """Per-color row-wise max and min of D."""
    cdef Py_ssize_t n = D.shape[0], cols = D.shape[1]
    U_arr = np.full((k, cols), -np.inf)
    L_arr = np.full((k, cols), np.inf)
    cdef cnp.float64_t[:, ::1] U = U_arr
    cdef cnp.float64_t[:, ::1] L = L_arr
    cdef Py_ssize_t v, j
    cdef cnp.int64_t c
    cdef cnp.float64_t x
    for v in range(n):
        c = color[v]
        for j in range(cols):
            x = D[v, j]
            if x > U[c, j]:
                U[c, j] = x
            if x < L[c, j]:
                L[c, j] = x
    return U_arr, L_arr
