# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Mirrors _pykernels: same signatures, same inputs (permutations are generated
by the caller so both backends consume identical index streams).
"""

import numpy as np

from libc.math cimport fabs

BACKEND = "cython"


def pair_stats(double[::1] xs, double[::1] ys, double tie_eps):
    """Count (concordant, discordant, tied_x, tied_y) over all index pairs i<j."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, j
    cdef long long conc = 0, disc = 0, tied_x = 0, tied_y = 0
    cdef double dx, dy
    cdef bint tx, ty
    with nogil:
        for i in range(n - 1):
            for j in range(i + 1, n):
                dx = xs[i] - xs[j]
                dy = ys[i] - ys[j]
                tx = fabs(dx) <= tie_eps
                ty = fabs(dy) <= tie_eps
                if tx:
                    tied_x += 1
                if ty:
                    tied_y += 1
                if not tx and not ty:
                    if (dx > 0) == (dy > 0):
                        conc += 1
                    else:
                        disc += 1
    return int(conc), int(disc), int(tied_x), int(tied_y)


def hsd_max_stats(double[:, ::1] values, Py_ssize_t[:, :, ::1] perms, double[::1] out):
    """Largest pairwise gap between permuted row means, one entry per round."""
    cdef Py_ssize_t m = values.shape[0]
    cdef Py_ssize_t n_cols = values.shape[1]
    cdef Py_ssize_t n_rounds = perms.shape[0]
    cdef Py_ssize_t r, b, k
    cdef double lo, hi, mk
    acc_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] acc = acc_arr
    with nogil:
        for r in range(n_rounds):
            for k in range(m):
                acc[k] = 0.0
            for b in range(n_cols):
                for k in range(m):
                    acc[k] += values[perms[r, b, k], b]
            lo = acc[0]
            hi = acc[0]
            for k in range(1, m):
                if acc[k] < lo:
                    lo = acc[k]
                if acc[k] > hi:
                    hi = acc[k]
            out[r] = (hi - lo) / n_cols
