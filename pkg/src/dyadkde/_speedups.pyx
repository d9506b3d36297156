# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: kernel evaluation over all dyads and the O(N^2)
row-sum reduction behind the node-level variance component."""

import numpy as np

from libc.math cimport exp, sqrt, fabs, M_PI


def kernel_values(const double[::1] weights, double w, double h, int kind):
    """Evaluate (1/h)K((w - W_ij)/h) over a flat dyad array.

    kind 0 is the standard normal kernel, kind 1 the Epanechnikov kernel.
    """
    cdef Py_ssize_t n = weights.shape[0]
    cdef Py_ssize_t m
    cdef double u
    cdef double inv_h = 1.0 / h
    cdef double norm = 1.0 / (h * sqrt(2.0 * M_PI))
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        if kind == 0:
            for m in range(n):
                u = (w - weights[m]) * inv_h
                o[m] = norm * exp(-0.5 * u * u)
        else:
            for m in range(n):
                u = (w - weights[m]) * inv_h
                if fabs(u) <= 1.0:
                    o[m] = 0.75 * (1.0 - u * u) * inv_h
                else:
                    o[m] = 0.0
    return out


def row_moments(const double[::1] kvals, Py_ssize_t n_nodes, double center):
    """Return sum_i (R_i^2 - Q_i) for centered kernel values.

    With C_ij = kvals_ij - center over the upper triangle in row-major
    (i<j) order, R_i = sum_{j != i} C_ij and Q_i = sum_{j != i} C_ij^2.
    """
    cdef Py_ssize_t i, j, m
    cdef double c
    r_arr = np.zeros(n_nodes, dtype=np.float64)
    q_arr = np.zeros(n_nodes, dtype=np.float64)
    cdef double[::1] r = r_arr
    cdef double[::1] q = q_arr
    cdef double total = 0.0
    with nogil:
        m = 0
        for i in range(n_nodes):
            for j in range(i + 1, n_nodes):
                c = kvals[m] - center
                r[i] += c
                r[j] += c
                q[i] += c * c
                q[j] += c * c
                m += 1
        for i in range(n_nodes):
            total += r[i] * r[i] - q[i]
    return total
