# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Matern-5/2 cross-covariance kernel (OpenMP over rows)."""

import numpy as np

cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport exp, sqrt

cnp.import_array()

cdef double SQRT5 = sqrt(5.0)


def matern52_cross(X, Y, double lengthscale, double signal_variance):
    """Cross-covariance matrix k(X, Y); X is (n, L), Y is (m, L)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Xa = np.ascontiguousarray(X, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Ya = np.ascontiguousarray(Y, dtype=np.float64)
    cdef Py_ssize_t n = Xa.shape[0], m = Ya.shape[0], L = Xa.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] K = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] Xv = Xa, Yv = Ya, Kv = K
    cdef Py_ssize_t i, j, d
    cdef double sq, diff, r

    for i in prange(n, nogil=True, schedule="static"):
        for j in range(m):
            sq = 0.0
            for d in range(L):
                diff = Xv[i, d] - Yv[j, d]
                sq = sq + diff * diff
            r = sqrt(sq) / lengthscale
            Kv[i, j] = signal_variance * (1.0 + SQRT5 * r + (5.0 / 3.0) * r * r) * exp(-SQRT5 * r)
    return K


IMPLEMENTATION = "cython"
