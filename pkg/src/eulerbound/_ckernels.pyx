# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: prime sieve and additive convolutions.

Mirrors the signatures in _pykernels; eulerbound.kernels picks whichever
import succeeds.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def backend_name():
    return "c"


def prime_sieve(long limit):
    """Primes <= limit as an int64 array (classic Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] flags = np.ones(limit + 1, dtype=np.uint8)
    cdef unsigned char[::1] f = flags
    cdef long i, j
    f[0] = 0
    f[1] = 0
    i = 2
    while i * i <= limit:
        if f[i]:
            j = i * i
            while j <= limit:
                f[j] = 0
                j += i
        i += 1
    return np.nonzero(flags)[0].astype(np.int64)


def additive_convolve(cnp.int64_t[::1] idx_a, double[::1] val_a,
                      cnp.int64_t[::1] idx_b, double[::1] val_b,
                      long size):
    """Dense g with g[i + j] += va * vb over all marker pairs, i + j < size.

    Both index arrays must be sorted ascending.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(size, dtype=np.float64)
    cdef double[::1] g = out
    cdef Py_ssize_t na = idx_a.shape[0]
    cdef Py_ssize_t nb = idx_b.shape[0]
    cdef Py_ssize_t i, j
    cdef long ia
    cdef double wa
    for i in range(na):
        ia = idx_a[i]
        if ia >= size:
            break
        wa = val_a[i]
        for j in range(nb):
            if ia + idx_b[j] >= size:
                break
            g[ia + idx_b[j]] += wa * val_b[j]
    return out


def sparse_dense_convolve(cnp.int64_t[::1] idx, double[::1] val,
                          double[::1] dense, long size):
    """Dense g with g[i + j] += w_i * dense[j]; idx sorted ascending."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(size, dtype=np.float64)
    cdef double[::1] g = out
    cdef Py_ssize_t n = idx.shape[0]
    cdef Py_ssize_t m = dense.shape[0]
    cdef Py_ssize_t i, j, top
    cdef long ia
    cdef double wa
    for i in range(n):
        ia = idx[i]
        if ia >= size:
            break
        wa = val[i]
        top = size - ia
        if top > m:
            top = m
        for j in range(top):
            g[ia + j] += wa * dense[j]
    return out
