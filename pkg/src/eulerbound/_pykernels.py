"""NumPy fallback for the compiled kernels (same signatures as _ckernels)."""

from __future__ import annotations

import numpy as np


def backend_name() -> str:
    return "python"


def prime_sieve(limit: int) -> np.ndarray:
    """Primes <= limit as an int64 array (vectorized Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.nonzero(flags)[0].astype(np.int64)


def additive_convolve(idx_a, val_a, idx_b, val_b, size: int) -> np.ndarray:
    """Dense g with g[i + j] += va * vb over marker pairs with i + j < size.

    For a fixed i the target indices i + idx_b are distinct, so fancy-index
    accumulation is safe; the outer loop runs over the (sparse) first operand.
    """
    idx_a = np.asarray(idx_a, dtype=np.int64)
    idx_b = np.asarray(idx_b, dtype=np.int64)
    val_a = np.asarray(val_a, dtype=np.float64)
    val_b = np.asarray(val_b, dtype=np.float64)
    g = np.zeros(size, dtype=np.float64)
    for ia, wa in zip(idx_a, val_a):
        if ia >= size:
            break
        hi = np.searchsorted(idx_b, size - ia, side="left")
        if hi == 0:
            continue
        g[ia + idx_b[:hi]] += wa * val_b[:hi]
    return g


def sparse_dense_convolve(idx, val, dense, size: int) -> np.ndarray:
    """Dense g with g[i + j] += w_i * dense[j]; idx sorted ascending."""
    idx = np.asarray(idx, dtype=np.int64)
    val = np.asarray(val, dtype=np.float64)
    dense = np.asarray(dense, dtype=np.float64)
    g = np.zeros(size, dtype=np.float64)
    m = len(dense)
    for ia, wa in zip(idx, val):
        if ia >= size:
            break
        top = min(size - ia, m)
        g[ia : ia + top] += wa * dense[:top]
    return g
