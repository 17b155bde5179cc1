#!/usr/bin/env python3
"""Compare the compiled kernels against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--limit N]

Times the prime sieve and the naive Lambda self-convolution on every
available backend and prints a small table.  The convolution is the real
hot spot: quadratic in the marker count.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from eulerbound import kernels


def _time(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=int, default=200_000)
    args = ap.parse_args()

    backends = kernels.available_backends()
    print(f"backends available: {[b.backend_name() for b in backends]}")
    print(f"selected at import: {kernels.BACKEND}\n")

    rows = []
    baseline = {}
    for be in backends:
        name = be.backend_name()
        t_sieve, primes = _time(be.prime_sieve, args.limit)
        idx = primes.astype(np.int64)
        val = np.log(idx.astype(np.float64))
        t_conv, g = _time(be.additive_convolve, idx, val, idx, val, args.limit + 1)
        dense = g
        t_sd, _ = _time(be.sparse_dense_convolve, idx, val, dense, args.limit + 1)
        rows.append((name, t_sieve, t_conv, t_sd))
        baseline.setdefault("sieve", t_sieve)
        baseline.setdefault("conv", t_conv)
        baseline.setdefault("sd", t_sd)

    print(f"{'backend':<10} {'sieve':>12} {'pair-conv':>12} {'sparse-dense':>14}")
    for name, ts, tc, tsd in rows:
        print(f"{name:<10} {ts * 1e3:>9.1f} ms {tc * 1e3:>9.1f} ms {tsd * 1e3:>11.1f} ms")

    if len(rows) == 2:
        print("\nspeedup (python / c):")
        print(f"  sieve        {rows[1][1] / rows[0][1]:6.1f}x")
        print(f"  pair-conv    {rows[1][2] / rows[0][2]:6.1f}x")
        print(f"  sparse-dense {rows[1][3] / rows[0][3]:6.1f}x")


if __name__ == "__main__":
    main()
