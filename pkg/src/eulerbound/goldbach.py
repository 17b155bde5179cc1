"""Goldbach generating-function numerics.

G_r(n) = sum over ordered r-tuples of prime powers k_1 + ... + k_r = n of
Lambda(k_1) ... Lambda(k_r); its summatory function grows like x^r / r! with
an oscillation carried by the nontrivial zeta zeros,

    H_r(x) = -r * sum_rho x^(r-1+rho) / (rho (rho+1) ... (rho+r-1)),

and the residual diagnostics sample how much of S(x) - x^2/2 the first K
zero pairs explain.  The von Mangoldt table is exact at the marker level
(prime-power positions and base primes); floats only enter when weights are
summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import ZetaZerosTable
from .kernels import additive_convolve, prime_sieve, sparse_dense_convolve

__all__ = [
    "VonMangoldtTable",
    "lambda_table",
    "GoldbachSeries",
    "convolve_gr",
    "summatory",
    "summatory_hyperbola",
    "oscillating_Hr",
    "phi2_eval",
    "residual_report",
    "max_relative_deviation",
]

LAMBDA_CAP = 50_000_000  # sieve memory guard
_FFT_MIN = 16


@dataclass(frozen=True)
class VonMangoldtTable:
    """Exact markers of Lambda: positions n = p^k with their base prime."""

    limit: int
    positions: np.ndarray  # prime powers <= limit, ascending int64
    base_primes: np.ndarray  # p for each position
    exponents: np.ndarray  # k for each position

    def weights(self) -> np.ndarray:
        """Lambda at the marker positions (log of the base prime)."""
        return np.log(self.base_primes.astype(np.float64))

    def dense(self) -> np.ndarray:
        """lam[n] = Lambda(n) for 0 <= n <= limit."""
        lam = np.zeros(self.limit + 1, dtype=np.float64)
        lam[self.positions] = self.weights()
        return lam

    def psi(self, x: float) -> float:
        """Chebyshev psi(x) = sum_{n <= x} Lambda(n) from the exact markers."""
        hi = np.searchsorted(self.positions, math.floor(x), side="right")
        return float(self.weights()[:hi].sum())


def lambda_table(limit: int) -> VonMangoldtTable:
    """Sieve the prime-power markers up to ``limit``."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if limit > LAMBDA_CAP:
        raise ValueError(f"limit above the documented cap {LAMBDA_CAP}")
    primes = prime_sieve(limit)
    positions = [primes]
    bases = [primes]
    exps = [np.ones(len(primes), dtype=np.int64)]
    k = 2
    while (1 << k) <= limit:
        pk = primes[primes <= int(limit ** (1.0 / k)) + 1]
        powers = pk.astype(object) ** k  # exact ints, then filter
        keep = np.array([int(v) <= limit for v in powers])
        pk = pk[keep]
        if len(pk):
            positions.append((pk.astype(np.int64)) ** k)
            bases.append(pk)
            exps.append(np.full(len(pk), k, dtype=np.int64))
        k += 1
    pos = np.concatenate(positions)
    base = np.concatenate(bases)
    ks = np.concatenate(exps)
    order = np.argsort(pos, kind="stable")
    return VonMangoldtTable(
        limit=limit, positions=pos[order], base_primes=base[order], exponents=ks[order]
    )


# ---------------------------------------------------------------------------
# convolution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GoldbachSeries:
    r: int
    limit: int
    values: np.ndarray  # values[n] = G_r(n), 0 <= n <= limit
    method: str

    def summatory_values(self) -> np.ndarray:
        return np.cumsum(self.values)


def convolve_gr(table: VonMangoldtTable, r: int, method: str = "fast") -> GoldbachSeries:
    """r-fold additive self-convolution of Lambda up to table.limit.

    fast: real FFT with zero padding (spectrum raised to the r-th power);
    naive: exact pair/marker accumulation, quadratic but order-stable.
    Inputs shorter than 16 fall back to naive regardless.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    if method not in ("fast", "naive"):
        raise ValueError(f"unknown method {method!r}")
    n = table.limit
    if method == "fast" and n < _FFT_MIN:
        method = "naive"

    if method == "naive":
        idx = table.positions.astype(np.int64)
        val = table.weights()
        acc = additive_convolve(idx, val, idx, val, n + 1)
        for _ in range(r - 2):
            acc = sparse_dense_convolve(idx, val, acc, n + 1)
        return GoldbachSeries(r=r, limit=n, values=acc, method="naive")

    size = 1
    while size < r * (n + 1):
        size <<= 1
    lam = np.zeros(size, dtype=np.float64)
    lam[table.positions] = table.weights()
    spec = np.fft.rfft(lam)
    out = np.fft.irfft(spec**r, size)[: n + 1]
    # any true nonzero entry is at least (log 2)^r; below that is FFT noise
    out[np.abs(out) < 1e-6] = 0.0
    out[: 2 * r] = 0.0  # smallest representable index is 2r
    return GoldbachSeries(r=r, limit=n, values=out, method="fast")


def max_relative_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """Sup-norm deviation relative to the sup norm of the reference.

    This is the right notion for convolution error: FFT noise is absolute at
    machine-epsilon-times-scale, so entrywise ratios at near-zero entries
    would be meaningless.
    """
    ref = float(np.max(np.abs(a)))
    if ref == 0.0:
        return float(np.max(np.abs(b)))
    return float(np.max(np.abs(a - b))) / ref


def summatory(series: GoldbachSeries, x: float) -> float:
    """S(x) = sum_{n <= x} G_r(n)."""
    if x > series.limit:
        raise ValueError(f"x = {x} beyond the prepared limit {series.limit}")
    hi = int(math.floor(x))
    return float(series.values[: hi + 1].sum())


def summatory_hyperbola(table: VonMangoldtTable, x: float) -> float:
    """Independent route for r = 2: S(x) = sum_a Lambda(a) psi(x - a)."""
    if x > table.limit:
        raise ValueError("x beyond the table limit")
    x = math.floor(x)
    lam = table.dense()
    psi = np.cumsum(lam)
    idx = table.positions[table.positions <= x - 2]
    w = np.log(table.base_primes[: len(idx)].astype(np.float64))
    return float(np.sum(w * psi[x - idx]))


# ---------------------------------------------------------------------------
# oscillating term and Dirichlet series
# ---------------------------------------------------------------------------


def oscillating_Hr(x: float, r: int, zeros: ZetaZerosTable, count: int) -> float:
    """H_r(x) summed over the first ``count`` conjugate zero pairs.

    RH normalization rho = 1/2 + i gamma is hard-wired; each pair contributes
    twice the real part, so the result is exactly real.
    """
    if count > len(zeros):
        raise ValueError("not enough zeros in the table")
    if count == 0:
        return 0.0
    if x < 2:
        raise ValueError("x must be >= 2")
    g = np.array(zeros.gammas[:count], dtype=np.float64)
    rho = 0.5 + 1j * g
    denom = np.ones_like(rho)
    for j in range(r):
        denom *= rho + j
    lead = x ** (r - 1 + 0.5) * np.exp(1j * g * math.log(x))
    total = 2.0 * np.sum((lead / denom).real)
    return -r * float(total)


def phi2_eval(s: complex, table_or_series, limit: int | None = None):
    """Phi_2(s) = sum_{n <= N} G_2(n) n^-s with a certified tail estimate.

    Accepts a GoldbachSeries (r = 2) or a VonMangoldtTable (the series is
    built on the fly).  Requires Re s > 2.  Returns (value, tail_bound); the
    bound majorizes G_2(n) <= 1.04 n log n beyond the truncation.
    """
    s = complex(s)
    if s.real <= 2:
        raise ValueError("Phi_2 evaluation requires Re s > 2")
    if isinstance(table_or_series, GoldbachSeries):
        series = table_or_series
        if series.r != 2:
            raise ValueError("phi2_eval needs the r = 2 series")
    else:
        series = convolve_gr(table_or_series, 2, method="fast")
    n_top = series.limit if limit is None else min(limit, series.limit)
    if n_top < 4:
        raise ValueError("need N >= 4")
    ns = np.arange(4, n_top + 1, dtype=np.float64)
    value = complex(np.sum(series.values[4 : n_top + 1] * np.exp(-s * np.log(ns))))
    sigma = s.real
    # tail: 1.04 * (f(N) + int_N^inf x^(1-sigma) log x dx), f decreasing
    fN = n_top ** (1.0 - sigma) * math.log(n_top)
    integral = n_top ** (2.0 - sigma) * (
        math.log(n_top) / (sigma - 2.0) + 1.0 / (sigma - 2.0) ** 2
    )
    tail = 1.04 * (fN + integral)
    return value, tail


def phi2_double_sum(s: complex, table: VonMangoldtTable, limit: int) -> complex:
    """Direct pair enumeration of Phi_2 over k1 + k2 <= limit (oracle route)."""
    s = complex(s)
    idx = table.positions[table.positions <= limit - 2]
    w = np.log(table.base_primes[: len(idx)].astype(np.float64))
    total = 0j
    for k1, w1 in zip(idx, w):
        keep = idx <= limit - k1
        sums = (k1 + idx[keep]).astype(np.float64)
        total += w1 * np.sum(w[: keep.sum()] * np.exp(-s * np.log(sums)))
    return complex(total)


# ---------------------------------------------------------------------------
# residual diagnostics
# ---------------------------------------------------------------------------


def residual_report(xs, series: GoldbachSeries, zeros: ZetaZerosTable, count: int):
    """Rows (x, S, S - x^2/2, S - x^2/2 - H_2, (x log x)^(4/3), x log^5 x).

    No pass/fail judgment here; thresholds belong to the caller.
    """
    if series.r != 2:
        raise ValueError("residual diagnostics are for r = 2")
    rows = []
    for x in xs:
        s_val = summatory(series, x)
        main = x * x / 2.0
        h2 = oscillating_Hr(x, 2, zeros, count) if count else 0.0
        lx = math.log(x)
        rows.append(
            {
                "x": float(x),
                "S": s_val,
                "S_minus_main": s_val - main,
                "S_minus_main_minus_H2": s_val - main - h2,
                "fujii_bound": (x * lx) ** (4.0 / 3.0),
                "log5_bound": x * lx**5,
            }
        )
    return rows
