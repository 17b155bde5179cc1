"""Numeric layer: zeta evaluation, zero tables, Euler products.

zeta_eval is a self-contained Euler-Maclaurin evaluator (adaptive cutoff,
exact Bernoulli corrections).  An independent alternating-series route
(eta_eval, Cohen-Rodriguez Villegas-Zagier acceleration) cross-checks it in
the critical strip.  Tables of nontrivial-zero ordinates are ingested from
plain text and self-certified on load by |zeta(1/2 + i gamma)| < 1e-5.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from .poly import BivariateLocalFactor

Q = Fraction

__all__ = [
    "zeta_eval",
    "eta_eval",
    "zeta_via_eta",
    "ZetaZerosTable",
    "load_zeros",
    "bundled_zeros_path",
    "independence_margin",
    "euler_product_eval",
    "convergence_abscissa",
]

ZERO_RESIDUAL_TOL = 1e-5
FIRST_ZERO_ANCHOR = 14.1347
_MAX_IM = 1e5


def _bernoulli_even(count: int):
    """B_2, B_4, ..., B_{2*count} as exact Fractions (Akiyama-Tanigawa style
    recurrence on the defining identity)."""
    n = 2 * count + 1
    B = [Q(0)] * n
    B[0] = Q(1)
    for m in range(1, n):
        acc = Q(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * B[j]
        B[m] = -acc / (m + 1)
    return [B[2 * k] for k in range(1, count + 1)]


_EM_TERMS = 16
_BERN = _bernoulli_even(_EM_TERMS + 2)


def zeta_eval(s: complex) -> complex:
    """Riemann zeta by Euler-Maclaurin summation.

    Accuracy: relative error around 1e-10 for |Im s| <= 100 and 1e-6 up to
    1e4; |Im s| above 1e5 is refused.  The pole at s = 1 raises.
    """
    s = complex(s)
    if s == 1:
        raise ZeroDivisionError("zeta has a pole at s = 1")
    t = abs(s.imag)
    if t > _MAX_IM:
        raise ValueError("|Im s| too large for the Euler-Maclaurin evaluator")
    n_cut = max(24, int(0.6 * t) + 20)
    for _ in range(3):
        value, err = _zeta_em(s, n_cut)
        if err <= 1e-12 * max(1.0, abs(value)):
            break
        n_cut *= 2
    return value


def _zeta_em(s: complex, n_cut: int):
    ns = np.arange(1, n_cut, dtype=np.float64)
    main = np.exp(-s * np.log(ns)).sum()
    lnN = math.log(n_cut)
    n_pow = np.exp(-s * lnN)  # N^-s
    total = main + n_pow * n_cut / (s - 1) + 0.5 * n_pow
    # correction terms B_2k / (2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    rising = 1.0 + 0j
    power = n_pow * n_cut  # N^(-s+1)
    fact = 1
    last = np.inf
    inv_n2 = 1.0 / (n_cut * n_cut)
    err = np.inf
    for k in range(1, _EM_TERMS + 1):
        rising *= s + (2 * k - 2)
        if k > 1:
            rising *= s + (2 * k - 3)
        fact *= (2 * k) * (2 * k - 1) if k > 1 else 2
        power *= inv_n2  # now N^(-s+1-2k)
        term = float(_BERN[k - 1]) / fact * rising * power
        total += term
        err = abs(term)
        if err > last:  # divergent tail reached; bail out
            break
        last = err
    return total, err


def eta_eval(s: complex, terms: int = 160) -> complex:
    """Dirichlet eta by CVZ alternating-series acceleration (independent of
    zeta_eval; used as a cross-oracle in the critical strip)."""
    s = complex(s)
    n = terms
    d = (3 + math.sqrt(8.0)) ** n
    d = (d + 1 / d) / 2
    b = -1.0
    c = -d
    acc = 0j
    for k in range(n):
        c = b - c
        acc += c * np.exp(-s * math.log(k + 1))
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1))
    return acc / d


def zeta_via_eta(s: complex) -> complex:
    """zeta from eta; ill-conditioned where 1 - 2^(1-s) is near zero."""
    s = complex(s)
    denom = 1 - 2 ** (1 - s)
    if abs(denom) < 1e-6:
        raise ZeroDivisionError("eta route degenerate: 1 - 2^(1-s) ~ 0")
    return eta_eval(s) / denom


# ---------------------------------------------------------------------------
# zero tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZetaZerosTable:
    """Validated ascending ordinates of nontrivial zeros (RH normalization)."""

    gammas: tuple
    source: str
    precision: int  # decimal places carried by the source file

    def __len__(self) -> int:
        return len(self.gammas)

    def first(self) -> float:
        return self.gammas[0]


def bundled_zeros_path() -> str:
    """Path of the in-repo fixture with the first 100 zero ordinates."""
    return str(resources.files("eulerbound").joinpath("data/zeros100.txt"))


def load_zeros(path: str | None = None) -> ZetaZerosTable:
    """Read, order-check, and self-certify a zeros file.

    Every line holds one positive ordinate in plain decimal, ascending. Any
    failure reports its 1-based line number.  Certification re-evaluates
    |zeta(1/2 + i gamma)| with the local evaluator.
    """
    if path is None:
        path = os.environ.get("BF_ZEROS") or bundled_zeros_path()
    gammas = []
    precision = 0
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                g = float(line)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not a decimal number: {line!r}")
            if g <= 0:
                raise ValueError(f"{path}:{lineno}: ordinates must be positive")
            if gammas and g <= gammas[-1][1]:
                raise ValueError(f"{path}:{lineno}: ordinates not strictly ascending")
            if "." in line:
                precision = max(precision, len(line.split(".", 1)[1]))
            gammas.append((lineno, g))
    if not gammas:
        raise ValueError(f"{path}: no zeros found")
    if abs(gammas[0][1] - FIRST_ZERO_ANCHOR) > 1e-3:
        raise ValueError(
            f"{path}:{gammas[0][0]}: first ordinate {gammas[0][1]} is not the "
            f"anchor {FIRST_ZERO_ANCHOR}"
        )
    for lineno, g in gammas:
        resid = abs(zeta_eval(complex(0.5, g)))
        if resid >= ZERO_RESIDUAL_TOL:
            raise ValueError(
                f"{path}:{lineno}: |zeta(1/2 + {g}i)| = {resid:.3e} fails the "
                f"{ZERO_RESIDUAL_TOL} certification"
            )
    return ZetaZerosTable(
        gammas=tuple(g for _, g in gammas), source=str(path), precision=precision
    )


# ---------------------------------------------------------------------------
# zero-independence diagnostic
# ---------------------------------------------------------------------------


def independence_margin(table: ZetaZerosTable, count: int, alpha: float):
    """Smallest |(g1+g2) - (g3+g4)| over distinct pair multisets from the
    first ``count`` ordinates, against the conjectural floor
    exp(-alpha * sum |g_i|).

    Returns (min_margin, bound, quadruple).  O(K^2 log K): pair sums are
    sorted and adjacent differences scanned.
    """
    if count > len(table):
        raise ValueError(f"table holds only {len(table)} zeros")
    if count < 2:
        raise ValueError("need at least two zeros")
    if not 0 < alpha < math.pi / 2:
        raise ValueError("alpha must lie in (0, pi/2)")
    g = table.gammas[:count]
    pairs = [(g[i] + g[j], (g[i], g[j])) for i in range(count) for j in range(i, count)]
    pairs.sort()
    best = None
    for (s1, q1), (s2, q2) in zip(pairs, pairs[1:]):
        if q1 == q2:
            continue
        margin = s2 - s1
        if best is None or margin < best[0]:
            best = (margin, q1 + q2)
    margin, quad = best
    bound = math.exp(-alpha * sum(abs(x) for x in quad))
    return margin, bound, quad


# ---------------------------------------------------------------------------
# numeric Euler products
# ---------------------------------------------------------------------------


def convergence_abscissa(w: BivariateLocalFactor) -> Fraction:
    """sigma_a = max (u+1)/v over terms with v >= 1: to the right of this the
    prime sum of every monomial converges absolutely."""
    vals = [(u + 1) / v for u, v, _ in w.terms if v >= 1]
    if not vals:
        raise ValueError("W has no y-dependence")
    return max(vals)


def euler_product_eval(w: BivariateLocalFactor, s: complex, prime_bound: int):
    """prod_{p <= P} W(p, p^-s) with a certified relative tail bound.

    Requires Re s > sigma_a(W), W(x, 0) = 1, and y-exponents >= 0.  Factors
    are multiplied in ascending-p order, so results are bit-stable.
    """
    from .kernels import prime_sieve

    if not w.constant_row_is_one():
        raise ValueError("W(x, 0) must be exactly 1")
    if any(v < 0 for _, v, _ in w.terms):
        raise ValueError("negative y-exponents have no convergent product")
    s = complex(s)
    sigma = convergence_abscissa(w)
    if not s.real > float(sigma):
        raise ValueError(f"Re s = {s.real} is not beyond sigma_a = {sigma}")

    primes = prime_sieve(prime_bound).astype(np.float64)
    logp = np.log(primes)
    vals = np.zeros(len(primes), dtype=np.complex128)
    for u, v, c in w.terms:
        vals += float(c) * np.exp((float(u) - s * float(v)) * logp)
    value = complex(1.0)
    for z in vals:  # ascending p, sequential: deterministic
        value *= z

    tail = 0.0
    z_next = 0.0
    for u, v, c in w.terms:
        if v == 0:
            continue
        e = float(v) * s.real - float(u)
        tail += abs(float(c)) * prime_bound ** (1.0 - e) / (e - 1.0)
        z_next += abs(float(c)) * prime_bound ** (-e)
    if z_next >= 0.5:
        raise ValueError("prime bound too small for a tail certificate")
    tail_bound = math.expm1(tail / (1.0 - z_next))
    return value, tail_bound
