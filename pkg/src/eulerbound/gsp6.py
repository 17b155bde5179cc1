"""Dirichlet coefficients and smoothed sums for the symplectic-similitude
zeta function of degree six.

The generating function in the cube-support normalization is

    Z(w) = sum_n a_n n^-w
         = prod_p (1 + p t + p^2 t + p^3 t + p^4 t + p^5 t^2)
                  / ((1 - t)(1 - p^3 t)(1 - p^5 t)(1 - p^6 t)),   t = p^-3w,

so a_n is multiplicative, supported on cubes, with a_{p^{3k}} the exact
integer t^k coefficient of the local series.  The smoothed summatory
A(x) = sum a_n e^{-n/x} grows like x^{7/3}; its pole/zero term structure is
derived mechanically from the explicit zeta factors and the depth-2 zeta
factorization of the polynomial part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .catalog import gsp6_local_factor
from .kernels import prime_sieve
from .zetafact import factorize_bivariate, zeta_form

Q = Fraction

__all__ = [
    "GSp6Coefficients",
    "gsp6_coeffs",
    "gsp6_smoothed",
    "gsp6_term_structure",
    "gsp6_dirichlet_sum",
    "gsp6_euler_product",
]

# k-shifts of the explicit zeta factors zeta(3w - k) in front of the local
# polynomial part (the defining data of the model)
EXPLICIT_ZETA_SHIFTS = (0, 3, 5, 6)
REGION_RE_W = Q(4, 3)


@dataclass(frozen=True)
class GSp6Coefficients:
    """Sparse coefficient table: entries only at perfect cubes."""

    limit: int
    cubes: np.ndarray  # n = m^3 <= limit, ascending
    values: tuple  # exact ints, aligned with cubes

    def coeff(self, n: int) -> int:
        """a_n for any n <= limit (zero off the cube support)."""
        if n < 1 or n > self.limit:
            raise ValueError("index out of range")
        m = round(n ** (1 / 3))
        for mm in (m - 1, m, m + 1):
            if mm >= 1 and mm**3 == n:
                return self.values[mm - 1]
        return 0

    def as_dense_pairs(self):
        return zip(self.cubes.tolist(), self.values)


@lru_cache(maxsize=None)
def _local_series(p: int, order: int) -> tuple:
    """Exact t-expansion of the local factor at p up to t^order."""
    poly = [1, p + p**2 + p**3 + p**4, p**5]  # 1 + (p+..+p^4) t + p^5 t^2
    coeffs = poly[: order + 1] + [0] * max(0, order + 1 - len(poly))
    for shift in (0, 3, 5, 6):
        geom = p**shift
        # multiply by (1 - p^shift t)^(-1): prefix-accumulate with ratio geom
        out = [0] * (order + 1)
        acc_ratio = [geom**j for j in range(order + 1)]
        for j in range(order + 1):
            out[j] = sum(coeffs[i] * acc_ratio[j - i] for i in range(j + 1))
        coeffs = out
    return tuple(coeffs)


def _smallest_prime_factors(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in prime_sieve(limit):
        sel = np.arange(p, limit + 1, p)
        first = spf[sel] == 0
        spf[sel[first]] = p
    return spf


def gsp6_coeffs(limit: int) -> GSp6Coefficients:
    """All a_n for n <= limit, built multiplicatively from the local series."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    m_top = int(round(limit ** (1 / 3)))
    while (m_top + 1) ** 3 <= limit:
        m_top += 1
    while m_top**3 > limit:
        m_top -= 1
    spf = _smallest_prime_factors(max(m_top, 1))
    values = [1] * m_top
    for m in range(2, m_top + 1):
        a = 1
        mm = m
        while mm > 1:
            p = int(spf[mm])
            k = 0
            while mm % p == 0:
                mm //= p
                k += 1
            a *= _local_series(p, k)[k]
        values[m - 1] = a
    cubes = (np.arange(1, m_top + 1, dtype=np.int64)) ** 3
    return GSp6Coefficients(limit=limit, cubes=cubes, values=tuple(values))


# ---------------------------------------------------------------------------
# smoothed summatory
# ---------------------------------------------------------------------------


def gsp6_smoothed(x: float, coeffs: GSp6Coefficients):
    """A(x) = sum a_n e^{-n/x} with a reported tail majorant.

    Requires the coefficient table to reach 30 x, so the truncated tail is at
    the e^{-30} scale; refuses otherwise.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    n_top = coeffs.limit
    if n_top < 30 * x:
        raise ValueError(
            f"coefficient table reaches {n_top} < 30 x = {30 * x:.0f}; "
            "no tail certificate"
        )
    ns = coeffs.cubes.astype(np.float64)
    vals = np.array(coeffs.values, dtype=np.float64)
    value = float(np.sum(vals * np.exp(-ns / x)))
    # a_n <= C n^2 d(n)-style; 4x the observed ratio majorizes the next block
    ratio = float(np.max(vals / ns**2))
    c_maj = 4.0 * ratio
    tail = c_maj * math.exp(-n_top / x) * (
        n_top**2 + x * (n_top**2 + 2 * n_top * x + 2 * x * x)
    )
    return value, tail


def gsp6_dirichlet_sum(s: complex, coeffs: GSp6Coefficients):
    """sum_{n <= limit} a_n n^-s with an Abel-summation tail bound."""
    s = complex(s)
    if s.real <= Q(7, 3):
        raise ValueError("needs Re s > 7/3 for absolute convergence")
    ns = coeffs.cubes.astype(np.float64)
    vals = np.array(coeffs.values, dtype=np.float64)
    value = complex(np.sum(vals * np.exp(-s * np.log(ns))))
    summ = float(np.cumsum(vals)[-1])
    c7 = 2.0 * summ / coeffs.limit ** (7.0 / 3.0)
    sig = s.real
    tail = c7 * coeffs.limit ** (7.0 / 3.0 - sig) * (1.0 + sig / (sig - 7.0 / 3.0))
    return value, tail


def gsp6_euler_product(w: complex, prime_bound: int) -> complex:
    """prod_{p <= P} local(p, p^{-3w}) including the geometric denominators."""
    w = complex(w)
    total = 1.0 + 0j
    for p in prime_sieve(prime_bound):
        p = float(p)
        t = p ** (-3.0 * w)
        num = 1 + (p + p**2 + p**3 + p**4) * t + p**5 * t * t
        den = (1 - t) * (1 - p**3 * t) * (1 - p**5 * t) * (1 - p**6 * t)
        total *= num / den
    return total


# ---------------------------------------------------------------------------
# explicit-formula term structure
# ---------------------------------------------------------------------------


def gsp6_term_structure() -> dict:
    """Pole exponents and the zero-family map in the region Re w > 4/3.

    Mechanical derivation: each explicit factor zeta(3w - k) contributes a
    candidate pole at w = (k+1)/3; the depth-2 zeta factorization of the
    local polynomial contributes first-order poles at w = (a+1)/3 and, where
    a factor zeta(2s - a) appears with negative exponent, a family of poles
    at the zeta zeros, w = (rho + a)/6.  Only candidates right of 4/3
    survive.
    """
    poles = []
    for k in EXPLICIT_ZETA_SHIFTS:
        cand = Q(k + 1, 3)
        if cand > REGION_RE_W:
            poles.append({"exponent": cand, "from": f"zeta(3w-{k})"})

    fact = factorize_bivariate(gsp6_local_factor(), 2)
    families = []
    for n, m, c in zeta_form(fact):
        # zeta(n s + m)^c with s = 3w: zeta(3n w + m)^c
        if n == 1 and c > 0:
            cand = Q(1 - m, 3)
            if cand > REGION_RE_W:
                poles.append({"exponent": cand, "from": f"zeta(3w-{-m})"})
        if c < 0:
            # zeros rho of zeta give poles at w = (rho - m) / (3n)
            line = Q(1, 2 * 3 * n) + Q(-m, 3 * n)
            if line > REGION_RE_W:
                families.append(
                    {
                        "numerator_shift": -m,
                        "denominator": 3 * n,
                        "map": f"rho -> (rho + {-m})/{3 * n}",
                        "line_re": line,
                    }
                )

    exponents = sorted({p["exponent"] for p in poles}, reverse=True)
    return {
        "region": "Re w > 4/3",
        "pole_exponents": exponents,
        "poles": sorted(poles, key=lambda d: d["exponent"], reverse=True),
        "zero_families": families,
    }
