"""Cyclotomicity verdicts: is a polynomial a product of cyclotomic factors?

Univariate side: h(X) with h(0) = 1 factors as prod (1 - alpha_j X); the
Euler product prod_p h(p^-s) continues to all of C exactly when every
|alpha_j| = 1, i.e. when h is a product of (reversed) cyclotomic polynomials.
The decision is made by exact trial division against the candidate
cyclotomics and is cross-checked numerically by root magnitudes.

Multivariate side: h is cyclotomic when h = prod_j (1 - X^(m_j))^(gamma_j)
for integer exponent vectors m_j >= 0 and integers gamma_j (negative gamma
allowed as long as the product is exactly h).  This is semi-decided by a
greedy elimination on the formal logarithm, followed by an exact polynomial
reconstruction check that makes positive verdicts sound.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import BivariateLocalFactor, MultiPoly, UniPoly

Q = Fraction

__all__ = [
    "CyclotomicFactorization",
    "CyclotomicVerdict",
    "cyclotomic_factor_uni",
    "cyclotomic_factor_multi",
    "estermann_verdict",
    "cyclotomic_reversed",
    "unit_circle_distance",
]

OFF_CIRCLE_TOL = 1e-8  # |alpha| this far from 1 certifies "not cyclotomic"


# ---------------------------------------------------------------------------
# verdict containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicFactorization:
    """Either cyclotomic indices (univariate) or (m, gamma) factor pairs.

    ``indices`` is a tuple of (d, multiplicity): the input equals
    prod_d PhiRev_d(X)^multiplicity where PhiRev_d(X) = prod (1 - zeta X)
    over primitive d-th roots of unity.  ``factors`` is a tuple of
    (m, gamma) with m an exponent vector: the input equals
    prod (1 - X^m)^gamma.
    """

    indices: tuple = ()
    factors: tuple = ()

    def to_jsonable(self) -> dict:
        if self.indices:
            return {"indices": [{"d": d, "mult": m} for d, m in self.indices]}
        return {"factors": [{"m": list(m), "gamma": g} for m, g in self.factors]}


@dataclass(frozen=True)
class CyclotomicVerdict:
    is_cyclotomic: bool
    factorization: CyclotomicFactorization | None = None
    witness_root: complex | None = None
    witness_depth: int | None = None

    def to_jsonable(self) -> dict:
        if self.is_cyclotomic:
            doc = {"status": "cyclotomic"}
            doc.update(self.factorization.to_jsonable())
            return doc
        witness: dict = {}
        if self.witness_root is not None:
            witness = {
                "root": [self.witness_root.real, self.witness_root.imag],
                "abs_offset": abs(abs(self.witness_root) - 1.0),
            }
        if self.witness_depth is not None:
            witness["elimination_depth"] = self.witness_depth
        return {"status": "not_cyclotomic", "witness": witness}

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), separators=(",", ":"))


# ---------------------------------------------------------------------------
# univariate machinery
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_reversed(d: int) -> UniPoly:
    """PhiRev_d(X) = prod over primitive d-th roots zeta of (1 - zeta X).

    Computed exactly by Moebius inclusion-exclusion over (1 - X^e), e | d;
    equals the usual cyclotomic polynomial read backwards (constant term 1).
    """
    if d < 1:
        raise ValueError("index must be positive")
    divisors = [e for e in range(1, d + 1) if d % e == 0]
    num = UniPoly([1])
    dens = []
    for e in divisors:
        mu = _moebius(d // e)
        geom = [0] * (e + 1)
        geom[0], geom[e] = 1, -1  # 1 - X^e
        if mu == 1:
            num = num * UniPoly(geom)
        elif mu == -1:
            dens.append(UniPoly(geom))
    for den in dens:
        quot = num.divide_exact(den)
        assert quot is not None, "internal: cyclotomic division must be exact"
        num = quot
    return num


def _moebius(n: int) -> int:
    if n == 1:
        return 1
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def _totient(n: int) -> int:
    out = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def _candidate_indices(degree: int):
    """All d whose cyclotomic degree phi(d) could divide into ``degree``.

    phi(n) >= sqrt(n/2) gives the search bound n <= 2 phi^2.
    """
    bound = max(2, 2 * degree * degree)
    return [d for d in range(1, bound + 1) if _totient(d) <= degree]


def unit_circle_distance(h: UniPoly):
    """Max over reciprocal roots alpha of | |alpha| - 1 |, with the argmax root."""
    roots = h.reciprocal_companion_roots()
    worst, worst_root = -1.0, None
    for r in roots:
        off = abs(abs(r) - 1.0)
        if off > worst:
            worst, worst_root = off, r
    return worst, worst_root


def cyclotomic_factor_uni(h: UniPoly) -> CyclotomicVerdict:
    """Exact dichotomy for integer h with h(0) = 1, degree >= 1.

    Trial-divides by the reversed cyclotomics of every plausible index; any
    remainder other than the constant 1 means some reciprocal root lies off
    the unit circle, which is witnessed numerically.
    """
    if h.is_zero():
        raise ValueError("zero polynomial")
    if h.constant_term() != 1:
        raise ValueError("local factor must have constant term 1")
    if h.degree < 1:
        raise ValueError("degree must be at least 1")

    rem = h
    counts: dict = {}
    for d in _candidate_indices(h.degree):
        if rem.degree < 1:
            break
        phi = cyclotomic_reversed(d)
        if phi.degree > rem.degree:
            continue
        while True:
            quot = rem.divide_exact(phi)
            if quot is None:
                break
            counts[d] = counts.get(d, 0) + 1
            rem = quot
            if rem.degree < 1:
                break

    if rem.coeffs == (1,):
        indices = tuple(sorted(counts.items()))
        return CyclotomicVerdict(
            is_cyclotomic=True,
            factorization=CyclotomicFactorization(indices=indices),
        )

    off, root = unit_circle_distance(rem)
    # Kronecker: an integer polynomial whose reciprocal roots all sit on the
    # unit circle is a product of cyclotomics, so the exact remainder here
    # must have a genuinely off-circle root.
    assert off >= OFF_CIRCLE_TOL, "exact and numeric dichotomy disagree"
    return CyclotomicVerdict(is_cyclotomic=False, witness_root=root)


def reconstruct_indices(indices) -> UniPoly:
    """Expand prod PhiRev_d^mult exactly (identity check helper)."""
    out = UniPoly([1])
    for d, mult in indices:
        phi = cyclotomic_reversed(d)
        for _ in range(mult):
            out = out * phi
    return out


@dataclass(frozen=True)
class EstermannVerdict:
    continues_everywhere: bool
    cyclotomic: CyclotomicVerdict
    statement: str

    def to_jsonable(self) -> dict:
        return {
            "verdict": (
                "continues_to_whole_plane"
                if self.continues_everywhere
                else "natural_boundary_at_imaginary_axis"
            ),
            "half_plane": "meromorphic continuation always holds on Re s > 0",
            "statement": self.statement,
            "cyclotomic": self.cyclotomic.to_jsonable(),
        }


def estermann_verdict(h: UniPoly) -> EstermannVerdict:
    """Continuation dichotomy for Z(s) = prod_p h(p^-s)."""
    verdict = cyclotomic_factor_uni(h)
    if verdict.is_cyclotomic:
        statement = (
            "h is a product of cyclotomic polynomials, so the Euler product "
            "continues meromorphically to the whole complex plane"
        )
    else:
        statement = (
            "h has a reciprocal root off the unit circle; the Euler product "
            "continues to Re s > 0 and the imaginary axis is its natural boundary"
        )
    return EstermannVerdict(
        continues_everywhere=verdict.is_cyclotomic,
        cyclotomic=verdict,
        statement=statement,
    )


# ---------------------------------------------------------------------------
# multivariate machinery
# ---------------------------------------------------------------------------


def _to_multipoly(h) -> MultiPoly:
    if isinstance(h, MultiPoly):
        return h
    if isinstance(h, BivariateLocalFactor):
        if not h.is_integral() or not h.is_laurent_free():
            raise ValueError("multivariate cyclotomicity needs integer exponents")
        if not h.has_integer_coeffs():
            raise ValueError("multivariate cyclotomicity needs integer coefficients")
        return MultiPoly(2, {(int(u), int(v)): int(c) for u, v, c in h.terms})
    if isinstance(h, UniPoly):
        return MultiPoly(1, {(k,): c for k, c in enumerate(h.coeffs)})
    raise TypeError(f"unsupported carrier {type(h).__name__}")


def _weight_log(h: MultiPoly, cutoff: int) -> dict:
    """Formal log of h truncated at total weight <= cutoff.

    Returns {exponent vector: Fraction}; requires constant term 1.
    """
    g = {e: Q(c) for e, c in h.terms if any(e)}
    out: dict = {}
    power = {tuple([0] * h.nvars): Q(1)}
    k = 0
    while True:
        k += 1
        nxt: dict = {}
        for e1, c1 in power.items():
            for e2, c2 in g.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) > cutoff:
                    continue
                nxt[e] = nxt.get(e, Q(0)) + c1 * c2
        power = nxt
        if not power:
            break
        sign = Q(1, k) if k % 2 == 1 else Q(-1, k)
        for e, c in power.items():
            c0 = out.get(e, Q(0)) + sign * c
            if c0 == 0:
                out.pop(e, None)
            else:
                out[e] = c0
        if k > cutoff:  # min weight of g is >= 1, so g^k is empty past cutoff
            break
    return out


def _eliminate(logh: dict, cutoff: int):
    """Greedy graded-lex elimination of the log into factor exponents.

    Returns (factors, all_integer): factors maps exponent vector m to the
    rational gamma that cancels the residual term at m.  gamma integrality
    is required for a cyclotomic verdict but recorded as found.
    """
    residual = dict(logh)
    factors: dict = {}
    while True:
        live = [e for e, c in residual.items() if c != 0]
        if not live:
            break
        m = min(live, key=lambda e: (sum(e), e))
        c = residual[m]
        gamma = -c
        factors[m] = gamma
        k = 1
        while k * sum(m) <= cutoff:
            e = tuple(k * mi for mi in m)
            c0 = residual.get(e, Q(0)) + gamma * Q(1, k)
            if c0 == 0:
                residual.pop(e, None)
            else:
                residual[e] = c0
            k += 1
    all_integer = all(g.denominator == 1 for g in factors.values())
    return factors, all_integer


def _binomial_factor_power(nvars: int, m, gamma: int) -> MultiPoly:
    """(1 - X^m)^gamma for gamma >= 0, expanded by the binomial theorem."""
    terms = {}
    coef = 1
    for k in range(gamma + 1):
        terms[tuple(k * mi for mi in m)] = coef
        coef = coef * (k - gamma) // (k + 1)
    return MultiPoly(nvars, terms)


def reconstruction_cost(factors) -> int:
    """Total expansion degree sum |gamma| * |m|; a cheap explosion guard."""
    return sum(abs(int(g)) * sum(m) for m, g in factors)


def reconstruct_factors(nvars: int, factors) -> tuple:
    """Cross-multiplied exact identity data for prod (1 - X^m)^gamma.

    Returns (lhs, rhs) MultiPolys with lhs = prod over gamma > 0 and
    rhs = prod over gamma < 0; the factorization represents h exactly iff
    h * rhs == lhs.
    """
    lhs = MultiPoly(nvars, {tuple([0] * nvars): 1})
    rhs = MultiPoly(nvars, {tuple([0] * nvars): 1})
    for m, gamma in factors:
        power = _binomial_factor_power(nvars, m, abs(int(gamma)))
        if gamma > 0:
            lhs = lhs * power
        else:
            rhs = rhs * power
    return lhs, rhs


def cyclotomic_factor_multi(h, depth: int | None = None) -> CyclotomicVerdict:
    """Semi-decision of multivariate cyclotomicity by bounded elimination.

    A positive verdict is always backed by an exact reconstruction identity.
    A negative verdict carries either an off-circle root of the univariate
    shadow h(t, ..., t) or the elimination depth at which the factor supply
    failed to terminate.
    """
    hp = _to_multipoly(h)
    if hp.constant_term() != 1:
        raise ValueError("constant term must be 1")
    deg = hp.total_degree()
    if depth is None:
        depth = 2 * deg + 2
    if depth < 2 * deg + 2:
        raise ValueError(f"depth must be at least 2*deg+2 = {2 * deg + 2}")

    shadow = hp.univariate_shadow()
    if shadow.degree >= 1 and shadow.constant_term() == 1:
        uni = cyclotomic_factor_uni(shadow)
        if not uni.is_cyclotomic:
            # h = prod (1 - X^m)^gamma would force the shadow to be a
            # root-of-unity product, so an off-circle shadow root is a witness
            return CyclotomicVerdict(
                is_cyclotomic=False, witness_root=uni.witness_root, witness_depth=depth
            )

    logh = _weight_log(hp, depth)
    factors, all_integer = _eliminate(logh, depth)
    found = tuple(sorted(factors.items(), key=lambda t: (sum(t[0]), t[0])))
    found = tuple((m, g) for m, g in found if g != 0)

    # exponentially growing gammas (the non-terminating signature) would make
    # the exact expansion astronomically large; a genuine factorization of a
    # small polynomial stays far below this cap
    cap = max(256, 8 * depth * depth)
    if all_integer and len(found) <= depth and reconstruction_cost(found) <= cap:
        lhs, rhs = reconstruct_factors(hp.nvars, found)
        if hp * rhs == lhs:
            return CyclotomicVerdict(
                is_cyclotomic=True,
                factorization=CyclotomicFactorization(
                    factors=tuple((m, int(g)) for m, g in found)
                ),
            )
    return CyclotomicVerdict(is_cyclotomic=False, witness_depth=depth)
