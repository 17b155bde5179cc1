"""Factor Euler products into Riemann zeta pieces times a tame remainder.

Bivariate: given W(x, y) with W(x, 0) = 1, greedy elimination of the formal
log produces the unique expansion

    W = prod (1 - x^a y^b)^(e_{a,b})         (graded-lex order in (b, a))

truncated at a chosen y-order.  Each integral factor corresponds to
zeta(b s - a)^(-e); what is left over after depth N is absolutely convergent
further right, which is the whole point of the decomposition.

Multivariate: the same elimination by total weight produces factors
(1 - X^m)^gamma(m) up to a cutoff, together with a flag telling whether the
supply of factors terminated (exact reconstruction) or keeps growing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import reconstruct_factors
from .poly import BivariateLocalFactor, FormalSeries2, MultiPoly, formal_log

Q = Fraction

__all__ = [
    "ZetaFactorization",
    "MultiZetaFactorization",
    "factorize_bivariate",
    "factorize_multivariate",
    "zeta_form",
    "reconstruct",
    "reconstruct_multi",
]


@dataclass(frozen=True)
class ZetaFactorization:
    """Truncated factor list for W: ((a, b, e), ...) meaning (1-x^a y^b)^e."""

    source: BivariateLocalFactor
    order: Fraction
    factors: tuple  # sorted graded-lex by (b, a); e are nonzero ints

    def zeta_view(self):
        return zeta_form(self)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 and b.denominator == 1 for a, b, _ in self.factors)

    def to_jsonable(self) -> dict:
        doc = {
            "order": _frac_str(self.order),
            "factors": [
                {"a": _frac_str(a), "b": _frac_str(b), "e": e} for a, b, e in self.factors
            ],
        }
        doc["zeta"] = (
            [{"n": n, "m": m, "c": c} for n, m, c in zeta_form(self)]
            if self.is_integral()
            else None
        )
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), separators=(",", ":"))


def _frac_str(f) -> str:
    f = Q(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def factorize_bivariate(w: BivariateLocalFactor, order) -> ZetaFactorization:
    """Greedy zeta factorization of W to the given y-order.

    Every eliminated leading term contributes one factor; exponents are
    certified integers (guaranteed for integer-coefficient W).  The factor
    list is stable under increasing the order: deeper runs only append.
    """
    order = Q(order)
    if order < 1:
        raise ValueError("order must be >= 1")
    if not w.constant_row_is_one():
        raise ValueError("W(x, 0) must be exactly 1")
    series = FormalSeries2.from_factor(w, order)
    residual = dict(formal_log(series).as_dict())
    factors = []
    while True:
        live = [k for k, c in residual.items() if c != 0]
        if not live:
            break
        a, b = min(live, key=lambda t: (t[1], t[0]))
        c = residual[(a, b)]
        e = -c
        if e.denominator != 1:
            raise ArithmeticError(
                f"non-integer elimination exponent {e} at (a, b) = ({a}, {b}); "
                "input coefficients must be integers"
            )
        if b == 0:
            raise ArithmeticError("factor with b = 0 cannot occur when W(x,0)=1")
        factors.append((a, b, int(e)))
        # subtract e * log(1 - x^a y^b) = add e * sum_k x^(ka) y^(kb) / k
        k = 1
        while k * b <= order:
            key = (k * a, k * b)
            c0 = residual.get(key, Q(0)) + e * Q(1, k)
            if c0 == 0:
                residual.pop(key, None)
            else:
                residual[key] = c0
            k += 1
    factors.sort(key=lambda t: (t[1], t[0]))
    return ZetaFactorization(source=w, order=order, factors=tuple(factors))


def zeta_form(f: ZetaFactorization):
    """Map factors (a, b, e) to zeta(n s + m)^c entries (n, m, c) = (b, -a, -e).

    Only defined for integral exponent pairs; rational (a, b) factors (the
    quarter-integer cubic-surface style) stay in the factor basis.
    """
    out = []
    for a, b, e in f.factors:
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError(
                f"factor (a, b) = ({a}, {b}) is not integral; no zeta view exists"
            )
        out.append((int(b), -int(a), -e))
    return out


def reconstruct(f: ZetaFactorization, order=None) -> FormalSeries2:
    """Expand the factor product back into a series; equals the source to order."""
    order = f.order if order is None else Q(order)
    if order > f.order:
        raise ValueError("cannot reconstruct beyond the stored order")
    out = FormalSeries2.one(order)
    for a, b, e in f.factors:
        base = _factor_series(a, b, e, order)
        out = out * base
    return out


def _factor_series(a, b, e: int, order) -> FormalSeries2:
    """(1 - x^a y^b)^e as a series, by the binomial theorem in t = x^a y^b.

    Closed-form coefficients keep the cost linear in the truncation order even
    when |e| is huge (elimination exponents can grow combinatorially).
    """
    terms = {}
    coef = 1
    k = 0
    while k * b <= order:
        terms[(k * a, k * b)] = Q(coef)
        # next binomial coefficient of (1-t)^e: C(e, k+1) (-1)^(k+1) for
        # e >= 0 (terminates), C(-e+k, k+1) for e < 0
        coef = coef * (k - e) // (k + 1)
        k += 1
        if e >= 0 and k > e:
            break
    return FormalSeries2(order, terms)


# ---------------------------------------------------------------------------
# multivariate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiZetaFactorization:
    """Factors (m, gamma) of a multivariate Euler local polynomial.

    ``terminating`` is True when the factor list reconstructs the source
    exactly (the set {m : gamma(m) != 0} is finite); otherwise gammas are
    truncated at weight ``cutoff`` and the supply keeps growing.
    """

    source: MultiPoly
    r: int
    cutoff: int
    factors: tuple  # ((m, gamma), ...) sorted by (weight, m)
    terminating: bool

    def to_jsonable(self) -> dict:
        # gamma is the factor exponent in prod (1 - X^m)^gamma; the zeta-view
        # exponent of zeta(<m, s>) is its negative
        return {
            "r": self.r,
            "cutoff": self.cutoff,
            "terminating": self.terminating,
            "factors": [
                {"m": list(m), "gamma": g, "zeta_gamma": -g} for m, g in self.factors
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), separators=(",", ":"))


def default_cutoff(h: MultiPoly, r: int) -> int:
    """Smallest weight keeping every omitted factor absolutely convergent in
    the delta = 1/r domain: weight r * deg covers combination depth r."""
    return max(r * max(h.total_degree(), 1), 2 * h.total_degree() + 2)


def factorize_multivariate(
    h: MultiPoly, r: int = 1, cutoff: int | None = None
) -> MultiZetaFactorization:
    """Weight-graded elimination of log h into (1 - X^m)^gamma factors."""
    from .cyclotomic import _eliminate, _weight_log, reconstruction_cost

    if h.constant_term() != 1:
        raise ValueError("constant term must be 1")
    if r < 1:
        raise ValueError("depth parameter r must be >= 1")
    if cutoff is None:
        cutoff = default_cutoff(h, r)
    logh = _weight_log(h, cutoff)
    factors, all_integer = _eliminate(logh, cutoff)
    if not all_integer:
        raise ArithmeticError("non-integer gamma encountered for integer input")
    found = tuple(
        (m, int(g))
        for m, g in sorted(factors.items(), key=lambda t: (sum(t[0]), t[0]))
        if g != 0
    )
    # only attempt the exact termination certificate when the expansion is
    # sane; runaway gammas already witness a growing factor supply
    if reconstruction_cost(found) <= max(256, 8 * cutoff * cutoff):
        lhs, rhs = reconstruct_factors(h.nvars, found)
        terminating = h * rhs == lhs
    else:
        terminating = False
    return MultiZetaFactorization(
        source=h, r=r, cutoff=cutoff, factors=found, terminating=terminating
    )


def reconstruct_multi(f: MultiZetaFactorization, weight: int | None = None) -> MultiPoly:
    """Truncated expansion of prod (1 - X^m)^gamma to the given total weight."""
    weight = f.cutoff if weight is None else weight
    if weight > f.cutoff:
        raise ValueError("cannot reconstruct beyond the stored cutoff")
    n = f.source.nvars
    unit = {tuple([0] * n): Q(1)}
    acc = dict(unit)

    def mul_trunc(a: dict, b: dict) -> dict:
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if sum(e) > weight:
                    continue
                out[e] = out.get(e, Q(0)) + c1 * c2
        return {e: c for e, c in out.items() if c != 0}

    for m, gamma in f.factors:
        # truncated binomial expansion of (1 - X^m)^gamma, any sign of gamma
        expansion = {}
        coef = 1
        k = 0
        while k * sum(m) <= weight:
            expansion[tuple(k * mi for mi in m)] = Q(coef)
            coef = coef * (k - gamma) // (k + 1)
            k += 1
            if gamma >= 0 and k > gamma:
                break
        acc = mul_trunc(acc, expansion)
    assert all(c.denominator == 1 for c in acc.values())
    return MultiPoly(n, {e: int(c) for e, c in acc.items()})
