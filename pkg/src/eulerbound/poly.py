"""Exact polynomial and truncated power-series arithmetic.

Four carriers, all immutable and exact:

  UniPoly              integer polynomial h(X), coefficients indexed by degree
  BivariateLocalFactor Laurent polynomial W(x, y) with rational exponents and
                       rational coefficients; the semantics downstream are
                       x -> p, y -> p^(-s) for a prime p
  MultiPoly            integer polynomial in several variables (sparse dict)
  FormalSeries2        bivariate series truncated at a fixed y-order, used for
                       formal log/exp manipulation of local factors

Coefficients are Fractions (or Python ints) throughout, so every identity
asserted elsewhere in the package is a genuine polynomial identity, not a
floating-point coincidence.  The canonical term order everywhere is graded
lexicographic by (y-exponent, x-exponent).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Q = Fraction

__all__ = [
    "UniPoly",
    "BivariateLocalFactor",
    "MultiPoly",
    "FormalSeries2",
    "formal_log",
    "formal_exp",
    "substitute_prime",
    "is_prime",
]


def _as_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact number, got {type(x).__name__}")


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check, fine for desk-scale p."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Integer polynomial, coeffs[k] = coefficient of X^k, no trailing zeros."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return UniPoly(a)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    def divide_exact(self, divisor: "UniPoly"):
        """Exact division; returns the quotient or None if it does not divide."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return UniPoly([])
        rem = list(self.coeffs)
        d = list(divisor.coeffs)
        dn = len(d) - 1
        lead = d[-1]
        qn = len(rem) - 1 - dn
        if qn < 0:
            return None
        quot = [0] * (qn + 1)
        for k in range(qn, -1, -1):
            c = rem[k + dn]
            if c % lead != 0:
                return None
            q = c // lead
            quot[k] = q
            if q:
                for i, di in enumerate(d):
                    rem[k + i] -= q * di
        if any(rem):
            return None
        return UniPoly(quot)

    def eval(self, x):
        """Horner evaluation; works for int, Fraction, float, complex."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def reciprocal_companion_roots(self):
        """Roots alpha_j of the factorization h(X) = prod (1 - alpha_j X).

        These are the roots of the reversed polynomial X^d h(1/X); they are
        computed with a balanced companion matrix and polished by Newton steps.
        """
        import numpy as np

        if self.degree < 1:
            return []
        # P(a) = a^d h(1/a) has ascending coefficients reversed(self.coeffs),
        # so descending order (what np.roots wants) is self.coeffs as stored.
        roots = np.roots(np.array(self.coeffs, dtype=float))
        P = UniPoly(list(self.coeffs)[::-1])
        dP = P.derivative()
        polished = []
        for r in roots:
            z = complex(r)
            for _ in range(3):
                dv = dP.eval(z)
                if dv == 0:
                    break
                z = z - P.eval(z) / dv
            polished.append(z)
        return polished

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append((k, c))
        out = ""
        for i, (k, c) in enumerate(parts):
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                xs = "X" if k == 1 else f"X^{k}"
                term = xs if mag == 1 else f"{mag}*{xs}"
            if i == 0:
                out = term if c > 0 else f"-{term}"
            else:
                out += f" + {term}" if c > 0 else f" - {term}"
        return out


# ---------------------------------------------------------------------------
# bivariate Laurent with rational exponents
# ---------------------------------------------------------------------------


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class BivariateLocalFactor:
    """W(x, y) = sum c * x^u * y^v with rational u, v and rational c.

    ``denominator`` is the least common denominator of every exponent (so all
    of u*denominator, v*denominator are integers).  Terms with zero
    coefficient are never stored.
    """

    terms: tuple  # ((u, v, c), ...) sorted graded-lex by (v, u)
    denominator: int = field(default=1)

    def __init__(self, terms: Mapping | Iterable):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = ((k, v) for k, v in terms)
        acc: dict = {}
        for (u, v), c in items:
            u, v, c = _as_frac(u), _as_frac(v), _as_frac(c)
            if c == 0:
                continue
            key = (u, v)
            c0 = acc.get(key, Q(0)) + c
            if c0 == 0:
                acc.pop(key, None)
            else:
                acc[key] = c0
        den = 1
        for (u, v) in acc:
            den = _lcm(den, u.denominator)
            den = _lcm(den, v.denominator)
        ordered = tuple(
            (u, v, acc[(u, v)]) for (u, v) in sorted(acc, key=lambda t: (t[1], t[0]))
        )
        object.__setattr__(self, "terms", ordered)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def from_dict(cls, d: Mapping) -> "BivariateLocalFactor":
        return cls(d)

    def as_dict(self) -> dict:
        return {(u, v): c for u, v, c in self.terms}

    def is_integral(self) -> bool:
        return all(u.denominator == 1 and v.denominator == 1 for u, v, _ in self.terms)

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for _, _, c in self.terms)

    def is_laurent_free(self) -> bool:
        return all(u >= 0 and v >= 0 for u, v, _ in self.terms)

    def constant_row_is_one(self) -> bool:
        """True iff the y-degree-0 part of W is exactly the constant 1."""
        row = [(u, c) for u, v, c in self.terms if v == 0]
        return row == [(Q(0), Q(1))]

    def y_exponents(self):
        return sorted({v for _, v, _ in self.terms})

    def y_degree(self) -> Fraction:
        return max((v for _, v, _ in self.terms), default=Q(0))

    def __mul__(self, other: "BivariateLocalFactor") -> "BivariateLocalFactor":
        acc: dict = {}
        for u1, v1, c1 in self.terms:
            for u2, v2, c2 in other.terms:
                key = (u1 + u2, v1 + v2)
                acc[key] = acc.get(key, Q(0)) + c1 * c2
        return BivariateLocalFactor(acc)

    def __add__(self, other: "BivariateLocalFactor") -> "BivariateLocalFactor":
        acc = {(u, v): c for u, v, c in self.terms}
        for u, v, c in other.terms:
            acc[(u, v)] = acc.get((u, v), Q(0)) + c
        return BivariateLocalFactor(acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariateLocalFactor) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def eval(self, x, y):
        """Numeric evaluation; requires integral exponents unless x, y > 0."""
        total = 0
        for u, v, c in self.terms:
            total += float(c) * _rpow(x, u) * _rpow(y, v)
        return total

    def eval_at_prime_mp(self, p: int, w, dps: int = 40):
        """Evaluate W(p, w) for mpmath complex w at dps digits.

        Rational exponents of y must share a denominator q; the caller passes
        w as the value of y^(1/q) raised back appropriately, or simply a
        complex y when q == 1.  Here we evaluate literally with principal
        powers of positive p and of w (w ** v uses the principal branch), so
        the caller must arrange branches; for validation we always evaluate
        through integer powers of t = y^(1/q).
        """
        import mpmath as mp

        with mp.workdps(dps):
            q = self.y_common_denominator()
            t = mp.mpmathify(w)  # w is the value of y^(1/q)
            total = mp.mpc(0)
            for u, v, c in self.terms:
                j = int(v * q)
                pu = mp.power(mp.mpf(p), mp.mpf(u.numerator) / u.denominator)
                total += mp.mpf(c.numerator) / c.denominator * pu * t**j
            return total

    def y_common_denominator(self) -> int:
        den = 1
        for _, v, _ in self.terms:
            den = _lcm(den, v.denominator)
        return den

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for u, v, c in self.terms:
            body = []
            if u != 0:
                body.append(_fmt_power("x", u))
            if v != 0:
                body.append(_fmt_power("y", v))
            mag = abs(c)
            if not body:
                text = _fmt_coef(mag)
            elif mag == 1:
                text = "*".join(body)
            else:
                text = "*".join([_fmt_coef(mag)] + body)
            parts.append((c > 0, text))
        pos, text = parts[0]
        out = text if pos else f"-{text}"
        for pos, text in parts[1:]:
            out += f" + {text}" if pos else f" - {text}"
        return out


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_power(var: str, e: Fraction) -> str:
    if e == 1:
        return var
    if e.denominator == 1:
        return f"{var}^{e.numerator}" if e >= 0 else f"{var}^({e.numerator})"
    return f"{var}^({e.numerator}/{e.denominator})"


def _rpow(base, e: Fraction):
    if e == 0:
        return 1.0
    if e.denominator == 1:
        return float(base) ** e.numerator
    return float(base) ** (e.numerator / e.denominator)


# ---------------------------------------------------------------------------
# multivariate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiPoly:
    """Sparse integer polynomial in ``nvars`` variables.

    Exponent vectors are tuples of non-negative ints.  When a polynomial is
    used in the 1 + sum_k h_k(X_1..X_n) X_{n+1}^k shape, the *last* variable
    plays the role of X_{n+1}; the split is derived on demand by
    ``carrier_blocks``.
    """

    nvars: int
    terms: tuple  # ((exps, coef), ...) sorted graded-lex

    def __init__(self, nvars: int, terms: Mapping | Iterable):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length, expected {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = int(c)
            if c == 0:
                continue
            c0 = acc.get(exps, 0) + c
            if c0 == 0:
                acc.pop(exps, None)
            else:
                acc[exps] = c0
        ordered = tuple((e, acc[e]) for e in sorted(acc, key=lambda t: (sum(t), t)))
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "terms", ordered)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        for e, c in self.terms:
            if not any(e):
                return c
        return 0

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def support(self):
        return [e for e, _ in self.terms]

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return MultiPoly(self.nvars, acc)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, 0) + c1 * c2
        return MultiPoly(self.nvars, acc)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def carrier_blocks(self) -> dict:
        """Split as { k : {alpha: coef} } where k is the last-variable power.

        The constant term 1 is excluded from block 0 (the standard-form
        polynomial is 1 + sum_k h_k X_{n+1}^k).
        """
        blocks: dict = {}
        for e, c in self.terms:
            alpha, k = e[:-1], e[-1]
            if k == 0 and not any(alpha):
                continue  # the leading 1
            blocks.setdefault(k, {})[alpha] = c
        return blocks

    def univariate_shadow(self) -> UniPoly:
        """Substitute every variable by the same X (exact)."""
        acc: dict = {}
        for e, c in self.terms:
            d = sum(e)
            acc[d] = acc.get(d, 0) + c
        n = max(acc, default=0)
        return UniPoly([acc.get(k, 0) for k in range(n + 1)])

    def eval_floats(self, xs) -> complex:
        if len(xs) != self.nvars:
            raise ValueError("point dimension mismatch")
        total = 0
        for e, c in self.terms:
            t = c
            for xi, ei in zip(xs, e):
                if ei:
                    t = t * xi**ei
            total += t
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            body = [
                f"X{i+1}" if k == 1 else f"X{i+1}^{k}"
                for i, k in enumerate(e)
                if k != 0
            ]
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = "*".join(body)
            else:
                text = "*".join([str(mag)] + body)
            parts.append((c > 0, text))
        pos, text = parts[0]
        out = text if pos else f"-{text}"
        for pos, text in parts[1:]:
            out += f" + {text}" if pos else f" - {text}"
        return out


# ---------------------------------------------------------------------------
# truncated bivariate series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormalSeries2:
    """Bivariate series sum c x^u y^v with v <= order, exact coefficients."""

    order: Fraction
    terms: tuple  # ((u, v, c), ...) graded-lex by (v, u)

    def __init__(self, order, terms: Mapping | Iterable = ()):
        order = _as_frac(order)
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = ((k, v) for k, v in terms)
        acc: dict = {}
        for (u, v), c in items:
            u, v, c = _as_frac(u), _as_frac(v), _as_frac(c)
            if c == 0 or v > order:
                continue
            key = (u, v)
            c0 = acc.get(key, Q(0)) + c
            if c0 == 0:
                acc.pop(key, None)
            else:
                acc[key] = c0
        ordered = tuple(
            (u, v, acc[(u, v)]) for (u, v) in sorted(acc, key=lambda t: (t[1], t[0]))
        )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", ordered)

    @classmethod
    def from_factor(cls, w: BivariateLocalFactor, order) -> "FormalSeries2":
        return cls(order, {(u, v): c for u, v, c in w.terms})

    @classmethod
    def one(cls, order) -> "FormalSeries2":
        return cls(order, {(Q(0), Q(0)): Q(1)})

    def as_dict(self) -> dict:
        return {(u, v): c for u, v, c in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == ((Q(0), Q(0), Q(1)),)

    def truncate(self, order) -> "FormalSeries2":
        order = _as_frac(order)
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return FormalSeries2(order, self.as_dict())

    def min_v(self):
        """Least y-order of a nonzero term, or None for the zero series."""
        return self.terms[0][1] if self.terms else None

    def leading_term(self):
        """Graded-lex least (u, v, c), or None."""
        return self.terms[0] if self.terms else None

    def constant_row_is_one(self) -> bool:
        row = [(u, c) for u, v, c in self.terms if v == 0]
        return row == [(Q(0), Q(1))]

    def __add__(self, other: "FormalSeries2") -> "FormalSeries2":
        order = min(self.order, other.order)
        acc = self.as_dict()
        for u, v, c in other.terms:
            acc[(u, v)] = acc.get((u, v), Q(0)) + c
        return FormalSeries2(order, acc)

    def __neg__(self) -> "FormalSeries2":
        return FormalSeries2(self.order, {(u, v): -c for u, v, c in self.terms})

    def __sub__(self, other: "FormalSeries2") -> "FormalSeries2":
        return self + (-other)

    def __mul__(self, other: "FormalSeries2") -> "FormalSeries2":
        order = min(self.order, other.order)
        acc: dict = {}
        for u1, v1, c1 in self.terms:
            for u2, v2, c2 in other.terms:
                v = v1 + v2
                if v > order:
                    continue
                key = (u1 + u2, v)
                acc[key] = acc.get(key, Q(0)) + c1 * c2
        return FormalSeries2(order, acc)

    def scale(self, c) -> "FormalSeries2":
        c = _as_frac(c)
        return FormalSeries2(self.order, {(u, v): c * cv for u, v, cv in self.terms})

    def add_term(self, u, v, c) -> "FormalSeries2":
        acc = self.as_dict()
        key = (_as_frac(u), _as_frac(v))
        acc[key] = acc.get(key, Q(0)) + _as_frac(c)
        return FormalSeries2(self.order, acc)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormalSeries2)
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.order, self.terms))


def formal_log(f: FormalSeries2, order=None) -> FormalSeries2:
    """log f via the Mercator series, truncated at the given y-order.

    Requires the y-degree-0 part of f to be exactly 1; then g = f - 1 has
    positive minimal y-order and the series sum (-1)^(k+1) g^k / k is finite
    at any truncation.
    """
    order = f.order if order is None else _as_frac(order)
    f = f.truncate(min(order, f.order))
    if not f.constant_row_is_one():
        raise ValueError("formal_log requires constant y-row equal to 1")
    g = f - FormalSeries2.one(f.order)
    if g.is_zero():
        return FormalSeries2(f.order)
    vmin = g.min_v()
    out = FormalSeries2(f.order)
    power = FormalSeries2.one(f.order)
    k = 0
    while (k + 1) * vmin <= f.order:
        k += 1
        power = power * g
        if power.is_zero():
            break
        sign = Q(1, k) if k % 2 == 1 else Q(-1, k)
        out = out + power.scale(sign)
    return out


def formal_exp(f: FormalSeries2, order=None) -> FormalSeries2:
    """exp f truncated at the given y-order; f must have no y^0 part."""
    order = f.order if order is None else _as_frac(order)
    f = f.truncate(min(order, f.order))
    if any(v == 0 for _, v, _ in f.terms):
        raise ValueError("formal_exp requires vanishing constant y-row")
    out = FormalSeries2.one(f.order)
    if f.is_zero():
        return out
    vmin = f.min_v()
    power = FormalSeries2.one(f.order)
    k = 0
    fact = 1
    while (k + 1) * vmin <= f.order:
        k += 1
        fact *= k
        power = power * f
        if power.is_zero():
            break
        out = out + power.scale(Q(1, fact))
    return out


# ---------------------------------------------------------------------------
# prime substitution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeSubstitution:
    """W(p, y) as a polynomial in t = y^(1/q), cleared of negative powers.

    coeffs[j] is the float coefficient of t^j; a root t0 != 0 corresponds to
    y0 = t0^q and to the zero set s = -q * Log(t0) / log p of W(p, p^(-s)).
    ``shift`` records how many powers of t were multiplied in to clear
    negative exponents (roots at t = 0 introduced this way are spurious).
    """

    p: int
    q: int
    shift: int
    coeffs: tuple  # floats, index = power of t

    def degree(self) -> int:
        return len(self.coeffs) - 1


def substitute_prime(w: BivariateLocalFactor, p: int) -> PrimeSubstitution:
    """Substitute x -> p, keeping y symbolic; returns the cleared t-polynomial."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = w.y_common_denominator()
    js = [int(v * q) for _, v, _ in w.terms]
    jmin = min(js, default=0)
    shift = -jmin if jmin < 0 else 0
    jmax = max(js, default=0)
    coeffs = [0.0] * (jmax + shift + 1)
    for (u, v, c), j in zip(w.terms, js):
        coeffs[j + shift] += float(c) * _rpow(p, u)
    while len(coeffs) > 1 and coeffs[-1] == 0.0:
        coeffs.pop()
    return PrimeSubstitution(p=p, q=q, shift=shift, coeffs=tuple(coeffs))
