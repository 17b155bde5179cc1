"""Named local factors that recur across the test suite and the CLI.

``lookup`` lets CLI users write --poly gsp6 instead of spelling the
polynomial out.
"""

from __future__ import annotations

from fractions import Fraction

from .parsing import parse_poly
from .poly import BivariateLocalFactor

Q = Fraction


def gsp6_local_factor() -> BivariateLocalFactor:
    """Local Euler factor of the degree-6 symplectic similitude group zeta.

    In the x -> p, y -> p^(-s) convention: 1 + xy + x^2 y + x^3 y + x^4 y
    + x^5 y^2.  Boundary abscissa 4, ghost 1 + x^4 y.
    """
    return parse_poly("1 + x*y + x^2*y + x^3*y + x^4*y + x^5*y^2")


def cubic_surface_local_factor() -> BivariateLocalFactor:
    """Local factor controlling zero clustering for a singular cubic surface.

    The natural variables are a = p^(-1/4) and b = p^(3/4 - s); a monomial
    a^i b^j becomes x^((3j - i)/4) y^j in the x -> p, y -> p^(-s) convention
    used here.  Exponents of x are quarter-integers and y appears with
    negative powers, which is why the carrier is a Laurent polynomial with a
    stored common denominator.  Zeros of interest sit just right of
    Re s = 3/4.
    """
    native = {
        (0, 0): 1,
        (4, 0): 1,
        (8, 0): -1,
        (6, -2): 1,
        (5, -1): 1,
        (9, -1): -1,
        (7, 1): -1,
        (2, 2): 1,
        (1, 3): 1,
        (5, 3): -1,
        (9, 3): -1,
        (0, 4): 1,
        (4, 4): -1,
        (3, 5): -1,
    }
    terms = {}
    for (i, j), c in native.items():
        terms[(Q(3 * j - i, 4), Q(j))] = c
    return BivariateLocalFactor(terms)


_NAMED = {
    "gsp6": gsp6_local_factor,
    "cubic-surface": cubic_surface_local_factor,
    "case1": lambda: parse_poly("1 - x*y"),
    "case2": lambda: parse_poly("1 + 2*x*y"),
    "case3": lambda: parse_poly("1 + y + x*y^2"),
    "case5": lambda: parse_poly("1 - x^2*y + y"),
}


def names() -> list:
    return sorted(_NAMED)


def lookup(name: str):
    try:
        return _NAMED[name]()
    except KeyError:
        raise KeyError(f"unknown named polynomial {name!r}; known: {', '.join(names())}")
