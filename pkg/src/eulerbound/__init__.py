"""eulerbound: analytic-continuation diagnostics for Euler products.

Subpackages cover exact polynomial/series arithmetic, cyclotomicity verdicts,
zeta factorizations, Newton-polyhedron convergence domains, the five-case
boundary classification, numeric zeta/zero machinery, Goldbach convolution
diagnostics, and the symplectic-group explicit-formula structure.
"""

from .poly import (
    BivariateLocalFactor,
    FormalSeries2,
    MultiPoly,
    UniPoly,
    formal_exp,
    formal_log,
    substitute_prime,
)
from .parsing import ParseError, parse_poly, poly_from_json, poly_to_json

__version__ = "0.1.0"

__all__ = [
    "UniPoly",
    "BivariateLocalFactor",
    "MultiPoly",
    "FormalSeries2",
    "formal_log",
    "formal_exp",
    "substitute_prime",
    "parse_poly",
    "poly_to_json",
    "poly_from_json",
    "ParseError",
    "__version__",
]
