"""Newton polyhedra, convergence domains, and the n-fold-product toric model.

The continuation domain of a multivariate Euler product is a tube

    V(h; delta) = intersection over k of { Re <alpha, s> > k + delta }
                  for alpha extreme in the support of the block h_k,

where h = 1 + sum_k h_k(X_1..X_n) X_{n+1}^k and the last variable carries the
prime itself.  Extreme points are computed exactly: a support point is kept
iff it is a vertex of the convex hull of the block support, decided by a
rational phase-1 simplex (no floating point anywhere).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .poly import MultiPoly

Q = Fraction

__all__ = [
    "ext_points",
    "point_in_hull",
    "DomainV",
    "domain_V",
    "contains",
    "ToricSpec",
    "toric_local_series",
    "toric_degree",
    "brute_count_toric",
    "euler_product_blocks",
]


# ---------------------------------------------------------------------------
# exact convex-hull vertex detection
# ---------------------------------------------------------------------------


def _phase1_feasible(A, b) -> bool:
    """Exact test for existence of t >= 0 with A t = b (Fractions throughout).

    Phase-1 simplex with Bland's rule; A is a list of rows, b a list.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        row = [Q(x) for x in A[i]]
        bi = Q(b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)
    # tableau columns: n structural + m artificial
    T = [rows[i] + [Q(1) if j == i else Q(0) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    ncols = n + m

    def reduced_costs():
        # phase-1 objective: minimize sum of artificials = sum of basic rows
        cost = [Q(0)] * (ncols + 1)
        for i, bi in enumerate(basis):
            if bi >= n:  # artificial in basis contributes its row
                for j in range(ncols + 1):
                    cost[j] += T[i][j]
        return cost

    while True:
        cost = reduced_costs()
        entering = -1
        for j in range(n):  # artificials never re-enter
            if cost[j] > 0 and j not in basis:
                entering = j
                break
        if entering < 0:
            return cost[ncols] == 0
        leaving, best = -1, None
        for i in range(m):
            if T[i][entering] > 0:
                ratio = T[i][ncols] / T[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving < 0:
            return cost[ncols] == 0  # unbounded cannot happen here, be safe
        piv = T[leaving][entering]
        T[leaving] = [x / piv for x in T[leaving]]
        for i in range(m):
            if i != leaving and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [x - f * y for x, y in zip(T[i], T[leaving])]
        basis[leaving] = entering


def point_in_hull(q, points) -> bool:
    """Exact: is q a convex combination of ``points``?"""
    pts = [tuple(Q(x) for x in p) for p in points]
    if not pts:
        return False
    d = len(pts[0])
    qv = tuple(Q(x) for x in q)
    if len(qv) != d:
        raise ValueError("dimension mismatch")
    A = [[p[i] for p in pts] for i in range(d)]
    A.append([Q(1)] * len(pts))
    b = list(qv) + [Q(1)]
    return _phase1_feasible(A, b)


def ext_points(support) -> list:
    """Vertices of the convex hull of the support, in exact arithmetic.

    A point interior to any closed segment of the polyhedron (including
    midpoints of hull edges) is a convex combination of the others and is
    dropped; what survives is exactly the vertex set.
    """
    pts = [tuple(int(x) for x in p) for p in support]
    if not pts:
        raise ValueError("empty support")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("dimension mismatch in support")
    uniq = sorted(set(pts))
    out = []
    for i, p in enumerate(uniq):
        others = uniq[:i] + uniq[i + 1 :]
        if not others or not point_in_hull(p, others):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# convergence domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DomainV:
    """Tube domain: every constraint reads Re <alpha, s> > k + delta."""

    nvars: int
    delta: Fraction
    constraints: tuple  # ((alpha, k), ...) sorted

    def to_jsonable(self) -> dict:
        return {
            "delta": _frac_str(self.delta),
            "constraints": [
                {"alpha": list(alpha), "k": k} for alpha, k in self.constraints
            ],
            "absolutely_convergent": bool(self.delta >= 1),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), separators=(",", ":"))


def _frac_str(f) -> str:
    f = Q(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def domain_V(h: MultiPoly, delta, carrier_last: bool = False) -> DomainV:
    """Constraint family of V(h; delta) from the extreme support points.

    With ``carrier_last`` the last variable is the prime carrier X_{n+1} and
    blocks are indexed by its power k; otherwise every non-constant term goes
    into the k = 0 block.
    """
    delta = Q(delta)
    if h.constant_term() != 1:
        raise ValueError("h must be in standard form 1 + ...")
    if len(h.terms) <= 1:
        raise ValueError("h must not be constant")
    if carrier_last:
        blocks = h.carrier_blocks()
        nvars = h.nvars - 1
    else:
        blocks = {0: {e: c for e, c in h.terms if any(e)}}
        nvars = h.nvars
    constraints = []
    for k, block in sorted(blocks.items()):
        for alpha in ext_points(list(block.keys())):
            constraints.append((tuple(alpha), int(k)))
    return DomainV(nvars=nvars, delta=delta, constraints=tuple(sorted(constraints)))


def contains(v: DomainV, s) -> bool:
    """Strict membership of a complex (or real) vector in the tube."""
    if len(s) != v.nvars:
        raise ValueError("dimension mismatch")
    re = [complex(x).real for x in s]
    for alpha, k in v.constraints:
        if not sum(a * x for a, x in zip(alpha, re)) > k + v.delta:
            return False
    return True


# ---------------------------------------------------------------------------
# the n-fold-product toric example
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToricSpec:
    """Integer matrix with zero row sums defining a monomial variety.

    The worked family is the single row (1, ..., 1, -n): points of the
    maximal torus are coprime positive tuples with x_1 ... x_n = x_{n+1}^n.
    """

    rows: tuple

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows:
            raise ValueError("matrix must have at least one row")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            if sum(r) != 0:
                raise ValueError(f"row {r} does not sum to zero")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def n_fold_product(cls, n: int) -> "ToricSpec":
        if n < 2:
            raise ValueError("n must be >= 2")
        return cls([tuple([1] * n + [-n])])

    @property
    def width(self) -> int:
        return len(self.rows[0])


def toric_local_series(n: int, cutoff: int) -> MultiPoly:
    """Local series of the n-fold-product model, exponents capped at cutoff.

    The coefficient of X^alpha (alpha of length n+1) is 1 exactly when the
    weight relation sum_{i<=n} alpha_i = n * alpha_{n+1} holds and some
    coordinate vanishes (the exponent tuple of a coprime local point), else 0.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    terms = {}
    for alpha in _grid(n + 1, cutoff):
        if sum(alpha[:n]) == n * alpha[n] and min(alpha) == 0:
            terms[alpha] = 1
    return MultiPoly(n + 1, terms)


def _grid(dim: int, cap: int):
    if dim == 0:
        yield ()
        return
    for head in range(cap + 1):
        for tail in _grid(dim - 1, cap):
            yield (head,) + tail


def toric_degree(n: int) -> int:
    """Degree of the height-count polynomial: C(2n-1, n) - n - 1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.comb(2 * n - 1, n) - n - 1


def brute_count_toric(n: int, t: int) -> int:
    """|{coprime positive (x_1..x_{n+1}) : prod x_i = x_{n+1}^n, max <= t}|.

    Exhaustive enumeration, vectorized over the first two coordinates for
    n = 3; the general n falls back to recursive enumeration.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if t < 1:
        raise ValueError("t must be >= 1")
    if t > 2000:
        raise ValueError("t too large for exhaustive enumeration")
    if n == 3:
        return _brute_count_3(t)
    count = 0
    for last in range(1, t + 1):
        target = last**n
        for xs in _factorizations(target, n, t):
            if math.gcd(math.gcd(*xs) if len(xs) > 1 else xs[0], last) == 1:
                count += 1
    return count


def _factorizations(target: int, slots: int, cap: int):
    """Ordered factorizations of target into ``slots`` factors, each <= cap."""
    if slots == 1:
        if target <= cap:
            yield (target,)
        return
    for d in range(1, min(cap, target) + 1):
        if target % d == 0:
            for rest in _factorizations(target // d, slots - 1, cap):
                yield (d,) + rest


def _brute_count_3(t: int) -> int:
    x1 = np.arange(1, t + 1, dtype=np.int64)
    g12 = np.gcd.outer(x1, x1)
    prod12 = np.multiply.outer(x1, x1)
    count = 0
    for x4 in range(1, t + 1):
        target = x4**3
        x3, rem = np.divmod(target, prod12)
        ok = (rem == 0) & (x3 >= 1) & (x3 <= t)
        if not ok.any():
            continue
        g = np.gcd(np.gcd(g12[ok], x3[ok].astype(np.int64)), x4)
        count += int(np.count_nonzero(g == 1))
    return count


# ---------------------------------------------------------------------------
# numeric convergence probe
# ---------------------------------------------------------------------------


def euler_product_blocks(h: MultiPoly, s, prime_bound: int, carrier_last: bool = False):
    """Partial Euler products of prod_p h(p^-s1, ..., p^-sn[, p]) per decade.

    Returns the list of |log| increments accumulated over the prime decades
    (1, 10], (10, 100], ... up to prime_bound; geometric decay of these
    increments is the numeric signature of absolute convergence.
    """
    from .kernels import prime_sieve

    primes = prime_sieve(prime_bound).astype(np.float64)
    logp = np.log(primes)
    s = [complex(x) for x in s]
    z = np.zeros(len(primes), dtype=np.complex128)
    for e, c in h.terms:
        if not any(e):
            continue
        if carrier_last:
            alpha, k = e[:-1], e[-1]
        else:
            alpha, k = e, 0
        expo = k - sum(a * si for a, si in zip(alpha, s))
        z += c * np.exp(expo * logp)
    per_prime = np.abs(np.log1p(z))
    edges = [10**j for j in range(1, 1 + math.ceil(math.log10(prime_bound)))]
    increments = []
    lo = 1
    for hi in edges:
        mask = (primes > lo) & (primes <= min(hi, prime_bound))
        increments.append(float(per_prime[mask].sum()))
        lo = hi
    return increments
