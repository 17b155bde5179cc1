import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerbound.poly import (
    BivariateLocalFactor,
    FormalSeries2,
    MultiPoly,
    UniPoly,
    formal_exp,
    formal_log,
    substitute_prime,
)

# ---------------------------------------------------------------------------
# UniPoly
# ---------------------------------------------------------------------------


def test_unipoly_trailing_zeros_normalized():
    assert UniPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert UniPoly([0, 0]).is_zero()
    assert UniPoly([]).degree == -1


def test_unipoly_arithmetic():
    f = UniPoly([1, 1])  # 1 + X
    g = UniPoly([1, -1])  # 1 - X
    assert (f * g).coeffs == (1, 0, -1)
    assert (f + g).coeffs == (2,)
    assert (f - f).is_zero()


def test_unipoly_exact_division():
    f = UniPoly([1, 0, -1])  # (1-X)(1+X)
    assert f.divide_exact(UniPoly([1, 1])).coeffs == (1, -1)
    assert f.divide_exact(UniPoly([1, 1, 1])) is None
    with pytest.raises(ZeroDivisionError):
        f.divide_exact(UniPoly([]))


coeff_st = st.integers(min_value=-5, max_value=5)
unipoly_st = st.lists(coeff_st, min_size=1, max_size=6).map(UniPoly)


@settings(max_examples=60, deadline=None)
@given(unipoly_st, unipoly_st, unipoly_st)
def test_unipoly_mul_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


multi_st = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-4, 4),
    max_size=5,
).map(lambda d: MultiPoly(2, d))


@settings(max_examples=60, deadline=None)
@given(multi_st, multi_st, multi_st)
def test_multipoly_mul_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


def test_multipoly_rejects_bad_exponents():
    with pytest.raises(ValueError):
        MultiPoly(2, {(1, -1): 1})
    with pytest.raises(ValueError):
        MultiPoly(2, {(1, 2, 3): 1})


def test_multipoly_carrier_blocks():
    # 1 + (X1 + X1 X2) X3
    h = MultiPoly(3, {(0, 0, 0): 1, (1, 0, 1): 1, (1, 1, 1): 1})
    blocks = h.carrier_blocks()
    assert set(blocks) == {1}
    assert set(blocks[1]) == {(1, 0), (1, 1)}


def test_multipoly_shadow():
    h = MultiPoly(2, {(0, 0): 1, (1, 1): 2})
    assert h.univariate_shadow().coeffs == (1, 0, 2)


# ---------------------------------------------------------------------------
# BivariateLocalFactor
# ---------------------------------------------------------------------------


def test_bivariate_common_denominator_and_order():
    w = BivariateLocalFactor({(Q(1, 4), Q(1)): 1, (Q(0), Q(0)): 1})
    assert w.denominator == 4
    # graded-lex by (v, u)
    assert [t[:2] for t in w.terms] == [(Q(0), Q(0)), (Q(1, 4), Q(1))]


def test_bivariate_constant_row():
    assert BivariateLocalFactor({(0, 0): 1, (1, 1): -1}).constant_row_is_one()
    assert not BivariateLocalFactor({(0, 0): 1, (1, 0): 1}).constant_row_is_one()
    assert not BivariateLocalFactor({(0, 0): 2}).constant_row_is_one()


def test_bivariate_cancellation():
    w = BivariateLocalFactor({(1, 1): 1}) + BivariateLocalFactor({(1, 1): -1})
    assert w.terms == ()


# ---------------------------------------------------------------------------
# formal series
# ---------------------------------------------------------------------------


def test_formal_log_mercator_y():
    f = FormalSeries2(3, {(0, 0): 1, (0, 1): 1})  # 1 + y
    lg = formal_log(f)
    assert lg.as_dict() == {(Q(0), Q(1)): Q(1), (Q(0), Q(2)): Q(-1, 2), (Q(0), Q(3)): Q(1, 3)}


def test_formal_log_mercator_xy():
    f = FormalSeries2(2, {(0, 0): 1, (1, 1): -1})  # 1 - x y
    lg = formal_log(f)
    assert lg.as_dict() == {(Q(1), Q(1)): Q(-1), (Q(2), Q(2)): Q(-1, 2)}


def test_formal_log_requires_unit_row():
    with pytest.raises(ValueError):
        formal_log(FormalSeries2(2, {(0, 0): 1, (1, 0): 1, (1, 1): 1}))


def _random_series(rnd, order):
    terms = {(Q(0), Q(0)): Q(1)}
    for _ in range(rnd.randint(1, 6)):
        u = Q(rnd.randint(0, 4))
        v = Q(rnd.randint(1, order))
        c = Q(rnd.randint(-3, 3))
        if c:
            terms[(u, v)] = c
    return FormalSeries2(order, terms)


def test_exp_log_round_trip_100_random():
    rnd = random.Random(1729)
    for _ in range(100):
        f = _random_series(rnd, 5)
        assert formal_exp(formal_log(f)) == f


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 4)),
        st.integers(-3, 3),
        max_size=6,
    ),
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 4)),
        st.integers(-3, 3),
        max_size=6,
    ),
)
def test_truncation_consistency(da, db):
    # truncate(f*g, N) == truncate(truncate(f,N) * truncate(g,N), N)
    f8 = FormalSeries2(8, da)
    g8 = FormalSeries2(8, db)
    n = 4
    lhs = (f8 * g8).truncate(n)
    rhs = f8.truncate(n) * g8.truncate(n)
    assert lhs == rhs


# ---------------------------------------------------------------------------
# substitute_prime
# ---------------------------------------------------------------------------


def test_substitute_gsp6_at_2():
    w = BivariateLocalFactor(
        {(0, 0): 1, (1, 1): 1, (2, 1): 1, (3, 1): 1, (4, 1): 1, (5, 2): 1}
    )
    sub = substitute_prime(w, 2)
    assert sub.coeffs == (1.0, 30.0, 32.0)
    assert sub.q == 1 and sub.shift == 0


def test_substitute_no_x_dependence():
    w = BivariateLocalFactor({(0, 0): 1, (0, 1): -1})
    for p in (2, 97):
        assert substitute_prime(w, p).coeffs == (1.0, -1.0)


def test_substitute_mixed():
    w = BivariateLocalFactor({(0, 0): 1, (2, 1): -1, (0, 1): 1})  # 1 - x^2 y + y
    assert substitute_prime(w, 3).coeffs == (1.0, -8.0)


def test_substitute_rejects_composite():
    w = BivariateLocalFactor({(0, 0): 1, (0, 1): -1})
    with pytest.raises(ValueError):
        substitute_prime(w, 6)


def test_substitute_laurent_shift():
    # y^-1 + 1 + y: cleared by one power of t
    w = BivariateLocalFactor({(0, -1): 1, (0, 0): 1, (0, 1): 1})
    sub = substitute_prime(w, 5)
    assert sub.shift == 1
    assert sub.coeffs == (1.0, 1.0, 1.0)
