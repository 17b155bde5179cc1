import math
import random

import numpy as np
import pytest

from eulerbound.analytic import (
    bundled_zeros_path,
    convergence_abscissa,
    euler_product_eval,
    independence_margin,
    load_zeros,
    zeta_eval,
    zeta_via_eta,
)
from eulerbound.kernels import prime_sieve
from eulerbound.parsing import parse_poly


def test_zeta_classical_values():
    assert abs(zeta_eval(2) - math.pi**2 / 6) < 1e-10
    assert abs(zeta_eval(0) - (-0.5)) < 1e-10
    assert abs(zeta_eval(-1) - (-1 / 12)) < 1e-10
    assert abs(zeta_eval(4) - math.pi**4 / 90) < 1e-10


def test_zeta_pole_raises():
    with pytest.raises(ZeroDivisionError):
        zeta_eval(1)
    with pytest.raises(ValueError):
        zeta_eval(complex(2, 2e5))


def test_zeta_vanishes_at_first_zero():
    assert abs(zeta_eval(complex(0.5, 14.134725141734694))) < 1e-5


def test_zeta_eta_cross_oracle():
    """Independent alternating-series route agrees in the critical strip."""
    rnd = random.Random(314159)
    checked = 0
    while checked < 100:
        s = complex(rnd.uniform(0.05, 1.95), rnd.uniform(-50, 50))
        if abs(1 - 2 ** (1 - s)) < 0.2:  # eta route ill-conditioned there
            continue
        assert abs(zeta_eval(s) - zeta_via_eta(s)) < 1e-8
        checked += 1


def test_load_zeros_fixture(zeros_table):
    assert len(zeros_table) == 100
    assert abs(zeros_table.first() - 14.134725) < 1e-5
    assert zeros_table.precision >= 9
    assert zeros_table.source == bundled_zeros_path()


def test_load_zeros_env_default(monkeypatch, tmp_path):
    monkeypatch.setenv("BF_ZEROS", bundled_zeros_path())
    assert len(load_zeros()) == 100


def test_load_zeros_empty_file(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    with pytest.raises(ValueError, match="no zeros"):
        load_zeros(str(f))


def test_load_zeros_unsorted_reports_line(tmp_path):
    lines = open(bundled_zeros_path()).read().splitlines()
    lines[2], lines[3] = lines[3], lines[2]
    f = tmp_path / "swapped.txt"
    f.write_text("\n".join(lines) + "\n")
    with pytest.raises(ValueError, match="swapped.txt:4"):
        load_zeros(str(f))


def test_load_zeros_bad_value_reports_line(tmp_path):
    lines = open(bundled_zeros_path()).read().splitlines()
    lines[9] = "150.000000000"  # not a zero ordinate; ascending kept broken-free
    f = tmp_path / "bad.txt"
    f.write_text("\n".join(lines[:9] + [lines[9]]) + "\n")
    with pytest.raises(ValueError, match="bad.txt:10"):
        load_zeros(str(f))


def test_load_zeros_wrong_anchor(tmp_path):
    f = tmp_path / "anchor.txt"
    f.write_text("21.022039638772\n")
    with pytest.raises(ValueError, match="anchor"):
        load_zeros(str(f))


# ---------------------------------------------------------------------------
# independence margins
# ---------------------------------------------------------------------------


def test_independence_small_k_enumeration_oracle(zeros_table):
    """Implementation equals the quartic brute force on small K."""
    for K in (2, 3, 5):
        margin, bound, quad = independence_margin(zeros_table, K, 1.5)
        g = zeros_table.gammas[:K]
        best = math.inf
        for a in g:
            for b in g:
                for c in g:
                    for d in g:
                        if {a, b} == {c, d} or sorted((a, b)) == sorted((c, d)):
                            continue
                        best = min(best, abs(a + b - c - d))
        assert margin == pytest.approx(best, rel=1e-12)
        assert bound == pytest.approx(math.exp(-1.5 * sum(abs(x) for x in quad)))


def test_independence_k2_margin_is_gap(zeros_table):
    # {g1,g1} vs {g1,g2} realizes |g1 - g2|, the least possible at K = 2
    margin, _, _ = independence_margin(zeros_table, 2, 1.5)
    g = zeros_table.gammas
    assert margin == pytest.approx(g[1] - g[0], rel=1e-12)


def test_independence_k30(zeros_table):
    margin, bound, quad = independence_margin(zeros_table, 30, 1.5)
    assert margin > 0
    assert margin / bound > 1e10


def test_independence_validations(zeros_table):
    with pytest.raises(ValueError):
        independence_margin(zeros_table, 101, 1.5)
    with pytest.raises(ValueError):
        independence_margin(zeros_table, 10, 2.0)


# ---------------------------------------------------------------------------
# Euler products
# ---------------------------------------------------------------------------


def test_euler_product_inverse_zeta2():
    w = parse_poly("1 - y")
    value, tail = euler_product_eval(w, 2.0, 10**6)
    assert abs(value - 6 / math.pi**2) < 1e-6
    assert tail < 1e-5


def test_euler_product_gsp6_tail():
    from eulerbound.catalog import gsp6_local_factor

    w = gsp6_local_factor()
    assert convergence_abscissa(w) == 5
    value, tail = euler_product_eval(w, 6.0, 10**5)
    assert np.isfinite(abs(value))
    assert tail < 1e-4


def test_euler_product_factor_identity():
    """D(4) = zeta(2)^-1 * prod (1 + p^-s / (1 - p^(2-s))) at s = 4."""
    w = parse_poly("1 - x^2*y + y")
    s = 4.0
    value, _ = euler_product_eval(w, s, 10**7)
    primes = prime_sieve(10**7).astype(np.float64)
    dstar = np.prod(1 + primes**-s / (1 - primes ** (2 - s)))
    rhs = float(dstar) / zeta_eval(2).real
    assert abs(value.real - rhs) < 1e-8 * abs(rhs)
    assert abs(value.imag) < 1e-12


def test_euler_product_precondition():
    w = parse_poly("1 - y")
    with pytest.raises(ValueError):
        euler_product_eval(w, 0.9, 1000)
    with pytest.raises(ValueError):
        euler_product_eval(parse_poly("1 + x + x*y"), 5.0, 1000)


def test_euler_product_bitwise_deterministic():
    w = parse_poly("1 - x*y + y^2")
    a = euler_product_eval(w, 3.5, 50_000)
    b = euler_product_eval(w, 3.5, 50_000)
    assert a == b


def test_euler_product_tail_sound():
    """Doubling the prime cutoff moves the value by less than the bound."""
    for text, s in (("1 - y", 2.0), ("1 - x*y + y^2", 3.5)):
        w = parse_poly(text)
        v1, t1 = euler_product_eval(w, s, 50_000)
        v2, _ = euler_product_eval(w, s, 100_000)
        assert abs(v2 - v1) <= t1 * abs(v1)
