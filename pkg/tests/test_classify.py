import json
import math
from fractions import Fraction as Q

import pytest

from eulerbound.catalog import cubic_surface_local_factor, gsp6_local_factor
from eulerbound.classify import (
    beta,
    boundary_cluster,
    classify,
    ghost,
    local_zeros,
)
from eulerbound.classify import tested_primes as prime_sample
from eulerbound.kernels import prime_sieve
from eulerbound.parsing import parse_poly


def test_beta_examples():
    assert beta(gsp6_local_factor()) == 4
    assert beta(parse_poly("1 + y + x*y^2")) == Q(1, 2)
    assert beta(parse_poly("1 - x^2*y + y")) == 2


def test_beta_dominates_all_terms():
    w = gsp6_local_factor()
    b = beta(w)
    slopes = [u / v for u, v, _ in w.terms if v >= 1]
    assert all(b >= s for s in slopes) and b in slopes


def test_beta_requires_y_dependence():
    with pytest.raises(ValueError):
        beta(parse_poly("1 + x*y - x*y"))


def test_ghost_examples():
    assert ghost(gsp6_local_factor()) == parse_poly("1 + x^4*y")
    assert ghost(parse_poly("1 + y + x*y^2")) == parse_poly("1 + x*y^2")
    assert ghost(parse_poly("1 - x^2*y + y")) == parse_poly("1 - x^2*y")


def test_ghost_terms_subset_and_same_beta():
    for text in ("1 + y + x*y^2", "1 - x^2*y + y"):
        w = parse_poly(text)
        g = ghost(w)
        assert set(g.terms) <= set(w.terms) | {(Q(0), Q(0), Q(1))}
        assert beta(g) == beta(w)


# ---------------------------------------------------------------------------
# local zeros
# ---------------------------------------------------------------------------


def test_local_zeros_gsp6_p2():
    zs = local_zeros(gsp6_local_factor(), 2)
    res = sorted(z.re for z in zs.zeros)
    assert res == pytest.approx([0.14738, 4.85262], abs=2e-4)
    # the two real parts sum to -log(leading/constant)/log p = 5
    assert sum(res) == pytest.approx(5.0, abs=1e-9)
    assert all(z.residual < 1e-9 for z in zs.zeros)
    assert zs.period == pytest.approx(2 * math.pi / math.log(2))


def test_local_zeros_case5_p3():
    zs = local_zeros(parse_poly("1 - x^2*y + y"), 3)
    assert len(zs.zeros) == 1
    assert zs.zeros[0].re == pytest.approx(math.log(8) / math.log(3), abs=1e-12)
    assert zs.zeros[0].re < 2


def test_local_zeros_trivial():
    zs = local_zeros(parse_poly("1 - y"), 7)
    assert len(zs.zeros) == 1
    assert zs.zeros[0].re == pytest.approx(0.0, abs=1e-12)
    assert zs.zeros[0].im_fundamental == pytest.approx(0.0, abs=1e-12)


def test_local_zeros_count_matches_degree():
    for text, p in (("1 + x*y + x^5*y^3", 5), ("1 - x^2*y + y", 11)):
        w = parse_poly(text)
        zs = local_zeros(w, p)
        from eulerbound.poly import substitute_prime

        deg = substitute_prime(w, p).degree()
        assert sum(z.multiplicity for z in zs.zeros) == deg


def test_local_zeros_residuals_large_prime():
    # float64 alone cannot certify these; the 40-digit polish must kick in
    zs = local_zeros(gsp6_local_factor(), 10007)
    assert len(zs.zeros) == 2
    assert all(z.residual < 1e-9 for z in zs.zeros)


def test_local_zeros_window():
    zs = local_zeros(gsp6_local_factor(), 2, window=(4.0, 5.0))
    assert len(zs.zeros) == 1
    assert zs.zeros[0].re > 4


def test_local_zeros_composite_rejected():
    with pytest.raises(ValueError):
        local_zeros(gsp6_local_factor(), 10)


# ---------------------------------------------------------------------------
# the five cases
# ---------------------------------------------------------------------------


def test_case_anchors():
    assert classify(parse_poly("1 - x*y")).case_label == 1
    assert classify(parse_poly("1 + 2*x*y")).case_label == 2
    assert classify(parse_poly("1 + y + x*y^2")).case_label == 3
    assert classify(gsp6_local_factor(), depth=10).case_label == 4
    assert classify(parse_poly("1 - x^2*y + y")).case_label == 5


def test_case1_evidence_zeta_product():
    c = classify(parse_poly("1 - x*y"))
    assert c.exact
    assert c.evidence["zeta_product"] == [{"n": 1, "m": -1, "c": -1}]


def test_case2_evidence_witness():
    c = classify(parse_poly("1 + 2*x*y"))
    assert c.exact
    assert c.evidence["ghost_verdict"]["status"] == "not_cyclotomic"


def test_case3_crossing_factors():
    c = classify(parse_poly("1 + y + x*y^2"), depth=12)
    assert not c.exact
    pairs = {(f["a"], f["b"]) for f in c.evidence["crossing_factors"]}
    assert ("2", "5") in pairs  # zeta(5s-2) family member
    assert c.evidence["crossing_count_at_depth"] > c.evidence["crossing_count_at_half_depth"]


def test_case4_census_top_decade():
    c = classify(gsp6_local_factor(), depth=10, prime_bound=10000)
    assert c.evidence["top_decade_all_beyond"]
    assert c.evidence["crossing_count_at_depth"] == 0


def test_case5_no_zeros_beyond_beta_all_primes():
    w = parse_poly("1 - x^2*y + y")
    for p in prime_sieve(10**4):
        zs = local_zeros(w, int(p))
        assert zs.max_re() <= 2.0


def test_classify_deterministic_and_thread_invariant():
    w = gsp6_local_factor()
    a = classify(w, depth=8, prime_bound=1000, threads=1).to_json()
    b = classify(w, depth=8, prime_bound=1000, threads=4).to_json()
    c = classify(w, depth=8, prime_bound=1000, threads=1).to_json()
    assert a == b == c
    json.loads(a)


def test_classify_validations():
    with pytest.raises(ValueError):
        classify(cubic_surface_local_factor())  # Laurent terms refused
    with pytest.raises(ValueError):
        classify(parse_poly("1 + x^(1/4)*y"))  # fractional exponents refused


def test_prime_sample_shape():
    ps = prime_sample(10000)
    assert all(b > a for a, b in zip(ps, ps[1:]))
    top = [p for p in ps if p > 1000]
    assert len(top) >= 6
    assert ps == prime_sample(10000)  # deterministic


# ---------------------------------------------------------------------------
# boundary clustering
# ---------------------------------------------------------------------------


def test_cluster_gsp6_first_order_formula():
    rows = boundary_cluster(gsp6_local_factor(), 4.0, 0.0, [101, 1009, 10007])
    for row in rows:
        p = row["p"]
        predicted = 4 - math.log(1 - 1 / p) / math.log(p)
        assert row["found"]
        assert row["re"] > 4
        assert abs(row["re"] - predicted) < 50 / p**2
    dists = [r["distance"] for r in rows]
    assert dists == sorted(dists, reverse=True)


def test_cluster_cubic_surface_offsets():
    w = cubic_surface_local_factor()
    rows = boundary_cluster(w, 0.75, 0.0, [1009, 10007, 100003])
    offsets = []
    for row in rows:
        p = row["p"]
        predicted = 1.0 / (4 * math.sqrt(2) * p**0.25 * math.log(p))
        assert row["found"]
        assert abs(row["offset"] - predicted) <= 0.2 * predicted
        offsets.append(row["offset"])
    assert offsets == sorted(offsets, reverse=True)  # strictly decreasing


def test_cluster_lattice_distance_bound():
    # once a zero lies beyond the line, the nearest lattice point is within
    # half a lattice spacing in the imaginary direction
    w = gsp6_local_factor()
    for tau in (0.0, 1.3, -2.2):
        rows = boundary_cluster(w, 4.0, tau, [101, 997])
        for row in rows:
            p = row["p"]
            assert abs(row["im"] - tau) <= math.pi / math.log(p) * (1 + 1e-12)


def test_cluster_reports_missing():
    rows = boundary_cluster(parse_poly("1 - x^2*y + y"), 2.0, 0.0, [5, 7])
    assert all(not r["found"] for r in rows)
