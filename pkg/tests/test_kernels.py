import numpy as np
import pytest

from eulerbound import kernels


def all_backends():
    return kernels.available_backends()


@pytest.mark.parametrize("be", all_backends(), ids=lambda b: b.backend_name())
def test_sieve_small(be):
    assert be.prime_sieve(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert be.prime_sieve(1).tolist() == []
    assert be.prime_sieve(2).tolist() == [2]


def test_sieve_backends_agree():
    bes = all_backends()
    ref = bes[0].prime_sieve(100_000)
    for be in bes[1:]:
        assert np.array_equal(ref, be.prime_sieve(100_000))
    assert len(ref) == 9592  # pi(1e5)


def test_convolve_backends_agree():
    bes = all_backends()
    rng = np.random.default_rng(7)
    idx = np.unique(rng.integers(2, 3000, size=400)).astype(np.int64)
    val = rng.uniform(0.1, 2.0, size=len(idx))
    outs = [be.additive_convolve(idx, val, idx, val, 3001) for be in bes]
    for other in outs[1:]:
        assert np.allclose(outs[0], other, rtol=1e-13, atol=1e-13)
    dense = outs[0]
    outs2 = [be.sparse_dense_convolve(idx, val, dense, 3001) for be in bes]
    for other in outs2[1:]:
        assert np.allclose(outs2[0], other, rtol=1e-13, atol=1e-13)


def test_convolve_matches_direct_quadratic():
    be = kernels
    idx = np.array([2, 3, 5], dtype=np.int64)
    val = np.array([1.0, 2.0, 4.0])
    out = be.additive_convolve(idx, val, idx, val, 11)
    want = np.zeros(11)
    for i, vi in zip(idx, val):
        for j, vj in zip(idx, val):
            if i + j < 11:
                want[i + j] += vi * vj
    assert np.allclose(out, want)


def test_convolve_deterministic():
    idx = np.arange(2, 500, 3, dtype=np.int64)
    val = np.log(idx.astype(float))
    a = kernels.additive_convolve(idx, val, idx, val, 1000)
    b = kernels.additive_convolve(idx, val, idx, val, 1000)
    assert np.array_equal(a, b)


def test_backend_reporting():
    names = [b.backend_name() for b in all_backends()]
    assert kernels.BACKEND in names
    assert "python" in names  # fallback always importable
