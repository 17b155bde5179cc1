import numpy as np
import pytest

from eulerbound.analytic import load_zeros
from eulerbound.goldbach import convolve_gr, lambda_table

GOLDBACH_LIMIT = 200_000


@pytest.fixture(scope="session")
def zeros_table():
    return load_zeros()


@pytest.fixture(scope="session")
def lam_200k():
    return lambda_table(GOLDBACH_LIMIT)


@pytest.fixture(scope="session")
def g2_fast(lam_200k):
    return convolve_gr(lam_200k, 2, method="fast")


@pytest.fixture(scope="session")
def g2_naive(lam_200k):
    return convolve_gr(lam_200k, 2, method="naive")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)
