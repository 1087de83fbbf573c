import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_unit_complex(n, rng):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_unit_real(n, rng):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)
