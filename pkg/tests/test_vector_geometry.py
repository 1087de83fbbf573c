import itertools
import math

import numpy as np
import pytest

from rmtlab.realify import hat, unhat
from rmtlab.vector_geometry import (
    Classification,
    DecompParams,
    SpreadParams,
    classify,
    default_spread_params,
    dist_to_sparse,
    spread_set,
    support_size,
)
from tests.conftest import random_unit_complex


def flat_vector(n):
    return np.full(n, (1 + 1j) / math.sqrt(2 * n))


def e1(n):
    v = np.zeros(n, dtype=complex)
    v[0] = 1.0
    return v


class TestSupportSize:
    def test_basis_vector(self):
        assert support_size(e1(3), zero_tol=0.0) == 1

    def test_complex_entry_counts_both_parts(self):
        assert support_size(np.array([1 + 1j, 0, 0])) == 2

    def test_zero_vector(self):
        assert support_size(np.zeros(4, dtype=complex)) == 0

    def test_rejects_negative_tol(self):
        with pytest.raises(ValueError):
            support_size(e1(2), zero_tol=-1.0)


class TestDistToSparse:
    def test_sparse_vector_has_zero_distance(self):
        assert dist_to_sparse(e1(4), 0.25) == 0.0

    def test_flat_vector_value(self):
        # n=4, delta=0.25: keep 2 of 8 realified entries of size 1/sqrt(8)
        d = dist_to_sparse(flat_vector(4), 0.25)
        assert d == pytest.approx(math.sqrt(6.0 / 8.0), rel=1e-12)

    def test_basis_vector_any_delta(self):
        assert dist_to_sparse(e1(5), 0.1) == 0.0

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            dist_to_sparse(2.0 * e1(4), 0.25)

    def test_matches_brute_force_over_supports(self):
        # exact distance = min over all size-m support sets of the residual norm
        rng = np.random.default_rng(11)
        for n in (2, 3, 4, 5, 6):
            v = random_unit_complex(n, rng)
            for delta in (0.1, 0.25, 0.4):
                m = int(math.floor(2 * delta * n))
                x = hat(v)
                if m == 0:
                    best = np.linalg.norm(x)
                else:
                    best = min(
                        np.linalg.norm(x[list(set(range(2 * n)) - set(S))])
                        for S in itertools.combinations(range(2 * n), m)
                    )
                assert dist_to_sparse(v, delta) == pytest.approx(best, rel=1e-12)


class TestClassify:
    def test_basis_vector_is_sparse(self):
        out = classify(e1(4), DecompParams(0.25, 0.3))
        assert out.label is Classification.SPARSE
        assert out.is_compressible
        assert out.dist_to_sparse == 0.0

    def test_flat_vector_is_incompressible(self):
        out = classify(flat_vector(4), DecompParams(0.25, 0.3))
        assert out.label is Classification.INCOMPRESSIBLE
        assert out.dist_to_sparse > 0.3

    def test_perturbed_basis_vector_is_compressible(self):
        n = 8
        tail = np.full(2 * n, 1.0)
        tail[0] = 0.0
        tail = 0.2 * tail / np.linalg.norm(tail)
        x = hat(e1(n)) * math.sqrt(1 - 0.04) + tail
        v = unhat(x / np.linalg.norm(x))
        out = classify(v, DecompParams(0.1, 0.3))
        assert out.label is Classification.COMPRESSIBLE

    def test_tie_distance_counts_as_compressible(self):
        # hat(v) = (sqrt(1-rho^2), rho, 0, 0): distance exactly rho for keep=1
        rho = 0.3
        v = unhat(np.array([math.sqrt(1 - rho**2), rho, 0.0, 0.0]))
        out = classify(v, DecompParams(delta=0.25, rho=rho))
        assert out.dist_to_sparse == pytest.approx(rho, abs=1e-15)
        assert out.label is Classification.COMPRESSIBLE

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            classify(1.5 * flat_vector(4))


class TestSpreadSet:
    def test_flat_vector_all_indices(self):
        n = 8
        out = spread_set(flat_vector(n), SpreadParams(nu1=1.0, nu2=0.5, nu3=2.0))
        assert out.size == 2 * n
        assert out.large_enough

    def test_basis_vector_empty_for_large_n(self):
        out = spread_set(e1(6), SpreadParams(nu1=0.5, nu2=0.5, nu3=2.0))
        assert out.size == 0
        assert not out.large_enough

    def test_membership_monotone_in_band(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            v = random_unit_complex(8, rng)
            small = spread_set(v, SpreadParams(nu1=0.1, nu2=0.6, nu3=1.5))
            big = spread_set(v, SpreadParams(nu1=0.1, nu2=0.4, nu3=2.5))
            assert set(small.indices).issubset(set(big.indices))

    def test_incompressible_samples_have_large_spread(self):
        # defaults derived from (delta, rho); flag should hold for sampled vectors
        decomp = DecompParams(0.1, 0.3)
        spread = default_spread_params(decomp)
        rng = np.random.default_rng(13)
        checked = 0
        for _ in range(1000):
            v = random_unit_complex(16, rng)
            if classify(v, decomp).label is Classification.INCOMPRESSIBLE:
                checked += 1
                assert spread_set(v, spread).large_enough
        assert checked > 900  # almost all random vectors are incompressible


class TestParamValidation:
    def test_decomp_params_bounds(self):
        with pytest.raises(ValueError):
            DecompParams(delta=0.0, rho=0.3)
        with pytest.raises(ValueError):
            DecompParams(delta=0.1, rho=1.0)

    def test_spread_params_ordering(self):
        with pytest.raises(ValueError):
            SpreadParams(nu1=0.1, nu2=2.0, nu3=1.0)
        with pytest.raises(ValueError):
            SpreadParams(nu1=2.5, nu2=0.5, nu3=1.0)

    def test_default_spread_formulas(self):
        sp = default_spread_params(DecompParams(0.1, 0.3))
        assert sp.nu1 == pytest.approx(0.1 * 0.09 / 4)
        assert sp.nu2 == pytest.approx(0.15)
        assert sp.nu3 == pytest.approx(2.0 / math.sqrt(0.2))
