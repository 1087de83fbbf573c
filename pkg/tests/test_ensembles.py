import math

import numpy as np
import pytest
from scipy import stats

from rmtlab.ensembles import (
    EnsembleSpec,
    GenuinelyComplexSpec,
    RandomStream,
    ScalarDistribution,
    discrete_custom,
    empirical_moment_report,
    rademacher,
    sample_complex_scalar,
    sample_matrix,
    sample_real_array,
    sample_real_scalar,
    sample_row_deleted_matrix,
    standard_gaussian,
    uniform_symmetric,
)

STREAM = RandomStream.from_seed(777)


class TestScalarDistribution:
    def test_builtins_construct(self):
        for d in (rademacher(), standard_gaussian(), uniform_symmetric()):
            assert d.subgaussian_moment > 0

    def test_discrete_valid(self):
        d = discrete_custom((-1.0, 1.0), (0.5, 0.5))
        assert d.finitely_supported

    def test_discrete_bad_weights(self):
        with pytest.raises(ValueError):
            discrete_custom((-1.0, 1.0), (0.7, 0.4))

    def test_discrete_bad_mean(self):
        with pytest.raises(ValueError):
            discrete_custom((0.0, 2.0), (0.5, 0.5))

    def test_discrete_bad_variance(self):
        with pytest.raises(ValueError):
            discrete_custom((-2.0, 2.0), (0.5, 0.5))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ScalarDistribution("poisson")

    def test_asymmetric_discrete_ok(self):
        # mean 0, variance 1 with weights (0.8, 0.2)
        d = discrete_custom((-0.5, 2.0), (0.8, 0.2))
        v, w = d.support()
        assert w @ v == pytest.approx(0.0, abs=1e-12)


class TestScalarSampling:
    def test_rademacher_support(self):
        for trial in range(50):
            x = sample_real_scalar(rademacher(), STREAM.child(0, trial))
            assert x in (-1.0, 1.0)

    def test_gaussian_mean_clt_band(self):
        # 3.9 sigma band for 1e6 draws of a variance-1 law
        x = sample_real_array(standard_gaussian(), (10**6,), STREAM.child(1))
        assert abs(x.mean()) < 4e-3

    def test_rademacher_second_moment_exact(self):
        x = sample_real_array(rademacher(), (10**5,), STREAM.child(2))
        assert np.mean(x**2) == 1.0

    def test_uniform_support_and_variance(self):
        x = sample_real_array(uniform_symmetric(), (10**5,), STREAM.child(3))
        assert np.all(np.abs(x) <= math.sqrt(3.0))
        assert x.var() == pytest.approx(1.0, abs=0.02)

    def test_mean_band_holds_across_seeded_runs(self):
        # |mean of N draws| < 5/sqrt(N) in >= 99% of fixed-seed runs
        for dist in (rademacher(), standard_gaussian(), uniform_symmetric()):
            N = 4000
            failures = sum(
                abs(sample_real_array(dist, (N,), STREAM.child(4, rep)).mean()) >= 5 / math.sqrt(N)
                for rep in range(100)
            )
            assert failures <= 1


class TestComplexSampling:
    def test_rademacher_atoms_and_frequencies(self):
        spec = GenuinelyComplexSpec(rademacher())
        draws = [sample_complex_scalar(spec, STREAM.child(5, t)) for t in range(4000)]
        atoms = {(-1, -1), (-1, 1), (1, -1), (1, 1)}
        for z in draws:
            assert (z.real, z.imag) in atoms
        counts = {a: 0 for a in atoms}
        for z in draws:
            counts[(z.real, z.imag)] += 1
        for c in counts.values():
            assert abs(c / 4000 - 0.25) < 4 * math.sqrt(0.25 * 0.75 / 4000)

    def test_second_absolute_moment(self):
        spec = EnsembleSpec(n=1000, entry_law=GenuinelyComplexSpec(standard_gaussian()))
        Z = sample_matrix(spec, STREAM.child(6))  # 1e6 draws
        assert np.mean(np.abs(Z) ** 2) == pytest.approx(2.0, abs=0.01)

    def test_re_im_uncorrelated(self):
        spec = EnsembleSpec(n=1000, entry_law=GenuinelyComplexSpec(standard_gaussian()))
        Z = sample_matrix(spec, STREAM.child(7)).ravel()
        corr = np.mean(Z.real * Z.imag)
        assert abs(corr) < 5 / math.sqrt(Z.size)


class TestMatrixSampling:
    def test_one_by_one_rademacher_complex(self):
        spec = EnsembleSpec(n=1, entry_law=GenuinelyComplexSpec(rademacher()))
        for t in range(20):
            A = sample_matrix(spec, STREAM.child(8, t))
            assert A.shape == (1, 1)
            assert (A[0, 0].real, A[0, 0].imag) in {(-1, -1), (-1, 1), (1, -1), (1, 1)}

    def test_complex_gaussian_operator_norm_edge(self):
        # entry variance E|z|^2 = 2 puts the spectral edge near 2 sqrt(2) sqrt(n)
        spec = EnsembleSpec(n=100, entry_law=GenuinelyComplexSpec(standard_gaussian()))
        norms = [
            np.linalg.norm(sample_matrix(spec, STREAM.child(9, t)), 2) / 10.0 for t in range(30)
        ]
        assert np.mean(norms) == pytest.approx(2 * math.sqrt(2.0), abs=0.15)

    def test_shift_norm_bound_enforced(self):
        n = 4
        with pytest.raises(ValueError):
            EnsembleSpec(
                n=n,
                entry_law=GenuinelyComplexSpec(rademacher()),
                shift=5.0 * math.sqrt(n) * np.eye(n),
                shift_norm_bound=1.0,
            )

    def test_shift_added(self):
        n = 3
        M = np.full((n, n), 10.0 + 0j)
        spec = EnsembleSpec(n=n, entry_law=GenuinelyComplexSpec(rademacher()), shift=M)
        A = sample_matrix(spec, STREAM.child(10))
        assert np.all(A.real >= 8.9)

    def test_shift_shape_mismatch(self):
        with pytest.raises(ValueError):
            EnsembleSpec(n=4, entry_law=GenuinelyComplexSpec(rademacher()), shift=np.eye(3))

    def test_row_deleted_shape(self):
        spec = EnsembleSpec(n=2, entry_law=GenuinelyComplexSpec(rademacher()))
        A = sample_row_deleted_matrix(spec, STREAM.child(11))
        assert A.shape == (1, 2)

    def test_row_deleted_shares_prefix_with_full_matrix(self):
        spec = EnsembleSpec(n=6, entry_law=GenuinelyComplexSpec(standard_gaussian()))
        full = sample_matrix(spec, STREAM.child(12))
        deleted = sample_row_deleted_matrix(spec, STREAM.child(12))
        assert np.array_equal(full[:5], deleted)

    def test_row_deleted_entry_frequencies(self):
        spec = EnsembleSpec(n=3, entry_law=GenuinelyComplexSpec(rademacher()))
        draws = np.stack(
            [sample_row_deleted_matrix(spec, STREAM.child(13, t)) for t in range(3000)]
        ).ravel()
        for atom in (1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j):
            freq = np.mean(draws == atom)
            assert freq == pytest.approx(0.25, abs=4 * math.sqrt(0.25 * 0.75 / draws.size))

    def test_determinism_across_instances(self):
        spec = EnsembleSpec(n=5, entry_law=GenuinelyComplexSpec(standard_gaussian()))
        a = sample_matrix(spec, RandomStream.from_seed(5).child(3, 17))
        b = sample_matrix(spec, RandomStream.from_seed(5).child(3, 17))
        c = sample_matrix(spec, RandomStream.from_seed(5).child(3, 18))
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)


class TestMomentReport:
    def test_rademacher_tail_is_zero(self):
        rep = empirical_moment_report(rademacher(), 20_000, STREAM.child(14))
        assert rep.tail[2.0][0] == 0.0

    def test_gaussian_tail_matches_cdf_oracle(self):
        rep = empirical_moment_report(standard_gaussian(), 10**6, STREAM.child(15))
        p, se, bound = rep.tail[3.0]
        expected = 2 * (1 - stats.norm.cdf(3.0))
        assert p == pytest.approx(expected, abs=4 * max(se, 1e-5))
        assert p <= bound

    def test_uniform_variance(self):
        rep = empirical_moment_report(uniform_symmetric(), 50_000, STREAM.child(16))
        assert rep.variance == pytest.approx(1.0, abs=4 * rep.variance_stderr)

    def test_minimum_samples(self):
        with pytest.raises(ValueError):
            empirical_moment_report(rademacher(), 10, STREAM.child(17))
