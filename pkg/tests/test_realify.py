import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmtlab.realify import (
    bracket_apply,
    bracket_dense,
    bracket_transpose_apply,
    hat,
    symmetry_swap,
    unhat,
)
from tests.conftest import random_unit_complex


def test_hat_definition():
    v = np.array([1 + 2j, 3 + 0j])
    assert np.array_equal(hat(v), [1.0, 3.0, 2.0, 0.0])


def test_hat_real_vector_has_zero_imag_block():
    v = np.array([1.5, -2.0, 0.25], dtype=complex)
    assert np.array_equal(hat(v)[3:], np.zeros(3))


def test_hat_unhat_round_trip_exact():
    rng = np.random.default_rng(0)
    v = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    assert np.array_equal(unhat(hat(v)), v)


def test_unhat_rejects_odd_length():
    with pytest.raises(ValueError):
        unhat(np.ones(5))


def test_hat_preserves_norm():
    rng = np.random.default_rng(1)
    for _ in range(100):
        v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        assert np.linalg.norm(hat(v)) == pytest.approx(np.linalg.norm(v), rel=1e-12)


def test_bracket_apply_basis():
    e1 = np.array([1.0 + 0j, 0.0])
    assert np.allclose(bracket_apply(e1, e1), [1.0, 0.0])


def test_bracket_apply_is_bilinear_not_hermitian():
    v = np.array([1j])
    assert np.allclose(bracket_apply(v, v), [-1.0, 0.0])


def test_bracket_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        bracket_apply(np.ones(2, complex), np.ones(3, complex))


def test_bilinear_identity_random_pairs():
    # |v^T a| computed with plain complex arithmetic is the oracle
    rng = np.random.default_rng(2)
    for _ in range(200):
        n = rng.integers(1, 9)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs = np.linalg.norm(bracket_apply(v, a))
        rhs = abs(np.dot(v, a))
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.floats(-1e6, 1e6, allow_nan=False),
            st.floats(-1e6, 1e6, allow_nan=False),
            st.floats(-1e6, 1e6, allow_nan=False),
            st.floats(-1e6, 1e6, allow_nan=False),
        ),
        min_size=1,
        max_size=12,
    )
)
def test_bilinear_identity_property(entries):
    v = np.array([complex(a, b) for a, b, _, _ in entries])
    a = np.array([complex(c, d) for _, _, c, d in entries])
    lhs = np.linalg.norm(bracket_apply(v, a))
    rhs = abs(np.dot(v, a))
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9)


def test_bracket_transpose_basis():
    e1 = np.zeros(4, dtype=complex)
    e1[0] = 1.0
    out = bracket_transpose_apply(e1, (1.0, 0.0))
    expected = np.zeros(8)
    expected[0] = 1.0
    assert np.allclose(out, expected)


def test_bracket_transpose_matches_spelled_out_form():
    rng = np.random.default_rng(3)
    v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    t1, t2 = 0.7, -1.3
    out = bracket_transpose_apply(v, (t1, t2))
    assert np.allclose(out[:5], t1 * v.real + t2 * v.imag)
    assert np.allclose(out[5:], -t1 * v.imag + t2 * v.real)


def test_bracket_transpose_isometry():
    rng = np.random.default_rng(4)
    for _ in range(100):
        v = random_unit_complex(rng.integers(1, 10), rng)
        theta = rng.standard_normal(2)
        out = bracket_transpose_apply(v, theta)
        assert np.linalg.norm(out) == pytest.approx(np.linalg.norm(theta), rel=1e-12)


def test_bracket_transpose_scales_with_vector_norm():
    rng = np.random.default_rng(5)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    theta = rng.standard_normal(2)
    out = bracket_transpose_apply(v, theta)
    assert np.linalg.norm(out) == pytest.approx(
        np.linalg.norm(theta) * np.linalg.norm(v), rel=1e-12
    )


def test_bracket_transpose_zero_theta():
    v = np.array([1 + 1j, 2.0])
    assert np.array_equal(bracket_transpose_apply(v, (0.0, 0.0)), np.zeros(4))


def test_bracket_dense_rows_orthogonal_equal_norm():
    rng = np.random.default_rng(6)
    for _ in range(50):
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        B = bracket_dense(v)
        assert abs(B[0] @ B[1]) <= 1e-12 * np.linalg.norm(B[0]) * np.linalg.norm(B[1])
        assert np.linalg.norm(B[0]) == pytest.approx(np.linalg.norm(v), rel=1e-12)
        assert np.linalg.norm(B[1]) == pytest.approx(np.linalg.norm(v), rel=1e-12)


def test_bracket_difference_rows_orthogonal():
    # rows of [v] - [v'] stay orthogonal with equal length for any pair
    rng = np.random.default_rng(7)
    for _ in range(50):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        B = bracket_dense(v) - bracket_dense(w)
        assert abs(B[0] @ B[1]) <= 1e-12 * max(np.linalg.norm(B[0]) * np.linalg.norm(B[1]), 1.0)
        assert np.linalg.norm(B[0]) == pytest.approx(np.linalg.norm(B[1]), rel=1e-12)


def test_dense_agrees_with_matrix_free_paths():
    rng = np.random.default_rng(8)
    v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    a = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    theta = rng.standard_normal(2)
    assert np.allclose(bracket_dense(v) @ hat(a), bracket_apply(v, a), rtol=1e-12)
    assert np.allclose(bracket_dense(v).T @ theta, bracket_transpose_apply(v, theta), rtol=1e-12)


def test_symmetry_swap_basic():
    theta, p = symmetry_swap((1.0, 0.0), np.zeros(4))
    assert np.allclose(theta, [0.0, 1.0])
    assert np.array_equal(p, np.zeros(4))


def test_symmetry_swap_rejects_odd_p():
    with pytest.raises(ValueError):
        symmetry_swap((1.0, 0.0), np.zeros(3))


def test_symmetry_swap_preserves_residual():
    rng = np.random.default_rng(9)
    for _ in range(100):
        n = rng.integers(1, 8)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        theta = rng.standard_normal(2)
        p = rng.integers(-3, 4, size=2 * n).astype(float)
        r_before = np.linalg.norm(bracket_transpose_apply(v, theta) - p)
        theta2, p2 = symmetry_swap(theta, p)
        r_after = np.linalg.norm(bracket_transpose_apply(v, theta2) - p2)
        assert r_after == pytest.approx(r_before, rel=1e-12, abs=1e-12)
        assert np.linalg.norm(theta2) == pytest.approx(np.linalg.norm(theta), rel=1e-12)


def test_symmetry_swap_has_order_four():
    rng = np.random.default_rng(10)
    theta = rng.standard_normal(2)
    p = rng.integers(-2, 3, size=6).astype(float)
    t, q = theta, p
    for _ in range(4):
        t, q = symmetry_swap(t, q)
    assert np.allclose(t, theta)
    assert np.array_equal(q, p)
