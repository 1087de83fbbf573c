"""Realification of complex vectors and the 2 x 2n bracket map.

For v in C^n, hat(v) stacks real parts over imaginary parts in R^{2n}.
The bracket matrix of v has rows (Re v, -Im v) and (Im v, Re v); it is
never materialized -- both the forward product (an R^2 point) and the
transpose product (an R^{2n} vector) are computed from v directly via

    [v] hat(a)   = (Re(v.a), Im(v.a))        with the bilinear dot v.a
    [v]^T theta  = hat(conj(v) * (theta_1 + i theta_2))

All products here are bilinear (no conjugation): |v^T a| = ||[v] hat(a)||.
The Hermitian pairing lives in `spectra`; callers must pick explicitly.
"""

from __future__ import annotations

import numpy as np


def hat(v: np.ndarray) -> np.ndarray:
    """Realify: entry k is Re(v_k), entry n+k is Im(v_k)."""
    v = np.asarray(v, dtype=complex)
    return np.concatenate([v.real, v.imag])


def unhat(x: np.ndarray) -> np.ndarray:
    """Inverse of hat; exact round trip."""
    x = np.asarray(x, dtype=float)
    if x.size % 2 != 0:
        raise ValueError("realified vector must have even length")
    n = x.size // 2
    return x[:n] + 1j * x[n:]


def bracket_apply(v: np.ndarray, a: np.ndarray) -> np.ndarray:
    """[v] hat(a) = (Re(v^T a), Im(v^T a)), bilinear product (no conjugate)."""
    v = np.asarray(v, dtype=complex)
    a = np.asarray(a, dtype=complex)
    if v.shape != a.shape:
        raise ValueError(f"dimension mismatch: {v.shape} vs {a.shape}")
    s = np.dot(v, a)
    return np.array([s.real, s.imag])


def bracket_transpose_apply(v: np.ndarray, theta) -> np.ndarray:
    """[v]^T theta in R^{2n} for theta in R^2."""
    v = np.asarray(v, dtype=complex)
    w = complex(theta[0], theta[1])
    return hat(np.conj(v) * w)


def bracket_dense(v: np.ndarray) -> np.ndarray:
    """The 2 x 2n bracket matrix as a dense array (cross-checks only)."""
    v = np.asarray(v, dtype=complex)
    return np.vstack([
        np.concatenate([v.real, -v.imag]),
        np.concatenate([v.imag, v.real]),
    ])


def symmetry_swap(theta, p: np.ndarray):
    """Quarter-turn symmetry of the bracket transpose.

    Maps theta -> (-theta_2, theta_1) and p = (p_1, p_2) blockwise to
    (-p_2, p_1), preserving both ||theta|| and the lattice residual
    ||[v]^T theta - p||.
    """
    p = np.asarray(p)
    if p.size % 2 != 0:
        raise ValueError("p must have even length 2n")
    n = p.size // 2
    theta_out = np.array([-theta[1], theta[0]])
    p_out = np.concatenate([-p[n:], p[:n]])
    return theta_out, p_out
