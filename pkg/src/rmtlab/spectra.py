"""Dense spectral computations.

Eigenvalues, real-eigenvalue counts via the real Schur form, singular
values, condition numbers, and column-to-hyperplane distances.  Backed by
LAPACK through numpy/scipy, which meets the backward-error contract of
Hessenberg reduction plus shifted QR; the `backward_error` field records
the a-priori LAPACK bound C * n * eps * ||A|| with C = 100.

Pairing conventions matter here: `dist_to_column_span` projects with the
Hermitian inner product, while `unit_normal` solves the bilinear system
Z_j^T v = 0 (no conjugation).  The conjugate of a bilinear normal is a
Hermitian normal, so |X . Z| (bilinear dot) equals the Hermitian distance
|<X, conj(Z)>| for rank n-1 spans; both sides are exercised in tests.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

_BACKWARD_C = 100.0


class RankDeficiencyWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    backward_error: float


@dataclass(frozen=True)
class SingularValues:
    values: np.ndarray  # nonincreasing

    @property
    def largest(self) -> float:
        return float(self.values[0])

    @property
    def smallest(self) -> float:
        return float(self.values[-1])


@dataclass(frozen=True)
class RealEigReport:
    count_real: int
    min_imag_distance: float


def _square(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError("matrix entries must be finite")
    return A


def eigenvalues(A: np.ndarray) -> Spectrum:
    """All eigenvalues with the LAPACK backward-error guarantee."""
    A = _square(A)
    try:
        vals = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare non-convergence
        raise RuntimeError(f"eigenvalue iteration did not converge: {exc}") from exc
    norm = float(np.linalg.norm(A, 2)) if A.size else 0.0
    bound = _BACKWARD_C * A.shape[0] * np.finfo(float).eps * norm
    return Spectrum(vals, bound)


def real_eigenvalue_count(A: np.ndarray) -> RealEigReport:
    """Count real eigenvalues of a real matrix via its real Schur form.

    LAPACK standardizes 2x2 diagonal blocks to have strictly complex
    conjugate eigenvalue pairs; a defensive discriminant check splits any
    block that slipped through with real spectrum.
    """
    A = _square(A)
    if np.iscomplexobj(A):
        raise ValueError("real_eigenvalue_count expects a real matrix")
    n = A.shape[0]
    if n == 1:
        return RealEigReport(1, 0.0)
    T, _ = sla.schur(np.asarray(A, dtype=float), output="real")
    count = 0
    min_imag = math.inf
    i = 0
    while i < n:
        if i + 1 < n and T[i + 1, i] != 0.0:
            a, b, c, d = T[i, i], T[i, i + 1], T[i + 1, i], T[i + 1, i + 1]
            disc = (a - d) ** 2 + 4.0 * b * c
            if disc >= 0.0:  # block not standardized: two real eigenvalues
                count += 2
                min_imag = 0.0
            else:
                min_imag = min(min_imag, 0.5 * math.sqrt(-disc))
            i += 2
        else:
            count += 1
            min_imag = 0.0
            i += 1
    return RealEigReport(count, float(min_imag))


def real_axis_distance(A: np.ndarray) -> float:
    """min over eigenvalues of |Im lambda|."""
    return float(np.min(np.abs(eigenvalues(A).eigenvalues.imag)))


def singular_values(A: np.ndarray) -> SingularValues:
    A = np.asarray(A)
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError("matrix entries must be finite")
    try:
        s = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise RuntimeError(f"SVD did not converge: {exc}") from exc
    return SingularValues(s)


def least_singular_value(A: np.ndarray) -> float:
    return singular_values(A).smallest


def operator_norm(A: np.ndarray) -> float:
    """Largest singular value; rectangular input allowed."""
    return singular_values(A).largest


def condition_number(A: np.ndarray) -> float:
    """s_1 / s_n, infinite when s_n vanishes at working precision."""
    s = singular_values(_square(A)).values
    s1, sn = float(s[0]), float(s[-1])
    if sn <= s1 * A.shape[0] * np.finfo(float).eps:
        return math.inf
    return s1 / sn


def dist_to_column_span(X: np.ndarray, H: np.ndarray) -> float:
    """Euclidean distance from X to span(H), Hermitian inner product.

    SVD-based projection, so a rank-deficient H still yields the distance
    to its true (degenerate) span; that case is flagged with a warning.
    """
    X = np.asarray(X, dtype=complex)
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != X.size:
        raise ValueError(f"incompatible shapes {X.shape} vs {H.shape}")
    U, s, _ = np.linalg.svd(H, full_matrices=False)
    keep = s > (s[0] * max(H.shape) * np.finfo(float).eps if s.size else 0.0)
    if int(keep.sum()) < min(H.shape):
        warnings.warn("column span is rank deficient", RankDeficiencyWarning)
    Q = U[:, keep]
    resid = X - Q @ (Q.conj().T @ X)
    return float(np.linalg.norm(resid))


def unit_normal(H: np.ndarray) -> np.ndarray:
    """Unit v with Z_j^T v = 0 for every row Z_j (bilinear pairing).

    Accepts an (n-1) x n row matrix or an n x (n-1) column matrix (the
    columns are then the Z_j).  The phase is canonicalized so the largest
    entry is real positive.  Raises on rank deficiency.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2:
        raise ValueError("expected a matrix")
    rows = H if H.shape[0] == H.shape[1] - 1 else H.T
    if rows.shape[0] != rows.shape[1] - 1:
        raise ValueError(f"expected (n-1) x n or n x (n-1), got {H.shape}")
    # plain matrix-vector product is already bilinear: rows @ v = (Z_j^T v)_j
    _, s, Vh = np.linalg.svd(rows, full_matrices=True)
    if s.size and s[-1] <= s[0] * rows.shape[1] * 100 * np.finfo(float).eps:
        raise ValueError("row matrix is rank deficient; normal direction not unique")
    v = np.conj(Vh[-1])
    k = int(np.argmax(np.abs(v)))
    phase = v[k] / abs(v[k])
    v = v / phase
    residual = np.linalg.norm(rows @ v)
    scale = np.linalg.norm(rows, 2)
    if scale > 0 and residual > 1e-10 * scale:
        raise ValueError(f"normal residual {residual:g} out of contract")
    return v
