"""Sparse/compressible/incompressible classification and spread sets.

A unit vector v in C^n is sparse at level delta if its realification has
at most floor(2*delta*n) nonzero coordinates, compressible if it is within
Euclidean distance rho of the sparse set, incompressible otherwise.  The
spread set of z collects realified coordinates with magnitude in
[nu2/sqrt(n), nu3/sqrt(n)]; incompressible vectors are expected to carry
at least nu1*n of them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .realify import hat

_UNIT_TOL = 1e-10


@dataclass(frozen=True)
class DecompParams:
    delta: float = 0.1
    rho: float = 0.3

    def __post_init__(self):
        if not (0.0 < self.delta < 1.0 and 0.0 < self.rho < 1.0):
            raise ValueError("delta and rho must lie strictly inside (0, 1)")


@dataclass(frozen=True)
class SpreadParams:
    nu1: float
    nu2: float
    nu3: float

    def __post_init__(self):
        if min(self.nu1, self.nu2, self.nu3) <= 0:
            raise ValueError("spread parameters must be positive")
        if not self.nu2 < self.nu3:
            raise ValueError("need nu2 < nu3")
        if self.nu1 > 2.0:
            raise ValueError("nu1 cannot exceed 2 (spread set has at most 2n indices)")


def default_spread_params(decomp: DecompParams) -> SpreadParams:
    """Defaults nu1 = delta*rho^2/4, nu2 = rho/2, nu3 = 2/sqrt(2*delta).

    These make the spread guarantee provable for incompressible vectors:
    coordinates above nu3/sqrt(n) number fewer than delta*n/2, mass below
    nu2/sqrt(n) is at most rho^2/2, so the middle band carries >= rho^2/2
    of the tail mass in >= nu1*n coordinates.
    """
    return SpreadParams(
        nu1=decomp.delta * decomp.rho**2 / 4.0,
        nu2=decomp.rho / 2.0,
        nu3=2.0 / math.sqrt(2.0 * decomp.delta),
    )


class Classification(enum.Enum):
    SPARSE = "sparse"
    COMPRESSIBLE = "compressible"
    INCOMPRESSIBLE = "incompressible"


@dataclass(frozen=True)
class VectorClass:
    label: Classification
    dist_to_sparse: float

    @property
    def is_compressible(self) -> bool:
        return self.label in (Classification.SPARSE, Classification.COMPRESSIBLE)


@dataclass(frozen=True)
class SpreadSet:
    indices: np.ndarray  # positions into hat(z), 0-based
    size: int
    threshold: float  # nu1 * n
    large_enough: bool


def support_size(v: np.ndarray, zero_tol: float | None = None) -> int:
    """Entries of hat(v) with magnitude above zero_tol.

    Default tolerance is 1e-12 relative to the largest realified entry.
    """
    x = np.abs(hat(v))
    if zero_tol is None:
        zero_tol = 1e-12 * (x.max() if x.size else 0.0)
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    return int((x > zero_tol).sum())


def _require_unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    nrm = np.linalg.norm(hat(v))
    if abs(nrm - 1.0) > _UNIT_TOL:
        raise ValueError(f"expected a unit vector, got norm {nrm:.12g}")
    return v


def dist_to_sparse(v: np.ndarray, delta: float) -> float:
    """Exact distance from hat(v) to the set of 2*delta*n-sparse vectors.

    Equals the norm of the 2n - floor(2*delta*n) smallest-magnitude
    realified entries: the best sparse approximation keeps the largest.
    """
    v = _require_unit(v)
    n = v.size
    keep = int(math.floor(2.0 * delta * n))
    x = np.sort(np.abs(hat(v)))  # ascending
    drop = max(x.size - keep, 0)
    return float(np.sqrt(np.sum(x[:drop] ** 2)))


def classify(v: np.ndarray, params: DecompParams = DecompParams()) -> VectorClass:
    """Classify a unit vector; ties (dist == rho) count as compressible."""
    v = _require_unit(v)
    d = dist_to_sparse(v, params.delta)
    keep = int(math.floor(2.0 * params.delta * v.size))
    if support_size(v) <= keep:
        return VectorClass(Classification.SPARSE, 0.0)
    if d <= params.rho:
        return VectorClass(Classification.COMPRESSIBLE, d)
    return VectorClass(Classification.INCOMPRESSIBLE, d)


def spread_set(z: np.ndarray, params: SpreadParams) -> SpreadSet:
    """Indices k with nu2/sqrt(n) <= |hat(z)_k| <= nu3/sqrt(n) (closed band)."""
    z = _require_unit(z)
    n = z.size
    mags = np.abs(hat(z))
    lo = params.nu2 / math.sqrt(n)
    hi = params.nu3 / math.sqrt(n)
    idx = np.flatnonzero((mags >= lo) & (mags <= hi))
    threshold = params.nu1 * n
    return SpreadSet(idx, int(idx.size), threshold, bool(idx.size >= threshold))
