"""Scalar laws and random matrix sampling.

All built-in scalar laws have mean 0 and variance 1.  Complex entries are
"genuinely complex": real and imaginary parts are independent draws from
the same real base law, so E|zeta|^2 = 2.

Randomness goes through :class:`RandomStream`, a counter-based splittable
key.  A substream is a pure function of (master seed, experiment id, trial
index, ...), so results never depend on thread count or trial execution
order.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

_SQRT3 = math.sqrt(3.0)
# For a law bounded by m, P(|xi| > t) <= 2 exp(-t^2/B^2) holds for all t
# iff B >= m / sqrt(ln 2).
_INV_SQRT_LN2 = 1.0 / math.sqrt(math.log(2.0))


def stable_experiment_id(name: str) -> int:
    """Platform-stable 64-bit id for an experiment name (not hash())."""
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class RandomStream:
    """Counter-based splittable random stream.

    The key tuple fully determines the stream; `child` derives substreams
    by appending indices.  Value type, safe to pass between threads.
    """

    key: tuple[int, ...]

    @classmethod
    def from_seed(cls, master_seed: int) -> "RandomStream":
        return cls((int(master_seed),))

    def child(self, *indices: int) -> "RandomStream":
        return RandomStream(self.key + tuple(int(i) for i in indices))

    def generator(self) -> np.random.Generator:
        # Philox is counter-based; SeedSequence mixes the whole key.
        return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(self.key))))


@dataclass(frozen=True)
class ScalarDistribution:
    """A mean-0, variance-1 real scalar law.

    kind is one of 'rademacher', 'gaussian', 'uniform_symmetric',
    'discrete'.  For 'discrete', `values`/`weights` give the support; the
    moment conditions are checked at construction to 1e-12.
    subgaussian_moment is metadata only (it never gates sampling).
    """

    kind: str
    values: Optional[tuple[float, ...]] = None
    weights: Optional[tuple[float, ...]] = None
    subgaussian_moment: float = field(default=0.0)

    def __post_init__(self):
        if self.kind not in ("rademacher", "gaussian", "uniform_symmetric", "discrete"):
            raise ValueError(f"unknown scalar distribution kind {self.kind!r}")
        if self.kind == "discrete":
            if self.values is None or self.weights is None:
                raise ValueError("discrete law needs values and weights")
            v = np.asarray(self.values, dtype=float)
            w = np.asarray(self.weights, dtype=float)
            if v.shape != w.shape or v.ndim != 1 or v.size == 0:
                raise ValueError("values and weights must be matching nonempty 1-D tuples")
            if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
                raise ValueError("weights must be nonnegative and sum to 1")
            mean = float(w @ v)
            var = float(w @ (v - mean) ** 2)
            if abs(mean) > 1e-12:
                raise ValueError(f"discrete law has mean {mean:g}, expected 0")
            if abs(var - 1.0) > 1e-12:
                raise ValueError(f"discrete law has variance {var:g}, expected 1")
        elif self.values is not None or self.weights is not None:
            raise ValueError("values/weights only allowed for kind='discrete'")
        if self.subgaussian_moment <= 0:
            object.__setattr__(self, "subgaussian_moment", self._default_moment())

    def _default_moment(self) -> float:
        if self.kind == "gaussian":
            return math.sqrt(2.0)
        if self.kind == "rademacher":
            return _INV_SQRT_LN2
        if self.kind == "uniform_symmetric":
            return _SQRT3 * _INV_SQRT_LN2
        return max(abs(v) for v in self.values) * _INV_SQRT_LN2

    @property
    def finitely_supported(self) -> bool:
        return self.kind in ("rademacher", "discrete")

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        """(values, probabilities) for finitely supported laws."""
        if self.kind == "rademacher":
            return np.array([-1.0, 1.0]), np.array([0.5, 0.5])
        if self.kind == "discrete":
            return np.asarray(self.values, float), np.asarray(self.weights, float)
        raise ValueError(f"{self.kind} is not finitely supported")


def rademacher() -> ScalarDistribution:
    return ScalarDistribution("rademacher")


def standard_gaussian() -> ScalarDistribution:
    return ScalarDistribution("gaussian")


def uniform_symmetric() -> ScalarDistribution:
    """Uniform on [-sqrt(3), sqrt(3)], scaled so the variance is exactly 1."""
    return ScalarDistribution("uniform_symmetric")


def discrete_custom(values, weights) -> ScalarDistribution:
    return ScalarDistribution("discrete", tuple(values), tuple(weights))


@dataclass(frozen=True)
class GenuinelyComplexSpec:
    """zeta = xi + i xi' with xi, xi' iid draws from `base`."""

    base: ScalarDistribution


@dataclass(frozen=True, eq=False)
class EnsembleSpec:
    """n x n (or row-deleted (n-1) x n) iid matrix, optionally shifted.

    If both `shift` and `shift_norm_bound` are given, the operator norm of
    the shift must not exceed shift_norm_bound * sqrt(n).
    """

    n: int
    entry_law: Union[GenuinelyComplexSpec, ScalarDistribution]
    shift: Optional[np.ndarray] = None
    shift_norm_bound: Optional[float] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.shift is not None:
            shape = np.shape(self.shift)
            if shape not in ((self.n, self.n), (self.n - 1, self.n)):
                raise ValueError(f"shift shape {shape} incompatible with n={self.n}")
            if self.shift_norm_bound is not None:
                norm = np.linalg.svd(np.asarray(self.shift), compute_uv=False)[0]
                cap = self.shift_norm_bound * math.sqrt(self.n)
                if norm > cap * (1 + 1e-12):
                    raise ValueError(
                        f"shift operator norm {norm:g} exceeds K*sqrt(n) = {cap:g}"
                    )

    @property
    def is_complex(self) -> bool:
        return isinstance(self.entry_law, GenuinelyComplexSpec)


def _draw_real(dist: ScalarDistribution, shape, rng: np.random.Generator) -> np.ndarray:
    if dist.kind == "gaussian":
        return rng.standard_normal(shape)
    if dist.kind == "rademacher":
        return rng.integers(0, 2, size=shape).astype(float) * 2.0 - 1.0
    if dist.kind == "uniform_symmetric":
        return rng.uniform(-_SQRT3, _SQRT3, size=shape)
    values = np.asarray(dist.values, float)
    idx = rng.choice(len(values), size=shape, p=np.asarray(dist.weights, float))
    return values[idx]


def sample_real_scalar(dist: ScalarDistribution, stream: RandomStream) -> float:
    """One draw from a real scalar law."""
    return float(_draw_real(dist, (), stream.generator()))


def sample_real_array(dist: ScalarDistribution, shape, stream: RandomStream) -> np.ndarray:
    return _draw_real(dist, shape, stream.generator())


def sample_complex_scalar(spec: GenuinelyComplexSpec, stream: RandomStream) -> complex:
    """One genuinely complex draw xi + i xi'."""
    pair = _draw_real(spec.base, (2,), stream.generator())
    return complex(pair[0], pair[1])


def _sample_entries(spec: EnsembleSpec, rows: int, rng: np.random.Generator) -> np.ndarray:
    # Interleaved (re, im) draws so a row-deleted matrix shares its draw
    # prefix with the full matrix on the same substream.
    if spec.is_complex:
        raw = _draw_real(spec.entry_law.base, (rows, spec.n, 2), rng)
        return raw[..., 0] + 1j * raw[..., 1]
    return _draw_real(spec.entry_law, (rows, spec.n), rng).astype(complex)


def sample_matrix(spec: EnsembleSpec, stream: RandomStream) -> np.ndarray:
    """n x n matrix of iid entries, plus the deterministic shift if any."""
    out = _sample_entries(spec, spec.n, stream.generator())
    if spec.shift is not None:
        shift = np.asarray(spec.shift)
        if shift.shape != out.shape:
            raise ValueError(f"shift shape {shift.shape} does not match {out.shape}")
        out = out + shift
    return out

def sample_row_deleted_matrix(spec: EnsembleSpec, stream: RandomStream) -> np.ndarray:
    """(n-1) x n matrix with the same entry law (and shift, if shaped so)."""
    if spec.n < 2:
        raise ValueError("row-deleted sampling needs n >= 2")
    out = _sample_entries(spec, spec.n - 1, stream.generator())
    if spec.shift is not None:
        shift = np.asarray(spec.shift)
        if shift.shape != out.shape:
            raise ValueError(f"shift shape {shift.shape} does not match {out.shape}")
        out = out + shift
    return out


@dataclass(frozen=True)
class MomentReport:
    mean: float
    mean_stderr: float
    variance: float
    variance_stderr: float
    samples: int
    # t -> (empirical P(|xi| > t), stderr, subgaussian bound 2 exp(-t^2/B^2))
    tail: dict


def empirical_moment_report(
    dist: ScalarDistribution,
    samples: int,
    stream: RandomStream,
    thresholds=(2.0, 3.0, 4.0),
) -> MomentReport:
    """Monte Carlo check of the mean/variance/subgaussian-tail contract."""
    if samples < 1000:
        raise ValueError("need at least 10^3 samples")
    x = _draw_real(dist, (samples,), stream.generator())
    mean = float(x.mean())
    var = float(x.var(ddof=1))
    m4 = float(((x - mean) ** 4).mean())
    var_se = math.sqrt(max(m4 - var**2, 0.0) / samples)
    tail = {}
    B = dist.subgaussian_moment
    for t in thresholds:
        p = float((np.abs(x) > t).mean())
        se = math.sqrt(max(p * (1 - p), 1.0 / samples) / samples)
        tail[t] = (p, se, 2.0 * math.exp(-(t * t) / (B * B)))
    return MomentReport(mean, math.sqrt(var / samples), var, var_se, samples, tail)
