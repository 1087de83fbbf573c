"""Levy concentration estimates and the LCD small-ball bound.

The 1-D estimator is exact over the empirical sample: the supremum of the
mass of a closed window of width 2*eps over all centers is found by a
sort-and-slide pass.  The 2-D estimator brackets the supremum instead:
sample-centered eps-balls give the lower value, and sample-centered
2*eps-balls give a valid upper value because the ball around the true
optimum center is contained in a doubled ball around some sample point.
At eps = 0 both reduce to the largest atom, which is only meaningful for
finitely supported laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .ensembles import (
    GenuinelyComplexSpec,
    RandomStream,
    ScalarDistribution,
    sample_real_array,
)
from .lcd import LcdResult

_BLOCK = 1 << 15


@dataclass(frozen=True)
class ConcentrationEstimate:
    epsilon: float
    lower: float
    upper: float
    stderr: float
    trials: int
    exact: Optional[float] = None

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper <= 1.0 + 1e-12):
            raise ValueError("need 0 <= lower <= upper <= 1")


@dataclass(frozen=True)
class SmallBallBoundParams:
    C: float
    c: float
    alpha: float
    gamma: float

    def __post_init__(self):
        if min(self.C, self.c, self.alpha, self.gamma) <= 0:
            raise ValueError("bound parameters must be positive")


def proportion_stderr(successes: float, trials: int) -> float:
    """Binomial standard error, Wilson-based when counts are small."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    k = successes
    if min(k, trials - k) < 30:
        # half-width of the Wilson interval at z = 1
        center = (k + 0.5) / (trials + 1)
        return math.sqrt(center * (1 - center) / (trials + 1) + 0.25 / (trials + 1) ** 2)
    p = k / trials
    return math.sqrt(p * (1 - p) / trials)


def _pooled_real_draws(dist, count, width, stream: RandomStream) -> np.ndarray:
    """(count, width) draws pooled from blocked substreams, in block order."""
    out = np.empty((count, width))
    done = 0
    block_index = 0
    while done < count:
        take = min(_BLOCK, count - done)
        out[done : done + take] = sample_real_array(dist, (take, width), stream.child(block_index))
        done += take
        block_index += 1
    return out


def _window_sup(samples: np.ndarray, width: float) -> float:
    """Max fraction of samples inside a closed interval of length `width`."""
    x = np.sort(samples)
    if width <= 0:
        return _atom_sup(x)
    hi = np.searchsorted(x, x + width, side="right")
    return float((hi - np.arange(x.size)).max()) / x.size


def _atom_sup(sorted_x: np.ndarray) -> float:
    # cluster with a relative gap so one atom split by float rounding of
    # mathematically equal sums still counts once
    scale = max(1.0, float(np.abs(sorted_x).max(initial=0.0)))
    breaks = np.flatnonzero(np.diff(sorted_x) > 1e-9 * scale)
    sizes = np.diff(np.concatenate([[0], breaks + 1, [sorted_x.size]]))
    return float(sizes.max()) / sorted_x.size


def levy_1d(
    a: np.ndarray,
    dist: ScalarDistribution,
    epsilon: float,
    trials: int,
    stream: RandomStream,
) -> ConcentrationEstimate:
    """Monte Carlo Levy concentration of S = sum_k a_k xi_k.

    Exact empirical supremum over interval centers (lower == upper); at
    eps = 0 it is the largest empirical atom.
    """
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        raise ValueError("coefficient vector is empty")
    if trials < 1 or epsilon < 0:
        raise ValueError("need trials >= 1 and epsilon >= 0")
    draws = _pooled_real_draws(dist, trials, a.size, stream)
    s = draws @ a
    est = _window_sup(s, 2.0 * epsilon)
    se = proportion_stderr(est * trials, trials)
    return ConcentrationEstimate(epsilon, est, est, se, trials)


def levy_1d_exact(a: np.ndarray, dist: ScalarDistribution, epsilon: float) -> float:
    """Exact concentration by full enumeration of a finitely supported law."""
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        raise ValueError("coefficient vector is empty")
    values, probs = dist.support()
    total = len(values) ** a.size
    if total > 10_000_000:
        raise ValueError(f"enumeration of {total} outcomes exceeds the 10^7 guard")
    sums = np.zeros(1)
    weights = np.ones(1)
    for coeff in a:
        sums = (sums[:, None] + coeff * values[None, :]).ravel()
        weights = (weights[:, None] * probs[None, :]).ravel()
    order = np.argsort(sums, kind="stable")
    sums, weights = sums[order], weights[order]
    scale = max(1.0, float(np.abs(sums).max()))
    if epsilon == 0.0:
        breaks = np.flatnonzero(np.diff(sums) > 1e-9 * scale)
        bounds = np.concatenate([[0], breaks + 1, [sums.size]])
        return float(max(weights[i:j].sum() for i, j in zip(bounds[:-1], bounds[1:])))
    cum = np.concatenate([[0.0], np.cumsum(weights)])
    hi = np.searchsorted(sums, sums + 2.0 * epsilon + 1e-12 * scale, side="right")
    lo = np.arange(sums.size)
    return float((cum[hi] - cum[lo]).max())


def levy_2d(
    v: np.ndarray,
    spec: GenuinelyComplexSpec,
    epsilon: float,
    trials: int,
    stream: RandomStream,
) -> ConcentrationEstimate:
    """Concentration of the planar point [v] bold-xi = (Re v.zeta, Im v.zeta).

    The 2n real coordinates of bold-xi are iid draws from the base law;
    equivalently zeta is a genuinely complex vector and v.zeta uses the
    bilinear dot product.  Returns the (eps, 2 eps) covering bracket.
    """
    v = np.asarray(v, dtype=complex)
    if trials < 1 or epsilon < 0:
        raise ValueError("need trials >= 1 and epsilon >= 0")
    draws = _pooled_real_draws(spec.base, trials, 2 * v.size, stream)
    zeta = draws[:, : v.size] + 1j * draws[:, v.size :]
    s = zeta @ v
    pts = np.column_stack([s.real, s.imag])
    scale = max(1.0, float(np.abs(pts).max()))
    tree = cKDTree(pts)
    if epsilon == 0.0:
        counts = tree.query_ball_point(pts, 1e-9 * scale, return_length=True)
        lower = upper = float(counts.max()) / trials
    else:
        lower = float(tree.query_ball_point(pts, epsilon, return_length=True).max()) / trials
        upper = float(tree.query_ball_point(pts, 2.0 * epsilon, return_length=True).max()) / trials
    se = proportion_stderr(lower * trials, trials)
    exact = None
    if epsilon == 0.0 and spec.base.finitely_supported:
        exact = levy_2d_exact_atom(v, spec)
    return ConcentrationEstimate(epsilon, lower, upper, se, trials, exact)


def levy_2d_exact_atom(v: np.ndarray, spec: GenuinelyComplexSpec) -> Optional[float]:
    """Largest atom of [v] bold-xi by enumeration; None when too large."""
    v = np.asarray(v, dtype=complex)
    values, probs = spec.base.support()
    if len(values) ** (2 * v.size) > 1_000_000:
        return None
    atoms: dict[tuple[float, float], float] = {}
    for combo in product(range(len(values)), repeat=2 * v.size):
        idx = np.array(combo)
        zeta = values[idx[: v.size]] + 1j * values[idx[v.size :]]
        s = complex(np.dot(zeta, v))
        key = (round(s.real, 9), round(s.imag, 9))
        atoms[key] = atoms.get(key, 0.0) + float(np.prod(probs[idx]))
    return max(atoms.values())


def smallball_bound(
    lcd_result: LcdResult,
    params: SmallBallBoundParams,
    epsilon: float,
) -> tuple[bool, float]:
    """Evaluate the LCD small-ball bound C eps^2 + C exp(-c alpha^2).

    Applicable once eps >= 4 / LCD, using the certified lower bound when
    the LCD result is an at-least certificate (conservative direction).
    """
    lcd_lower = lcd_result.value  # for at-least results this is the certified bound
    applicable = lcd_lower > 0 and epsilon >= 4.0 / lcd_lower
    value = params.C * epsilon**2 + params.C * math.exp(-params.c * params.alpha**2)
    return applicable, value
