"""Essential least common denominators and level-set nets.

The LCD of a unit vector v in C^n at parameters (alpha, gamma) is the
infimum of ||theta|| over theta in R^2 with

    dist([v]^T theta, Z^{2n}) < min(gamma ||theta||, alpha).

Because theta -> [v]^T theta is an isometry for unit v, the feasibility
margin is (1+gamma)-Lipschitz in theta, which is what certifies the grid
scans here.  Two universal facts shape the search:

* no feasible theta has ||theta|| <= 1/(1+gamma): the nearest lattice
  point is either 0 (then dist = ||theta|| > gamma ||theta||) or has norm
  >= 1 (then dist >= 1 - ||theta||), so every LCD is > 1/(1+gamma);
* the infimum is generally unattained (the condition is open), so solvers
  report the boundary value found by bisection, from the feasible side.

`complex_lcd` is the production solver (ring scan plus local refinement);
`complex_lcd_oracle` is the independent dense-grid oracle used to check
it.  Nearest lattice points are always entrywise roundings of
[v]^T theta, never searched separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .realify import hat
from .vector_geometry import SpreadParams

_UNIT_TOL = 1e-10


@dataclass(frozen=True)
class LcdParams:
    alpha: float
    gamma: float

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")


@dataclass(frozen=True)
class LcdResult:
    """Outcome of an LCD search.

    If `at_least` is set, no feasible theta with norm below `value` exists
    at the scan's grid resolution (a resolution-qualified certificate).
    Otherwise `value` approximates the infimum from the feasible side and
    the witness satisfies the defining inequality strictly.
    """

    value: float
    at_least: bool
    witness_theta: Optional[np.ndarray]
    witness_p: Optional[np.ndarray]
    residual: float
    certified_resolution: float

    @property
    def certified_lower_bound(self) -> float:
        """A norm below which no feasible point was found."""
        return self.value if self.at_least else max(self.value - self.certified_resolution, 0.0)


def _check_unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    nrm = np.linalg.norm(hat(v))
    if abs(nrm - 1.0) > _UNIT_TOL:
        raise ValueError(f"LCD is defined for unit vectors; got norm {nrm:.12g}")
    return v


def lcd_feasibility(v: np.ndarray, theta, params: LcdParams):
    """(feasible, residual, nearest lattice point) at one theta.

    nearest_p is the entrywise rounding of [v]^T theta, which attains
    dist(., Z^{2n}).
    """
    v = np.asarray(v, dtype=complex)
    w = complex(theta[0], theta[1])
    x = hat(np.conj(v) * w)
    p = np.rint(x)
    residual = float(np.linalg.norm(x - p))
    feasible = residual < min(params.gamma * abs(w), params.alpha)
    return feasible, residual, p.astype(int)


def _margins(v: np.ndarray, w: np.ndarray, gamma: float, alpha: float) -> np.ndarray:
    """Feasibility margin dist - min(gamma||theta||, alpha) for a batch.

    w holds theta as complex numbers theta_1 + i theta_2; negative margin
    means feasible.
    """
    U = np.conj(v)[None, :] * w[:, None]
    X = np.concatenate([U.real, U.imag], axis=1)
    X -= np.rint(X)
    dist = np.sqrt(np.einsum("ij,ij->i", X, X))
    return dist - np.minimum(gamma * np.abs(w), alpha)


def _feasible(v, theta, params) -> bool:
    return lcd_feasibility(v, theta, params)[0]


def _result_at(v, theta, params, resolution, at_least=False, bound=None) -> LcdResult:
    if at_least:
        return LcdResult(float(bound), True, None, None, math.nan, float(resolution))
    _, residual, p = lcd_feasibility(v, theta, params)
    return LcdResult(
        float(np.hypot(theta[0], theta[1])),
        False,
        np.asarray(theta, dtype=float),
        p,
        residual,
        float(resolution),
    )


def real_lcd(
    v: np.ndarray,
    params: LcdParams,
    search_bound: float,
    resolution: float,
) -> LcdResult:
    """One-dimensional lcd of a real unit vector.

    Dense scan of that > 0 at the given step, then bisection onto the
    feasibility boundary; dist(t v, Z^n) is 1-Lipschitz in t since
    ||v|| = 1, so features wider than the step cannot be missed.
    """
    if np.iscomplexobj(np.asarray(v)):
        raise ValueError("real_lcd expects a real vector")
    v = np.asarray(v, dtype=float)
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > _UNIT_TOL:
        raise ValueError(f"expected a unit vector, got norm {nrm:.12g}")
    if search_bound <= 0 or resolution <= 0:
        raise ValueError("search_bound and resolution must be positive")

    def margin(ts: np.ndarray) -> np.ndarray:
        X = ts[:, None] * v[None, :]
        X -= np.rint(X)
        dist = np.sqrt(np.einsum("ij,ij->i", X, X))
        return dist - np.minimum(params.gamma * ts, params.alpha)

    grid = np.arange(resolution, search_bound + resolution / 2, resolution)
    feas = margin(grid) < 0
    if not feas.any():
        return LcdResult(float(search_bound), True, None, None, math.nan, resolution)
    i = int(np.argmax(feas))
    lo = grid[i - 1] if i > 0 else grid[i] / 2.0
    hi = grid[i]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if margin(np.array([mid]))[0] < 0:
            hi = mid
        else:
            lo = mid
    # 1-D witness reported as theta = (that, 0); for real v the imaginary
    # block of [v]^T theta vanishes, so the residual matches dist(t v, Z^n).
    _, residual, p = lcd_feasibility(v, (hi, 0.0), params)
    return LcdResult(float(hi), False, np.array([hi, 0.0]), p, residual, resolution)


def _ring_points(radius: float, resolution: float, quadrant: bool) -> np.ndarray:
    span = math.pi / 2 if quadrant else 2 * math.pi
    m = max(8, int(math.ceil(span * radius / resolution)))
    ang = np.arange(m) * (span / m)
    return radius * np.exp(1j * ang)


def complex_lcd(
    v: np.ndarray,
    params: LcdParams,
    search_bound: Optional[float] = None,
    resolution: Optional[float] = None,
) -> LcdResult:
    """LCD of a unit complex vector: ring scan plus local refinement.

    Rings of radius step = resolution are scanned outward from the
    universal lower bound 1/(1+gamma); only the first quadrant of each
    ring is evaluated, since feasibility is invariant under the quarter
    turn (theta, p) -> ((-theta_2, theta_1), (-p_2, p_1)).  On the first
    feasible ring the best point is refined by radial bisection and
    shrinking tangential moves.  Returns an at-least certificate when no
    ring contains a feasible point.
    """
    v = _check_unit(v)
    n = v.size
    if search_bound is None:
        search_bound = 1e3 * math.sqrt(n)
    if resolution is None:
        resolution = params.gamma * math.sqrt(n) / 8.0
    if search_bound <= 0 or resolution <= 0:
        raise ValueError("search_bound and resolution must be positive")

    inner = 1.0 / (1.0 + params.gamma)
    if search_bound <= inner:
        return LcdResult(float(search_bound), True, None, None, math.nan, resolution)

    radius = inner
    while radius <= search_bound:
        w = _ring_points(radius, resolution, quadrant=True)
        m = _margins(v, w, params.gamma, params.alpha)
        hit = m < 0
        if hit.any():
            j = int(np.argmin(m))
            theta0 = np.array([w[j].real, w[j].imag])
            theta = _refine(v, params, theta0, resolution)
            return _result_at(v, theta, params, resolution)
        radius += resolution
    return LcdResult(float(search_bound), True, None, None, math.nan, resolution)


def _refine(v, params, theta0, resolution, sweeps: int = 80) -> np.ndarray:
    """Shrink the norm of a feasible theta onto the feasibility boundary."""

    def radial(theta):
        # smallest feasible multiple of theta; t=0 is always infeasible
        lo, hi = 0.0, 1.0
        for _ in range(48):
            mid = 0.5 * (lo + hi)
            if _feasible(v, mid * theta, params):
                hi = mid
            else:
                lo = mid
        return hi * theta

    theta = radial(np.asarray(theta0, float))
    dphi = resolution / max(np.linalg.norm(theta), 1e-12)
    for _ in range(sweeps):
        improved = False
        nrm = np.linalg.norm(theta)
        c, s = math.cos(dphi), math.sin(dphi)
        for rot in ((c, -s), (c, s)):
            cand = np.array([
                rot[0] * theta[0] + rot[1] * theta[1],
                -rot[1] * theta[0] + rot[0] * theta[1],
            ])
            # rotating keeps the norm; step slightly outward so the
            # rotated point has room to be feasible before re-shrinking
            for scale in (1.0, 1.0 + params.gamma):
                trial = cand * scale
                if _feasible(v, trial, params):
                    trial = radial(trial)
                    if np.linalg.norm(trial) < nrm - 1e-15:
                        theta = trial
                        improved = True
                        break
            if improved:
                break
        if not improved:
            dphi *= 0.5
            if dphi < 1e-6 * resolution:
                break
    return theta


def complex_lcd_oracle(
    v: np.ndarray,
    params: LcdParams,
    search_bound: float,
    resolution: float,
) -> LcdResult:
    """Dense Cartesian grid scan over the whole disk; no refinement.

    The independent check for `complex_lcd`: returns the minimum-norm
    feasible grid point, or an at-least certificate if none exists.
    """
    v = _check_unit(v)
    if search_bound <= 0 or resolution <= 0:
        raise ValueError("search_bound and resolution must be positive")
    axis = np.arange(-search_bound, search_bound + resolution / 2, resolution)
    best_norm = math.inf
    best_theta = None
    chunk = max(1, int(2e6 / max(len(axis), 1)))
    for start in range(0, len(axis), chunk):
        t1 = axis[start : start + chunk]
        T1, T2 = np.meshgrid(t1, axis, indexing="ij")
        w = (T1 + 1j * T2).ravel()
        keep = np.abs(w) <= search_bound
        w = w[keep]
        if w.size == 0:
            continue
        m = _margins(v, w, params.gamma, params.alpha)
        hit = m < 0
        if hit.any():
            nrm = np.abs(w[hit])
            j = int(np.argmin(nrm))
            if nrm[j] < best_norm:
                best_norm = float(nrm[j])
                best_theta = np.array([w[hit][j].real, w[hit][j].imag])
    if best_theta is None:
        return LcdResult(float(search_bound), True, None, None, math.nan, resolution)
    return _result_at(v, best_theta, params, resolution)


@dataclass(frozen=True)
class LcdConstants:
    """Constants certifying the incompressible-vector LCD lower bound.

    k:       smallest integer with 1/k^2 < nu1/4
    c_prime: balance point of the two spread-part lower bounds
    gamma:   0.99 x the certified margin min(c'A, sqrt(1-c'^2)A - c'k)
             with A = nu2 sqrt(nu1) / (2 sqrt 2)
    lambda_: 0.99 / (nu3 + k + sqrt(2) gamma / sqrt(nu1))
    """

    k: int
    c_prime: float
    gamma: float
    lambda_: float


def derive_lcd_constants(spread: SpreadParams) -> LcdConstants:
    """Derive (k, c', gamma, lambda) from spread parameters.

    c' maximizes min(c A, sqrt(1-c^2) A - c k) by golden-section search
    (the procedure, not just the value, is part of the contract so the
    outcome is reproducible bit-for-bit).
    """
    nu1, nu2, nu3 = spread.nu1, spread.nu2, spread.nu3
    # smallest integer with 1/k^2 < nu1/4 strictly, i.e. k^2 > 4/nu1,
    # computed exactly: isqrt(floor(4/nu1)) + 1
    ratio = Fraction(4) / Fraction(nu1)
    k = math.isqrt(ratio.numerator // ratio.denominator) + 1
    A = nu2 * math.sqrt(nu1) / (2.0 * math.sqrt(2.0))

    def objective(c: float) -> float:
        return min(c * A, math.sqrt(max(1.0 - c * c, 0.0)) * A - c * k)

    hi = A / math.hypot(A, k)  # above this the second term is negative
    lo = 0.0
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = objective(x1), objective(x2)
    for _ in range(200):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = objective(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = objective(x1)
    c_prime = 0.5 * (a + b)
    margin = objective(c_prime)
    if margin <= 0:
        raise ValueError("infeasible spread parameters: no c' gives a positive margin")
    gamma = 0.99 * margin
    lam = 0.99 / (nu3 + k + math.sqrt(2.0) * gamma / math.sqrt(nu1))
    out = LcdConstants(k=k, c_prime=c_prime, gamma=gamma, lambda_=lam)
    _validate_constants(out, spread, A)
    return out


def _validate_constants(c: LcdConstants, spread: SpreadParams, A: float) -> None:
    if not Fraction(4) < Fraction(c.k) ** 2 * Fraction(spread.nu1):
        raise AssertionError("k invariant violated")
    second = math.sqrt(1.0 - c.c_prime**2) * A - c.c_prime * c.k
    if not second > 0:
        raise AssertionError("c' invariant violated")
    if not c.gamma < min(c.c_prime * A, second):
        raise AssertionError("gamma invariant violated")
    if not (spread.nu3 + c.k + math.sqrt(2.0) * c.gamma / math.sqrt(spread.nu1)) * c.lambda_ < 1.0:
        raise AssertionError("lambda invariant violated")


def annulus_net(D: float, r: float) -> np.ndarray:
    """r-net of the annulus D <= ||theta|| <= 2D, as an (N, 2) array.

    Concentric rings spaced r apart, each sampled at arc step <= r, so the
    covering radius is at most r/sqrt(2).  Cardinality is O((D/r)^2).
    """
    if not 0 < r < D:
        raise ValueError("need 0 < r < D")
    radii = list(np.arange(D, 2 * D, r))
    if not radii or radii[-1] < 2 * D:
        radii.append(2 * D)
    pts = []
    for R in radii:
        m = max(8, int(math.ceil(2 * math.pi * R / r)))
        ang = np.arange(m) * (2 * math.pi / m)
        pts.append(np.column_stack([R * np.cos(ang), R * np.sin(ang)]))
    return np.concatenate(pts)


def lattice_points_in_ball(dim: int, radius: float, enumerate_points: bool = False):
    """Points of Z^dim in the closed ball of the given radius.

    Counting uses a memoized recursion over coordinates; enumeration is
    guarded at 10^7 points.  Returns the count, or (count, points array)
    when enumeration is requested.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    r2 = radius * radius

    @lru_cache(maxsize=None)
    def count(d: int, used: int) -> int:
        if d == 0:
            return 1
        lim = int(math.floor(math.sqrt(max(r2 - used, 0.0)) + 1e-12))
        total = count(d - 1, used)
        for t in range(1, lim + 1):
            total += 2 * count(d - 1, used + t * t)
        return total

    total = count(dim, 0)
    if not enumerate_points:
        return total
    if total > 10_000_000:
        raise ValueError(f"enumeration of {total} lattice points exceeds the 10^7 guard")
    pts = np.zeros((total, dim), dtype=int)
    row = 0

    def rec(depth: int, used: int, prefix: list):
        nonlocal row
        lim = int(math.floor(math.sqrt(max(r2 - used, 0.0)) + 1e-12))
        if depth == dim - 1:
            for t in range(-lim, lim + 1):
                pts[row, :depth] = prefix
                pts[row, depth] = t
                row += 1
            return
        for t in range(-lim, lim + 1):
            rec(depth + 1, used + t * t, prefix + [t])

    if dim == 1:
        lim = int(math.floor(radius + 1e-12))
        pts = np.arange(-lim, lim + 1, dtype=int)[:, None]
    else:
        rec(0, 0, [])
    return total, pts


def solve_bracket_system(theta, p: np.ndarray, n: int) -> np.ndarray:
    """The unique v with [v]^T theta = p, coordinate by 2x2 solve.

    The per-coordinate matrix [[t1, t2], [t2, -t1]] satisfies A^2 =
    ||theta||^2 I, so the inverse is A / ||theta||^2 and
    ||v|| = ||p|| / ||theta|| exactly.
    """
    t1, t2 = float(theta[0]), float(theta[1])
    s = t1 * t1 + t2 * t2
    if s == 0.0:
        raise ValueError("theta must be nonzero")
    p = np.asarray(p, dtype=float)
    pk, pnk = p[:n], p[n:]
    return ((t1 * pk + t2 * pnk) + 1j * (t2 * pk - t1 * pnk)) / s


@dataclass(frozen=True)
class NetNeighbor:
    distance: float
    vector: np.ndarray
    theta: np.ndarray
    p: np.ndarray


@dataclass
class LevelSetNet:
    """Net for the LCD level set S_D = {v : D <= LCD(v) <= 2D}.

    Net vectors are the solutions of [v']^T theta' = p over annulus-net
    points theta' and lattice points p with ||p|| <= alpha + 2D; the mesh
    guarantee for members of S_D is 2 alpha / D.  `net_vectors` is
    materialized only up to `materialize_limit` pairs; nearest-neighbor
    queries are always exact, via

        dist(v, {v' : [v']^T theta' in lattice ball})
            = min_p ||[v]^T theta' - p|| / ||theta'||.
    """

    n: int
    D: float
    r: float
    alpha: float
    gamma: float
    mesh: float
    annulus_points: np.ndarray
    lattice_points: np.ndarray
    size: int
    net_vectors: Optional[np.ndarray]
    net_index: Optional[np.ndarray]  # (theta index, lattice index) per vector

    def nearest(self, v: np.ndarray) -> NetNeighbor:
        v = _check_unit(v)
        if v.size != self.n:
            raise ValueError(f"net was built for n={self.n}, got {v.size}")
        W = self.annulus_points[:, 0] + 1j * self.annulus_points[:, 1]
        U = np.conj(v)[None, :] * W[:, None]
        X = np.concatenate([U.real, U.imag], axis=1)
        P = self.lattice_points.astype(float)
        x2 = np.einsum("ij,ij->i", X, X)
        p2 = np.einsum("ij,ij->i", P, P)
        best = (math.inf, -1, -1)
        chunk = 256
        for start in range(0, X.shape[0], chunk):
            sl = slice(start, min(start + chunk, X.shape[0]))
            d2 = x2[sl, None] + p2[None, :] - 2.0 * (X[sl] @ P.T)
            np.maximum(d2, 0.0, out=d2)
            jmin = np.argmin(d2, axis=1)
            rows = np.arange(d2.shape[0])
            dist = np.sqrt(d2[rows, jmin]) / np.abs(W[sl])
            i = int(np.argmin(dist))
            if dist[i] < best[0]:
                best = (float(dist[i]), start + i, int(jmin[i]))
        dist, ti, pi = best
        theta = self.annulus_points[ti]
        p = self.lattice_points[pi]
        vec = solve_bracket_system(theta, p, self.n)
        return NetNeighbor(dist, vec, theta, p)


def sample_level_set_member(
    n: int,
    D: float,
    params: LcdParams,
    rng: np.random.Generator,
    oracle_resolution: float = 0.01,
    max_tries: int = 400,
):
    """A unit vector with oracle-certified LCD in [D, 2D], or None.

    Candidates are planted to carry one exact bracket relation: solve
    [v]^T theta = p for a random lattice vector p with ||p|| in (D, 2D]
    and a random theta, then normalize.  The normalized vector keeps an
    exact witness of norm exactly ||p||, so its LCD is at most ||p||;
    membership (no feasible point below D either) is then certified by
    the dense-grid oracle.  Returns (v, oracle LcdResult).
    """
    lo, hi = D * (1.0 + params.gamma) * 0.999, 2.0 * D
    for _ in range(max_tries):
        p = np.zeros(2 * n)
        support = rng.choice(2 * n, size=min(4, 2 * n), replace=False)
        p[support] = rng.integers(-2, 3, size=support.size)
        norm_p = np.linalg.norm(p)
        if not lo <= norm_p <= hi:
            continue
        theta = rng.standard_normal(2)
        theta *= rng.uniform(0.8, 1.8) / np.linalg.norm(theta)
        candidate = solve_bracket_system(theta, p, n)
        nrm = np.linalg.norm(candidate)
        if nrm == 0:
            continue
        v = candidate / nrm
        res = complex_lcd_oracle(v, params, search_bound=2.0 * D * 1.02, resolution=oracle_resolution)
        if not res.at_least and D <= res.value <= 2.0 * D:
            return v, res
    return None


def level_set_net(
    n: int,
    D: float,
    params: LcdParams,
    materialize_limit: int = 200_000,
) -> LevelSetNet:
    """Construct the level-set net for S_D at (alpha, gamma).

    r = D alpha / (alpha + 2D), which turns the covering bound into the
    2 alpha / D mesh; lattice points run over the closed ball of radius
    alpha + 2D.
    """
    if n < 1 or D <= 0:
        raise ValueError("need n >= 1 and D > 0")
    alpha = params.alpha
    r = D * alpha / (alpha + 2.0 * D)
    ann = annulus_net(D, r)
    count, pts = lattice_points_in_ball(2 * n, alpha + 2.0 * D, enumerate_points=True)
    size = len(ann) * count
    vectors = None
    index = None
    if size <= materialize_limit:
        vecs = []
        idx = []
        P = pts.astype(float)
        for ti, theta in enumerate(ann):
            t1, t2 = theta
            s = t1 * t1 + t2 * t2
            pk, pnk = P[:, :n], P[:, n:]
            block = ((t1 * pk + t2 * pnk) + 1j * (t2 * pk - t1 * pnk)) / s
            vecs.append(block)
            idx.append(np.column_stack([np.full(count, ti), np.arange(count)]))
        vectors = np.concatenate(vecs)
        index = np.concatenate(idx)
    return LevelSetNet(
        n=n,
        D=float(D),
        r=float(r),
        alpha=float(alpha),
        gamma=float(params.gamma),
        mesh=2.0 * alpha / D,
        annulus_points=ann,
        lattice_points=pts,
        size=size,
        net_vectors=vectors,
        net_index=index,
    )
