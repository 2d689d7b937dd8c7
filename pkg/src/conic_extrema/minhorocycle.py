"""Minimal enclosing horocycle of a finite point set.

For a fixed ideal angle theta, the smallest horocycle with that ideal
point enclosing the set has the closed-form size

    a(theta) = max_i min_size_for_point(theta, p_i),

so the problem reduces to minimizing the continuous, piecewise-smooth
profile a(theta) over the circle.  The solver scans a dense theta grid,
refines every bracketed local minimum by golden-section search, and
returns the global minimum.  Below the critical size 2^{-1/2} the
minimizer is provably unique; a point set containing the disk center
forces a constant profile at exactly 2^{-1/2}, where infinitely many
horocycles are minimal and the solution is flagged non-unique.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import VerificationFailure
from .horocycle import INV_SQRT2, Horocycle, min_sizes_for_points

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0

UNIQUE_SIZE_MARGIN = 1e-9  # below 2^{-1/2} required to certify uniqueness
UNIQUE_VALUE_TOL = 1e-7  # minima within this of the best are "ties"
UNIQUE_ANGLE_TOL = 1e-6  # tied minimizers must coincide to this angle


def as_point_set(points) -> np.ndarray:
    """Validate and return an (n, 2) array of points strictly inside the disk."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) == 0:
        raise ValueError("point set must be a nonempty list of (x, y) pairs")
    if np.any((pts**2).sum(axis=1) >= 1.0):
        raise ValueError("all points must lie strictly inside the unit disk")
    return pts


def size_profile(points, theta) -> float | np.ndarray:
    """Smallest enclosing size with the ideal point fixed at angle theta."""
    pts = as_point_set(points)
    thetas = np.atleast_1d(np.asarray(theta, dtype=float))
    prof = min_sizes_for_points(thetas, pts).max(axis=1)
    return float(prof[0]) if np.isscalar(theta) or np.ndim(theta) == 0 else prof


@dataclass(frozen=True)
class ProfileDiagnostics:
    thetas: np.ndarray
    values: np.ndarray
    tied_minimizers: np.ndarray  # refined local minimizers within tolerance of the best


@dataclass(frozen=True)
class MinHorocycleSolution:
    horocycle: Horocycle
    support: tuple  # indices of points on the boundary (within 1e-8)
    unique: bool
    profile: ProfileDiagnostics

    @property
    def size(self) -> float:
        return self.horocycle.a

    @property
    def theta(self) -> float:
        return self.horocycle.theta


def _golden_minimize(fun, lo: float, hi: float, tol: float):
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = fun(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = fun(x2)
    xm = 0.5 * (lo + hi)
    return xm, fun(xm)


def solve_min_horocycle(
    points,
    grid: int = 720,
    refine_tol: float = 1e-12,
    grid_offset: float = 0.0,
) -> MinHorocycleSolution:
    """Globally minimal enclosing horocycle of the point set.

    Scans ``grid`` ideal angles (optionally offset, for independent
    reruns), golden-section refines every bracketed local minimum down to
    ``refine_tol`` radians, and takes the best.  The solution is flagged
    unique iff the minimal size is strictly below 2^{-1/2} and all
    near-minimal refined minimizers coincide in angle.
    """
    pts = as_point_set(points)
    thetas = (grid_offset + np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)) % (
        2.0 * np.pi
    )
    order = np.argsort(thetas)
    thetas = thetas[order]
    values = min_sizes_for_points(thetas, pts).max(axis=1)

    def profile(th: float) -> float:
        return float(min_sizes_for_points([th], pts).max())

    n = len(thetas)
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    is_min = (values <= left) & (values <= right)
    minima = []
    for i in np.nonzero(is_min)[0]:
        lo = thetas[i - 1] if i > 0 else thetas[-1] - 2.0 * np.pi
        hi = thetas[(i + 1) % n] if i + 1 < n else thetas[0] + 2.0 * np.pi
        th, val = _golden_minimize(profile, lo, hi, refine_tol)
        minima.append((val, th % (2.0 * np.pi)))
    minima.sort()
    a_star, th_star = minima[0]

    ties = np.array([th for val, th in minima if val <= a_star + UNIQUE_VALUE_TOL])
    dth = np.abs((ties - th_star + np.pi) % (2.0 * np.pi) - np.pi)
    unique = bool(a_star < INV_SQRT2 - UNIQUE_SIZE_MARGIN and np.all(dth <= UNIQUE_ANGLE_TOL))

    needs = min_sizes_for_points([th_star], pts)[0]
    support = tuple(int(i) for i in np.nonzero(needs >= a_star - 1e-8)[0])
    return MinHorocycleSolution(
        horocycle=Horocycle(theta=th_star, a=a_star),
        support=support,
        unique=unique,
        profile=ProfileDiagnostics(thetas=thetas, values=values, tied_minimizers=ties),
    )


def verify_solution(
    points, sol: MinHorocycleSolution, perturbations: int = 64, seed: int = 0
) -> dict:
    """Independent checks of a proposed solution; raises on failure.

    Checks enclosure of every input point (closed interior), local
    optimality of the profile under sampled angle perturbations, and,
    when the solution claims uniqueness, the absence of a second
    minimizer anywhere on the diagnostic grid.
    """
    pts = as_point_set(points)
    a_star = sol.horocycle.a
    th_star = sol.horocycle.theta
    needs = min_sizes_for_points([th_star], pts)[0]
    worst = float((needs - a_star).max())
    if worst > 1e-10:
        raise VerificationFailure(
            f"enclosure: a point needs size {a_star + worst:.17g} > a* = {a_star:.17g}"
        )

    rng = np.random.default_rng(seed)
    mags = 10.0 ** rng.uniform(-6.0, -2.0, perturbations)
    signs = rng.choice([-1.0, 1.0], perturbations)
    deltas = mags * signs
    vals = min_sizes_for_points(th_star + deltas, pts).max(axis=1)
    if np.any(vals < a_star - 1e-12):
        raise VerificationFailure("local optimality: a nearby angle does better")

    if sol.unique:
        prof = sol.profile
        dth = np.abs((prof.thetas - th_star + np.pi) % (2.0 * np.pi) - np.pi)
        second = (prof.values <= a_star + 1e-12) & (dth > 1e-2)
        if np.any(second):
            raise VerificationFailure(
                "uniqueness: a second enclosing horocycle of minimal size exists"
            )

    return {
        "enclosure_margin": -worst,
        "perturbations": int(perturbations),
        "support": sol.support,
        "unique": sol.unique,
    }
