"""Horocycles in the Cayley-Klein disk model.

Hyperbolic points are the interior points of the absolute circle
N: x^2 + y^2 = 1.  A horocycle is a regular conic with all but one point
interior to N; as a Euclidean ellipse it has semi-axes (a, a^2) and
hyperosculates N at its ideal point.  Its size is the semi-major axis
a in (0, 1); congruence classes under Euclidean symmetries of N are
parametrized by (theta, a) where theta locates the ideal point
(cos theta, sin theta) on N.

With the ideal point at (0, 1) the horocycle of size a has matrix

    E(a) = [[1 - 2 a^2, 0,     a^2 - 1],
            [0,         a^2,   0      ],
            [a^2 - 1,   0,     1      ]],

normalized so interior points give negative form values; general theta
follows by rotation conjugation.

Two horocycles of equal size a with ideal angles pi/2 +- omega intersect
(when their interiors overlap) in two points L = (0, l), U = (0, u) on
the symmetry axis:

    l, u = ((1 - a^2) cos w -+ a sqrt(rad)) / (a^2 sin^2 w + cos^2 w),
    rad  = 2 a^2 - a^2 cos^2 w - sin^2 w.

The horocycle tangent to N at (0, 1) through L covers the common
interior; for a < 2^{-1/2} it is strictly smaller than a, which is the
engine of the minimal-enclosing-horocycle uniqueness argument.  At
a = 2^{-1/2} all horocycles through the disk center have equal size, and
above the bound the covering horocycle comes out strictly larger, so the
bound is sharp.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoCommonInterior, PreconditionViolation
from .projective import ConicMatrix, rotation_h

INV_SQRT2 = 2.0 ** (-0.5)


def _base_matrix(a: float) -> np.ndarray:
    a2 = a * a
    return np.array(
        [
            [1.0 - 2.0 * a2, 0.0, a2 - 1.0],
            [0.0, a2, 0.0],
            [a2 - 1.0, 0.0, 1.0],
        ]
    )


@dataclass(frozen=True)
class Horocycle:
    """Horocycle given by ideal-point angle and Euclidean semi-major axis."""

    theta: float
    a: float

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValueError("horocycle size must lie strictly between 0 and 1")

    @property
    def ideal_point(self) -> np.ndarray:
        return np.array([np.cos(self.theta), np.sin(self.theta)])

    @property
    def center(self) -> np.ndarray:
        """Euclidean center of the horocycle viewed as an ellipse."""
        return (1.0 - self.a**2) * self.ideal_point

    def matrix(self) -> ConicMatrix:
        return horocycle_matrix(self)

    def contains(self, p) -> bool:
        """Strict interior test for a point of the open unit disk.

        Points on the horocycle itself count as outside; a small relative
        guard keeps exact boundary points (whose form value is rounding
        noise) from flipping inside.
        """
        x, y = np.asarray(p, float)
        v = np.array([1.0, x, y])
        m = self.matrix().m
        guard = 1e-14 * float(np.linalg.norm(m)) * float(v @ v)
        return float(v @ m @ v) < -guard


def horocycle_matrix(h: Horocycle) -> ConicMatrix:
    """Conic matrix of the horocycle, interior-normalized.

    Obtained from the base matrix E(a) (ideal point at angle pi/2) by
    rotation conjugation moving the ideal point to angle theta.
    """
    r = rotation_h(h.theta - 0.5 * np.pi)
    return ConicMatrix(r @ _base_matrix(h.a) @ r.T)


def min_size_for_point(theta: float, p) -> float:
    """Infimum size a such that the horocycle (theta, a) covers the point.

    Closed-form inversion of the containment form: with (x', y') the
    point rotated so the ideal point moves to (0, 1),

        a = sqrt((1 - y')^2 / (2 - 2 y' - x'^2)),

    and the denominator exceeds (1 - y')^2 strictly inside the disk.
    Containment is monotone in a: the horocycle (theta, a) contains p
    exactly when a exceeds this value.
    """
    x, y = float(p[0]), float(p[1])
    st, ct = np.sin(theta), np.cos(theta)
    xr = x * st - y * ct
    yr = x * ct + y * st
    den = 2.0 - 2.0 * yr - xr * xr
    return float(np.sqrt((1.0 - yr) ** 2 / den))


def min_sizes_for_points(thetas, pts) -> np.ndarray:
    """Vectorized :func:`min_size_for_point`: (m,) angles x (n, 2) points -> (m, n)."""
    thetas = np.atleast_1d(np.asarray(thetas, float))
    pts = np.atleast_2d(np.asarray(pts, float))
    st, ct = np.sin(thetas)[:, None], np.cos(thetas)[:, None]
    x, y = pts[:, 0][None, :], pts[:, 1][None, :]
    xr = x * st - y * ct
    yr = x * ct + y * st
    return np.sqrt((1.0 - yr) ** 2 / (2.0 - 2.0 * yr - xr * xr))


def _pair_matrices(a: float, omega: float):
    r0 = rotation_h(omega)
    r1 = rotation_h(-omega)
    e = _base_matrix(a)
    return ConicMatrix(r0 @ e @ r0.T), ConicMatrix(r1 @ e @ r1.T)


def intersection_radicand(a: float, omega: float) -> float:
    c, s = np.cos(omega), np.sin(omega)
    return 2.0 * a * a - a * a * c * c - s * s


def intersection_points(a: float, omega: float):
    """Intersection points L = (0, l), U = (0, u) of the symmetric pair.

    The pair consists of the two horocycles of size ``a`` with ideal
    angles pi/2 +- omega.  Raises NoCommonInterior when the radicand
    2 a^2 - a^2 cos^2 w - sin^2 w is not positive (interiors disjoint or
    merely tangent).
    """
    rad = intersection_radicand(a, omega)
    if rad <= 0.0:
        raise NoCommonInterior("horocycle pair has no common interior points")
    c, s = np.cos(omega), np.sin(omega)
    den = a * a * s * s + c * c
    root = a * np.sqrt(rad)
    ell = ((1.0 - a * a) * c - root) / den
    u = ((1.0 - a * a) * c + root) / den
    return np.array([0.0, ell]), np.array([0.0, u])


def common_cover_unchecked(a: float, omega: float) -> Horocycle:
    """Horocycle tangent to N at (0, 1) through the lower intersection point.

    Always covers the common interior of the symmetric pair; its size is
    smaller than ``a`` exactly when a < 2^{-1/2} (equal at the bound,
    larger above it).  No size precondition is enforced here.
    """
    ell = intersection_points(a, omega)[0][1]
    return Horocycle(theta=0.5 * np.pi, a=float(np.sqrt((1.0 - ell) / 2.0)))


def common_cover(a: float, omega: float) -> Horocycle:
    """Strictly smaller horocycle covering the common interior of the pair.

    Requires a < 2^{-1/2}; under that bound the result both covers
    int H0 intersect int H1 and satisfies size < a.
    """
    if not 0.0 < a < INV_SQRT2:
        raise PreconditionViolation(
            "size reduction is guaranteed only for a < 2^(-1/2)"
        )
    return common_cover_unchecked(a, omega)


# -- algebraic identities behind the size reduction ---------------------------


def _q_poly(a: float, t: float) -> float:
    return (t**4 + 6.0 * t**2 + 1.0) * a * a - 4.0 * t * t


@dataclass(frozen=True)
class SizeIdentityReport:
    """Checked identities for the size-reduction inequality at one (a, t)."""

    a: float
    t: float
    q: float
    rhs: float  # R = 2 - 3 a^2 - a^2 t^4 - 2 (2 a^2 - 1)^2 t^2
    rhs_positive: bool
    rhs_at_t1: float
    rhs_at_t1_identity_error: float  # relative, vs 4 a^2 (1 - 2 a^2)
    rhs_monotone_decreasing: bool
    lhs_squared_minus_rhs_squared: float | None
    factored_value: float | None
    factorization_rel_error: float | None
    size_inequality_holds: bool | None  # L < R, i.e. the cover is smaller

    @property
    def passed(self) -> bool:
        ok = (
            self.rhs_positive
            and self.rhs_at_t1_identity_error <= 1e-12
            and self.rhs_monotone_decreasing
        )
        if self.factorization_rel_error is not None:
            ok = ok and self.factorization_rel_error <= 1e-10
            ok = ok and self.lhs_squared_minus_rhs_squared < 0.0
        return ok


def _rhs(a: float, t) -> np.ndarray:
    return 2.0 - 3.0 * a * a - a * a * np.asarray(t) ** 4 - 2.0 * (2.0 * a * a - 1.0) ** 2 * np.asarray(t) ** 2


def check_size_reduction_identities(a: float, t: float) -> SizeIdentityReport:
    """Verify the algebra that makes the covering horocycle smaller.

    Under the substitution omega = 2 arctan(t), the inequality
    "cover smaller than a" is equivalent to L < R with
    L = a (t^2 + 1) sqrt(q) and R as above, and

        L^2 - R^2 = 4 (1 - a^2) (2 a^2 t^2 + 1)
                    (4 a^2 t^2 + (t^2 - 1)^2) (2 a^2 - 1) < 0

    for 0 < t < 1 and a < 2^{-1/2}.  At t = 1 only the endpoint identity
    R|_{t=1} = 4 a^2 (1 - 2 a^2) is meaningful (q is negative there), so
    the square-root comparison fields are None.
    """
    if not 0.0 < a < INV_SQRT2:
        raise PreconditionViolation("requires 0 < a < 2^(-1/2)")
    if not 0.0 < t <= 1.0:
        raise PreconditionViolation("requires 0 < t <= 1")
    q = _q_poly(a, t)
    at_one = float(_rhs(a, 1.0))
    identity = 4.0 * a * a * (1.0 - 2.0 * a * a)
    at_one_err = abs(at_one - identity) / abs(identity)
    rhs = float(_rhs(a, t))
    tgrid = np.linspace(1e-3, 1.0, 41)
    monotone = bool(np.all(np.diff(_rhs(a, tgrid)) < 0.0))
    if t < 1.0:
        if q <= 0.0:
            raise PreconditionViolation("q <= 0: the pair has no common interior")
        lhs = a * (t * t + 1.0) * np.sqrt(q)
        diff = lhs * lhs - rhs * rhs
        factored = (
            4.0
            * (1.0 - a * a)
            * (2.0 * a * a * t * t + 1.0)
            * (4.0 * a * a * t * t + (t * t - 1.0) ** 2)
            * (2.0 * a * a - 1.0)
        )
        rel = abs(diff - factored) / max(abs(factored), 1e-300)
        return SizeIdentityReport(
            a=a,
            t=t,
            q=q,
            rhs=rhs,
            rhs_positive=rhs > 0.0,
            rhs_at_t1=at_one,
            rhs_at_t1_identity_error=at_one_err,
            rhs_monotone_decreasing=monotone,
            lhs_squared_minus_rhs_squared=float(diff),
            factored_value=float(factored),
            factorization_rel_error=float(rel),
            size_inequality_holds=bool(lhs < rhs),
        )
    return SizeIdentityReport(
        a=a,
        t=t,
        q=q,
        rhs=rhs,
        rhs_positive=rhs > 0.0,
        rhs_at_t1=at_one,
        rhs_at_t1_identity_error=at_one_err,
        rhs_monotone_decreasing=monotone,
        lhs_squared_minus_rhs_squared=None,
        factored_value=None,
        factorization_rel_error=None,
        size_inequality_holds=None,
    )


# -- sampled containment implication ------------------------------------------


def _pair_forms(x, y, a: float, t: float):
    """Interior forms of the pair in the tan-half-angle parametrization.

    Negative values mean strictly inside H0 (ideal angle pi/2 + omega)
    and H1 (pi/2 - omega) respectively, omega = 2 arctan t.
    """
    t2 = t * t
    f0 = (
        (4.0 * a * a * t2 + t2 * t2 - 2.0 * t2 + 1.0) * y * y
        - 2.0 * (t2 - 1.0) * (a * a - 1.0) * (t2 + 2.0 * t * x + 1.0) * y
        + ((t2 - 1.0) ** 2 * x * x - (4.0 * t * t2 + 4.0 * t) * x - 2.0 * (t2 + 1.0) ** 2)
        * a
        * a
        + (t2 + 2.0 * t * x + 1.0) ** 2
    )
    f1 = (
        (4.0 * a * a * t2 + t2 * t2 - 2.0 * t2 + 1.0) * y * y
        - 2.0 * (t2 - 1.0) * (a * a - 1.0) * (t2 - 2.0 * t * x + 1.0) * y
        + ((t2 - 1.0) ** 2 * x * x + (4.0 * t * t2 + 4.0 * t) * x - 2.0 * (t2 + 1.0) ** 2)
        * a
        * a
        + (t2 - 2.0 * t * x + 1.0) ** 2
    )
    return f0, f1


def _k_poly(x, y, a: float, t: float):
    """Certificate polynomial: k > 0 forces membership in the cover.

    Squaring the cover-membership inequality against sqrt(q) reduces it
    to -4 (4 a^2 t^2 + (t^2 - 1)^2) k < 0.
    """
    t2 = t * t
    r2 = x * x + y * y - 1.0
    return (
        r2 * ((x * x + 2.0 * y - 2.0) * a * a - x * x - y * y + 1.0) * t2 * t2
        - 4.0 * r2 * (y - 1.0) ** 2 * (a * a - 0.5) * t2
        - (y - 1.0) ** 2
        * (y * y + (2.0 * a * a - 2.0) * y + 1.0 + (x * x - 2.0) * a * a)
    )


@dataclass(frozen=True)
class CoverContainmentReport:
    """Sampled check that the common interior lies inside the cover."""

    a: float
    t: float
    samples: int
    common_interior_points: int
    k_violations: int
    containment_violations: int
    min_k: float | None
    cover_size: float | None
    size_reduced: bool | None  # cover strictly smaller than a

    @property
    def passed(self) -> bool:
        return self.k_violations == 0 and self.containment_violations == 0


def check_cover_containment(
    a: float, t: float, samples: int = 100_000, seed: int = 0
) -> CoverContainmentReport:
    """Sampled replacement for the quantifier-elimination step.

    Draws points uniformly in the unit disk; for each point strictly
    inside both horocycles of the pair, asserts the certificate k > 0
    (which implies membership in the covering horocycle) and also checks
    membership directly.  For a < 2^{-1/2} the violation counts must be
    zero; above the bound the cover is strictly larger than a, which is
    reported through ``size_reduced``.
    """
    rng = np.random.default_rng(seed)
    pts = np.empty((0, 2))
    while len(pts) < samples:
        batch = rng.uniform(-1.0, 1.0, (2 * (samples - len(pts)) + 16, 2))
        batch = batch[(batch**2).sum(axis=1) < 1.0]
        pts = np.vstack([pts, batch])
    pts = pts[:samples]
    x, y = pts[:, 0], pts[:, 1]
    f0, f1 = _pair_forms(x, y, a, t)
    mask = (f0 < 0.0) & (f1 < 0.0)
    n_common = int(mask.sum())
    omega = 2.0 * np.arctan(t)
    cover_size = None
    size_reduced = None
    if intersection_radicand(a, omega) > 0.0:
        cover = common_cover_unchecked(a, omega)
        cover_size = cover.a
        size_reduced = bool(cover.a < a)
    if n_common == 0:
        return CoverContainmentReport(
            a=a,
            t=t,
            samples=samples,
            common_interior_points=0,
            k_violations=0,
            containment_violations=0,
            min_k=None,
            cover_size=cover_size,
            size_reduced=size_reduced,
        )
    xc, yc = x[mask], y[mask]
    k = _k_poly(xc, yc, a, t)
    k_viol = int((k <= 0.0).sum())
    cont_viol = 0
    if cover_size is not None:
        m = ConicMatrix(_base_matrix(cover_size)).m
        hom = np.column_stack([np.ones(len(xc)), xc, yc])
        forms = np.einsum("ni,ij,nj->n", hom, m, hom)
        cont_viol = int((forms >= 0.0).sum())
    return CoverContainmentReport(
        a=a,
        t=t,
        samples=samples,
        common_interior_points=n_common,
        k_violations=k_viol,
        containment_violations=cont_viol,
        min_k=float(k.min()),
        cover_size=cover_size,
        size_reduced=size_reduced,
    )


def sample_common_interior(a: float, omega: float, n: int, seed: int = 0) -> np.ndarray:
    """Points of int H0 intersect int H1, by rejection in the lens box.

    The bounding box is the intersection of the two ellipse bounding
    boxes clipped to the unit square; sampling is reproducible via the
    explicit seed.
    """
    h0, h1 = _pair_matrices(a, omega)
    lo = np.full(2, -1.0)
    hi = np.full(2, 1.0)
    for ang in (0.5 * np.pi + omega, 0.5 * np.pi - omega):
        center = (1.0 - a * a) * np.array([np.cos(ang), np.sin(ang)])
        radial = np.array([np.cos(ang), np.sin(ang)])
        tang = np.array([-np.sin(ang), np.cos(ang)])
        ext = np.sqrt((a * tang) ** 2 + (a * a * radial) ** 2)
        lo = np.maximum(lo, center - ext)
        hi = np.minimum(hi, center + ext)
    if np.any(hi <= lo):
        raise NoCommonInterior("lens bounding box is empty")
    rng = np.random.default_rng(seed)
    out = np.empty((0, 2))
    attempts = 0
    while len(out) < n and attempts < 400:
        attempts += 1
        cand = rng.uniform(lo, hi, (max(4 * (n - len(out)), 256), 2))
        hom = np.column_stack([np.ones(len(cand)), cand])
        inside = (
            (np.einsum("ni,ij,nj->n", hom, h0.m, hom) < 0.0)
            & (np.einsum("ni,ij,nj->n", hom, h1.m, hom) < 0.0)
            & ((cand**2).sum(axis=1) < 1.0)
        )
        out = np.vstack([out, cand[inside]])
    if len(out) < n:
        raise NoCommonInterior("could not sample the common interior")
    return out[:n]
