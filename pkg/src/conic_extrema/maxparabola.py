"""Maximal parabola inscribed in an intersection of half-planes.

A parabola (curve plus convex interior) lies in a closed half-plane
n.x <= d iff the half-plane normal has negative component along the
parabola's opening direction and the supremum of n.x over the parabola
does not exceed d.  In the apex frame the supremum is available in closed
form, which gives an exact signed containment residual in length units:

    sup_{x in P} n.x - d = -npx^2 p / (2 npy) - (d - n.apex),

with npy = n . axis_dir < 0 and npx^2 = 1 - npy^2.

For any region of half-planes that admits one inscribed parabola at all,
the supremum of the parameter under containment alone is infinite: push
the apex along the opening direction u (strictly interior to the region's
recession cone) and every slack grows linearly, so the parameter bound
min_i slack_i / c_i(u) grows without bound.  A parabola of locally
maximal size must therefore be pinned by boundary tangencies; with fewer
than three active constraints there is always room to translate, rotate a
little and enlarge.  This solver accordingly maximizes the parameter over
parabolas tangent to (at least) three boundary lines and contained in the
region.  For a region bounded by the three side lines of a triangle that
maximum is exactly the corresponding exparabola.

The search runs in two stages: a multi-start derivative-free pattern
search over (apex_x, apex_y, axis_angle, p), with an exact penalty on the
three smallest containment slacks pulling iterates onto the pinned set,
followed by an exact polish that maximizes the rational squared-parameter
function along the dual pencil of the identified tangent triple.  A
direct enumeration of all tangent triples independently cross-checks the
multi-start result.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import (
    DegenerateTriangle,
    NoInscribedParabola,
    NotAParabola,
    NumericalRootFailure,
    SingularPencilMember,
    UnboundedParameter,
)
from .exparabola import (
    Triangle,
    _primal_matrix,
    canonical_frame,
    solve_cubic,
    squared_parameter,
    tangency_cubic,
)
from .parabola import Parabola, apex_form
from .projective import ConicMatrix

DIRECTION_TOL = 1e-9


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane {x : normal . x <= offset} with unit normal."""

    normal: np.ndarray
    offset: float

    def __init__(self, normal, offset: float):
        n = np.asarray(normal, dtype=float).reshape(2).copy()
        nn = np.linalg.norm(n)
        if abs(nn - 1.0) > 1e-12:
            raise ValueError("half-plane normal must be a unit vector")
        n.flags.writeable = False
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(offset))

    @staticmethod
    def from_direction(direction, offset: float) -> "HalfPlane":
        d = np.asarray(direction, dtype=float).reshape(2)
        return HalfPlane(d / np.linalg.norm(d), offset)

    def contains_point(self, x, tol: float = 0.0) -> bool:
        return float(self.normal @ np.asarray(x, float)) <= self.offset + tol


@dataclass(frozen=True)
class ConvexRegion:
    """Intersection of closed half-planes; may be (and usually is) unbounded."""

    halfplanes: tuple

    def __init__(self, halfplanes):
        object.__setattr__(self, "halfplanes", tuple(halfplanes))
        if not self.halfplanes:
            raise ValueError("region needs at least one half-plane")

    @property
    def normals(self) -> np.ndarray:
        return np.array([h.normal for h in self.halfplanes])

    @property
    def offsets(self) -> np.ndarray:
        return np.array([h.offset for h in self.halfplanes])

    def contains_point(self, x, tol: float = 0.0) -> bool:
        x = np.asarray(x, float)
        return bool(np.all(self.normals @ x <= self.offsets + tol))


@dataclass(frozen=True)
class Convergence:
    starts: int
    agreeing_starts: int
    spread: float


@dataclass(frozen=True)
class MaxParabolaSolution:
    parabola: Parabola
    apex: np.ndarray
    axis_angle: float
    active_constraints: tuple
    convergence: Convergence


def halfplane_violation(apex, axis_dir, p: float, normal, offset: float) -> float:
    """Signed containment residual of a parabola against one half-plane.

    Positive means the parabola sticks out by that Euclidean distance;
    +inf when the opening direction itself escapes the half-plane (then
    no translation can help).
    """
    npy = float(np.dot(normal, axis_dir))
    if npy >= -1e-14:
        return np.inf
    npx2 = max(0.0, 1.0 - npy * npy)
    e = offset - float(np.dot(normal, apex))
    return -npx2 * p / (2.0 * npy) - e


def region_violation(region: ConvexRegion, apex, axis_dir, p: float) -> float:
    """Worst containment residual over all half-planes of the region."""
    return max(
        halfplane_violation(apex, axis_dir, p, h.normal, h.offset)
        for h in region.halfplanes
    )


def parabola_in_halfplane(para: Parabola, h: HalfPlane, tol: float | None = None) -> bool:
    """Containment test with tangency counting as contained.

    Equivalent to: the opening direction does not escape the half-plane,
    the apex satisfies the inequality, and the boundary line does not cut
    the parabola's open interior.
    """
    apex, angle, p = apex_form(para.conic)
    axis_dir = np.array([np.cos(angle), np.sin(angle)])
    if tol is None:
        tol = 1e-9 * max(1.0, float(np.linalg.norm(apex)), p, abs(h.offset))
    return halfplane_violation(apex, axis_dir, p, h.normal, h.offset) <= tol


def triangle_region(t: Triangle, opposite: str) -> ConvexRegion:
    """Half-plane region hosting the exparabola opposite the given vertex.

    The negative half-plane of the side opposite ``opposite`` plus the
    positive half-planes of the two remaining sides.
    """
    side_of = {"C": ("A", "B"), "A": ("B", "C"), "B": ("C", "A")}
    hps = []
    for opp, (v1, v2) in side_of.items():
        p1, p2 = t.vertex(v1), t.vertex(v2)
        pv = t.vertex(opp)
        edge = p2 - p1
        n = np.array([-edge[1], edge[0]])
        n = n / np.linalg.norm(n)
        d = float(n @ p1)
        if float(n @ pv) > d:  # orient positive: opposite vertex inside
            n, d = -n, -d
        if opp == opposite:  # chosen side gets its negative half-plane
            n, d = -n, -d
        hps.append(HalfPlane(n, d))
    return ConvexRegion(hps)


# -- feasible axis directions ------------------------------------------------


def _feasible_direction_arc(normals: np.ndarray):
    """Open arc of axis angles with n . u < 0 for every normal.

    Exists iff all normals fit strictly inside an open half-circle, i.e.
    the largest circular gap between consecutive normal angles exceeds
    pi.  With the normals spanning [first, last] (unwrapped, width
    2 pi - gap), the feasible axis angles form (last + pi/2,
    first + 3 pi/2) of length gap - pi.  Returns (lo, hi) or None.
    """
    ang = np.sort(np.arctan2(normals[:, 1], normals[:, 0]))
    m = len(ang)
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2.0 * np.pi]]))
    k = int(np.argmax(gaps))
    if gaps[k] <= np.pi + DIRECTION_TOL:
        return None
    if k == m - 1:
        first = ang[0] + 2.0 * np.pi
        last = ang[m - 1] + 2.0 * np.pi
    else:
        first = ang[k + 1]
        last = ang[k] + 2.0 * np.pi
    return last + 0.5 * np.pi, first + 1.5 * np.pi


def _chebyshev_point(normals, offsets, box_half: float):
    """Deepest interior point of the region within the probe box."""
    m = len(normals)
    # maximize r  s.t.  n.x + r <= d  and  |x| <= box_half componentwise
    a_ub = np.column_stack([normals, np.ones(m)])
    box = np.array(
        [[1.0, 0.0, 1.0], [-1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [0.0, -1.0, 1.0]]
    )
    a_ub = np.vstack([a_ub, box])
    b_ub = np.concatenate([offsets, np.full(4, box_half)])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=a_ub,
        b_ub=b_ub,
        bounds=[(None, None), (None, None), (None, None)],
        method="highs",
    )
    if not res.success or res.x[2] <= 0.0:
        return None
    return res.x[:2], res.x[2]


# -- exact polish along the dual pencil of a tangent triple ------------------


def _triple_frame(region: ConvexRegion, triple):
    """Canonical frame of a tangent triple, or None when incompatible.

    The three boundary lines must be pairwise non-parallel and the region
    orientation must put exactly one of them on the negative side of the
    triangle they span (parabolas tangent to three lines live in the
    one-negative-two-positive cells only).
    """
    ns = region.normals
    ds = region.offsets
    i, j, k = triple
    verts = {}
    for opp, (r, s) in ((k, (i, j)), (j, (i, k)), (i, (j, k))):
        a = np.array([ns[r], ns[s]])
        det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        if abs(det) < 1e-12:
            return None
        verts[opp] = np.linalg.solve(a, np.array([ds[r], ds[s]]))
    negatives = [l for l in triple if ns[l] @ verts[l] - ds[l] > 0.0]
    if len(negatives) != 1:
        return None
    neg = negatives[0]
    others = [l for l in triple if l != neg]
    try:
        tri = Triangle(A=verts[others[0]], B=verts[others[1]], C=verts[neg])
        frame = canonical_frame(tri, "AB")
    except DegenerateTriangle:
        return None
    return frame


def _pencil_world(frame, lam: float):
    """(apex, axis_dir, p, conic_world) of a pencil member in world coords."""
    conic_world = ConicMatrix(
        frame.world_to_frame.T @ _primal_matrix(frame, lam) @ frame.world_to_frame
    )
    apex, angle, p = apex_form(conic_world)
    return apex, np.array([np.cos(angle), np.sin(angle)]), p, conic_world


def _polish_triple(region: ConvexRegion, triple, scale: float):
    """Maximize the parameter along one tangent triple's pencil.

    Returns (p, apex, axis_angle, conic, lam, frame) or None.  The
    squared parameter is unimodal on (a1, b1) with its maximum at the
    in-interval cubic root; containment of the remaining half-planes
    clips the admissible set, so the constrained maximum sits either at
    the root or on a feasibility boundary located by bisection.
    """
    frame = _triple_frame(region, triple)
    if frame is None:
        return None
    try:
        roots = solve_cubic(tangency_cubic(frame))
    except NumericalRootFailure:
        return None
    inside = roots[(roots > frame.a1) & (roots < frame.b1)]
    if inside.size != 1:
        return None
    lam_star = float(inside[0])
    rest = [h for idx, h in enumerate(region.halfplanes) if idx not in triple]
    tol = 1e-11 * max(scale, 1.0)

    def worst(lam: float) -> float:
        if not rest:
            return -np.inf
        try:
            apex, axis_dir, p, _ = _pencil_world(frame, lam)
        except (SingularPencilMember, NotAParabola, ValueError):
            return np.inf
        return max(
            halfplane_violation(apex, axis_dir, p, h.normal, h.offset) for h in rest
        )

    candidates = []
    if worst(lam_star) <= tol:
        candidates.append(lam_star)
    else:
        a1, b1 = frame.a1, frame.b1
        span = b1 - a1
        grid = np.linspace(a1 + 1e-9 * span, b1 - 1e-9 * span, 257)
        vals = np.array([worst(l) for l in grid])
        feas = vals <= tol
        if not feas.any():
            return None
        # bisect every feasible/infeasible edge to locate boundary points
        for e in np.nonzero(feas[:-1] != feas[1:])[0]:
            lo, hi = grid[e], grid[e + 1]
            lo_feas = bool(feas[e])
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if (worst(mid) <= tol) == lo_feas:
                    lo = mid
                else:
                    hi = mid
            candidates.append(lo if lo_feas else hi)
        candidates.extend(grid[feas][np.argsort(np.abs(grid[feas] - lam_star))][:2])

    best = None
    for lam in candidates:
        if worst(lam) > tol:
            continue
        p2 = squared_parameter(frame, lam)
        if best is None or p2 > best[0]:
            best = (p2, lam)
    if best is None:
        return None
    lam = best[1]
    apex, axis_dir, p, conic = _pencil_world(frame, lam)
    angle = float(np.arctan2(axis_dir[1], axis_dir[0])) % (2.0 * np.pi)
    return p, apex, angle, conic, lam, frame


# -- coarse multi-start pattern search ---------------------------------------


def _geometry_scale(normals, offsets, probe: float):
    """Reference length and center of the boundary arrangement itself.

    The probe diameter fixes tolerances, but search steps must resolve
    the actual geometry, whose size is set by the pairwise intersection
    points of the boundary lines and their offsets.
    """
    m = len(normals)
    pts = []
    for i in range(m):
        for j in range(i + 1, m):
            a = np.array([normals[i], normals[j]])
            det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
            if abs(det) > 1e-12:
                pts.append(np.linalg.solve(a, np.array([offsets[i], offsets[j]])))
    if pts:
        pts = np.array(pts)
        center = pts.mean(axis=0)
        span = float(np.ptp(pts, axis=0).max()) + float(
            np.abs(pts - center).max()
        )
    else:
        center = np.zeros(2)
        span = float(np.abs(offsets).max())
    gscale = float(np.clip(max(span, 1.0), 1e-6 * probe, probe))
    return gscale, center


def _coarse_search(normals, offsets, seeds, scale, gscale, center, kappa, max_iter=600):
    """Vectorized compass search maximizing p - kappa * (3 smallest slacks).

    States are (apex_x, apex_y, axis_angle, p); infeasible states score
    -inf.  Returns (final states, escaped mask, drifted mask); a start
    escapes when its parameter exceeds the growth cap 1e6 * scale, and
    drifts when it leaves a generous multiple of the geometry scale --
    evidence that the penalty weight is too weak for this geometry.
    """
    ns, ds = normals, offsets
    m = len(ns)
    nsmall = min(3, m)
    z = seeds.copy()
    s = len(z)
    p_cap = 1e6 * scale
    drift_cap = 100.0 * gscale

    def objective(zz):
        ap = zz[..., :2]
        th = zz[..., 2]
        p = zz[..., 3]
        u = np.stack([np.cos(th), np.sin(th)], axis=-1)
        npy = u @ ns.T
        ok_dir = (npy < -1e-12).all(axis=-1) & (p > 0)
        npy_safe = np.where(npy < 0, npy, -1.0)
        cmat = (1.0 - npy_safe**2) / (-2.0 * npy_safe)
        slack = ds - ap @ ns.T - cmat * p[..., None]
        feas = ok_dir & (slack >= 0.0).all(axis=-1)
        pen = np.sort(slack, axis=-1)[..., :nsmall].sum(axis=-1)
        val = p - kappa * pen
        return np.where(feas, val, -np.inf)

    f = objective(z)
    step = np.full(s, 0.1 * gscale)
    dirs = np.zeros((8, 4))
    for i in range(4):
        dirs[2 * i, i] = 1.0
        dirs[2 * i + 1, i] = -1.0
    weights = np.array([1.0, 1.0, 1.0 / gscale, 1.0])
    stop = max(1e-8 * gscale, 1e-10 * scale)
    escaped = np.zeros(s, dtype=bool)
    drifted = np.zeros(s, dtype=bool)
    for _ in range(max_iter):
        if (step <= stop).all():
            break
        cand = z[None, :, :] + dirs[:, None, :] * (
            step[None, :, None] * weights[None, None, :]
        )
        fc = objective(cand)
        arg = fc.argmax(axis=0)
        best = fc[arg, np.arange(s)]
        improve = best > f
        z = np.where(improve[:, None], cand[arg, np.arange(s)], z)
        f = np.where(improve, best, f)
        step = np.where(improve, np.minimum(step * 1.7, 0.5 * gscale), step * 0.5)
        over = z[:, 3] > p_cap
        away = np.abs(z[:, :2] - center).max(axis=1) > drift_cap
        halted = over | away
        if halted.any():
            escaped |= over
            drifted |= away
            z = z.copy()
            step = step.copy()
            z[over, 3] = p_cap
            step[halted] = 0.0
    return z, escaped, drifted


def _make_seeds(region, arc, scale, gscale, center, starts, rng):
    """Seed states: pairwise inward-normal bisector directions plus random
    feasible directions, apexes from Chebyshev-like interior samples."""
    ns, ds = region.normals, region.offsets
    m = len(ns)
    lo, hi = arc
    span = hi - lo
    margin = min(0.02 * span, 0.45 * span)
    thetas = []
    for i in range(m):
        for j in range(i, m):
            v = -(ns[i] + ns[j])
            nv = np.linalg.norm(v)
            if nv < 1e-12:
                continue
            v = v / nv
            if (ns @ v).max() < -DIRECTION_TOL:
                thetas.append(float(np.arctan2(v[1], v[0])))
    need = max(0, starts - len(thetas))
    thetas.extend(rng.uniform(lo + margin, hi - margin, need))
    thetas = np.array(thetas[:starts])
    rng.shuffle(thetas)

    cheb = _chebyshev_point(ns, ds, 0.5 * scale)
    if cheb is None:
        raise NoInscribedParabola("region is empty within the probe box")
    apex0, _ = cheb
    box = min(2.0 * gscale, 0.5 * scale)
    samples = np.vstack(
        [
            center + rng.uniform(-box, box, (4096, 2)),
            rng.uniform(-0.5, 0.5, (512, 2)) * scale,
        ]
    )
    slack = ds[None, :] - samples @ ns.T
    good = samples[slack.min(axis=1) > 0]
    pool = np.vstack([apex0[None, :], good]) if len(good) else apex0[None, :]
    apexes = pool[rng.integers(0, len(pool), starts)]
    apexes[0] = apex0

    u = np.column_stack([np.cos(thetas), np.sin(thetas)])
    npy = u @ ns.T
    npy_safe = np.minimum(npy, -1e-12)
    cmat = (1.0 - npy_safe**2) / (-2.0 * npy_safe)
    e = ds[None, :] - apexes @ ns.T
    with np.errstate(divide="ignore"):
        pmax = np.where(cmat > 1e-300, e / np.maximum(cmat, 1e-300), np.inf).min(axis=1)
    p0 = 0.5 * np.where(np.isfinite(pmax), pmax, 0.1 * gscale)
    p0 = np.clip(p0, 1e-9 * gscale, 1e3 * scale)
    return np.column_stack([apexes, thetas, p0])


def solve_max_parabola(
    region: ConvexRegion,
    starts: int = 64,
    seed: int = 0,
    probe_diameter: float = 1e3,
) -> MaxParabolaSolution:
    """Largest parabola pinned by three boundary tangencies in the region.

    Runs ``starts`` independent pattern searches from seeded apexes and
    axis directions, polishes each converged start exactly along the dual
    pencil of its tangent triple, and merges.  An independent enumeration
    of all tangent triples guards against every start missing the global
    basin.  Tolerances are relative to ``probe_diameter``, the reference
    length for these unbounded regions.

    Raises NoInscribedParabola when no parabola fits at all (parallel or
    surrounding boundary normals, empty region) and UnboundedParameter
    when parabolas fit but their size is unbounded (e.g. a two-line
    wedge).
    """
    scale = float(probe_diameter)
    ns, ds = region.normals, region.offsets
    m = len(ns)
    arc = _feasible_direction_arc(ns)
    if arc is None:
        raise NoInscribedParabola(
            "no axis direction is compatible with every half-plane"
        )
    rng = np.random.default_rng(seed)
    gscale, center = _geometry_scale(ns, ds, scale)
    seeds = _make_seeds(region, arc, scale, gscale, center, starts, rng)

    states = seeds
    escaped = np.zeros(len(seeds), dtype=bool)
    kappa = 8.0
    while True:
        states, escaped, drifted = _coarse_search(
            ns, ds, states, scale, gscale, center, kappa
        )
        bad = escaped | drifted
        if not bad.any() or kappa >= 512.0:
            break
        kappa *= 8.0
        states = np.where(bad[:, None], seeds, states)
    unfinished = escaped | drifted

    polish_cache: dict = {}

    def polish(triple):
        if triple not in polish_cache:
            polish_cache[triple] = _polish_triple(region, triple, scale)
        return polish_cache[triple]

    if m <= 12:
        candidate_triples = list(itertools.combinations(range(m), 3))
    else:
        candidate_triples = set()
        for idx in range(len(states)):
            if unfinished[idx]:
                continue
            ap, th, p = states[idx, :2], states[idx, 2], states[idx, 3]
            u = np.array([np.cos(th), np.sin(th)])
            viol = np.array(
                [
                    halfplane_violation(ap, u, p, h.normal, h.offset)
                    for h in region.halfplanes
                ]
            )
            binding = sorted(int(i) for i in np.argsort(-viol)[:5])
            candidate_triples.update(itertools.combinations(binding, 3))
        candidate_triples = sorted(candidate_triples)

    solutions = [r for t in candidate_triples if (r := polish(t)) is not None]
    if not solutions:
        raise UnboundedParameter(
            "region admits parabolas but no tangent triple pins one; "
            "the parameter is unbounded"
        )

    # assign each non-escaped start to the nearest pinned solution in the
    # scaled state space (which basin did it converge to)
    sol_states = np.array(
        [
            [r[1][0], r[1][1], r[2], r[0]]  # apex_x, apex_y, angle, p
            for r in solutions
        ]
    )
    per_start = []
    for idx in range(len(states)):
        if unfinished[idx]:
            per_start.append(None)
            continue
        z = states[idx]
        dpos = np.abs(sol_states[:, :2] - z[:2]).max(axis=1)
        dth = np.abs((sol_states[:, 2] - z[2] + np.pi) % (2.0 * np.pi) - np.pi)
        dist = np.maximum(dpos, np.maximum(dth * gscale, np.abs(sol_states[:, 3] - z[3])))
        per_start.append(solutions[int(np.argmin(dist))])

    found = [r for r in per_start if r is not None]
    overall = max(solutions, key=lambda r: r[0])

    p_best, apex_best, angle_best, conic_best, _lam, _frame = overall
    agree_tol = max(1e-9 * scale, 1e-7 * p_best)
    agreeing = [r for r in found if abs(r[0] - p_best) <= agree_tol]
    spread = 0.0
    for r in agreeing:
        dth = abs((r[2] - angle_best + np.pi) % (2.0 * np.pi) - np.pi)
        spread = max(
            spread,
            float(np.abs(r[1] - apex_best).max()),
            abs(r[0] - p_best),
            dth * scale / (2.0 * np.pi),
        )

    axis_dir = np.array([np.cos(angle_best), np.sin(angle_best)])
    viol = np.array(
        [
            halfplane_violation(apex_best, axis_dir, p_best, h.normal, h.offset)
            for h in region.halfplanes
        ]
    )
    active = tuple(int(i) for i in np.nonzero(viol >= -1e-7 * scale)[0])
    parabola = Parabola.from_conic(conic_best)
    return MaxParabolaSolution(
        parabola=parabola,
        apex=apex_best,
        axis_angle=angle_best,
        active_constraints=active,
        convergence=Convergence(
            starts=len(seeds), agreeing_starts=len(agreeing), spread=spread
        ),
    )
