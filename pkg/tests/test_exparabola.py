"""Canonical frames, the tangent dual pencil, the cubic, and exparabolas."""

import numpy as np
import pytest

from conic_extrema import (
    DegenerateTriangle,
    SingularPencilMember,
    Triangle,
    canonical_frame,
    dual_pencil,
    exparabolas,
    pencil_parabola,
    solve_cubic,
    squared_parameter,
    tangency_cubic,
)
from conic_extrema.exparabola import CanonicalFrame
from conic_extrema.maxparabola import halfplane_violation, triangle_region
from conic_extrema.parabola import apex_form, is_parabola
from conic_extrema.projective import adjugate, dualize, proj_equal
from conftest import random_frame_params, random_triangle

WORKED = Triangle([-1.0, 0.0], [1.0, 0.0], [0.0, 1.0])


def frame_of(a1, b1, c2):
    return CanonicalFrame(a1=a1, b1=b1, c2=c2, world_to_frame=np.eye(3))


def side_lines_of(frame):
    """Homogeneous coordinates of the three frame side lines."""
    a1, b1, c2 = frame.a1, frame.b1, frame.c2
    return np.array(
        [
            [-b1 * c2, c2, b1],  # c2 x + b1 y = b1 c2
            [-a1 * c2, c2, a1],  # c2 x + a1 y = a1 c2
            [0.0, 0.0, 1.0],  # y = 0
        ]
    )


class TestCanonicalFrame:
    def test_worked_identity_frame(self):
        fr = canonical_frame(WORKED, "AB")
        assert fr.a1 == pytest.approx(-1.0, abs=1e-14)
        assert fr.b1 == pytest.approx(1.0, abs=1e-14)
        assert fr.c2 == pytest.approx(1.0, abs=1e-14)
        assert np.allclose(fr.to_frame([0.0, 1.0]), [0.0, 1.0], atol=1e-14)

    def test_rotated_triangle_same_frame(self):
        rot = np.array([[0.0, -1.0], [1.0, 0.0]])
        t2 = Triangle(rot @ WORKED.A, rot @ WORKED.B, rot @ WORKED.C)
        fr = canonical_frame(t2, "AB")
        assert fr.a1 == pytest.approx(-1.0, abs=1e-12)
        assert fr.b1 == pytest.approx(1.0, abs=1e-12)
        assert fr.c2 == pytest.approx(1.0, abs=1e-12)

    def test_altitude_foot_example(self):
        # altitude from C = (1, 3) onto AB (the x-axis) has foot (1, 0)
        t = Triangle([0.0, 0.0], [4.0, 0.0], [1.0, 3.0])
        fr = canonical_frame(t, "AB")
        assert fr.a1 == pytest.approx(-1.0, abs=1e-12)
        assert fr.b1 == pytest.approx(3.0, abs=1e-12)
        assert fr.c2 == pytest.approx(3.0, abs=1e-12)
        assert np.allclose(fr.to_world([0.0, 0.0]), [1.0, 0.0], atol=1e-12)

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateTriangle):
            Triangle([0.0, 0.0], [1.0, 0.0], [2.0, 1e-12])

    def test_round_trip_world_frame(self, rng):
        for _ in range(50):
            t = random_triangle(rng)
            fr = canonical_frame(t, "BC")
            pt = rng.uniform(-3, 3, 2)
            assert np.allclose(fr.to_world(fr.to_frame(pt)), pt, atol=1e-10)


class TestDualPencil:
    def test_side_lines_and_infinity_on_dual(self, rng):
        for _ in range(50):
            fr = frame_of(*random_frame_params(rng))
            lam = rng.uniform(-5.0, 5.0)
            d = dual_pencil(fr, lam)
            scale = np.abs(d.m).max()
            for u in side_lines_of(fr):
                assert abs(u @ d.m @ u) <= 1e-10 * scale * (u @ u)
            linf = np.array([1.0, 0.0, 0.0])
            assert abs(linf @ d.m @ linf) <= 1e-12 * scale

    def test_entries_at_lambda_zero(self):
        fr = frame_of(-1.0, 1.0, 1.0)
        assert np.allclose(
            dual_pencil(fr, 0.0).m,
            [[0.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 0.0]],
        )

    def test_dualized_member_is_parabola(self, rng):
        for _ in range(50):
            fr = frame_of(*random_frame_params(rng))
            lam = rng.uniform(fr.a1 + 0.1, fr.b1 - 0.1)
            assert is_parabola(dualize(dual_pencil(fr, lam)))


class TestPencilParabola:
    def test_worked_member_is_down_parabola(self):
        fr = frame_of(-1.0, 1.0, 1.0)
        para = pencil_parabola(fr, 0.0)
        # x^2 = -4y
        expected = np.array([[0.0, 0.0, 2.0], [0.0, 1.0, 0.0], [2.0, 0.0, 0.0]])
        assert proj_equal(para.conic.m, expected)
        assert para.parameter == pytest.approx(2.0, rel=1e-12)
        # tangent-line oracle: dual form vanishes on x+y=1, x-y=-1, y=0
        ad = adjugate(para.conic.m)
        for u in ([-1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [0.0, 0.0, 1.0]):
            u = np.asarray(u)
            assert abs(u @ ad @ u) <= 1e-12 * np.abs(ad).max() * (u @ u)

    def test_singular_members_rejected(self):
        fr = frame_of(-1.0, 1.0, 1.0)
        with pytest.raises(SingularPencilMember):
            pencil_parabola(fr, -1.0)
        with pytest.raises(SingularPencilMember):
            pencil_parabola(fr, 1.0)

    def test_tangency_point_on_parabola_and_side(self):
        fr = frame_of(-1.0, 1.0, 1.0)
        para = pencil_parabola(fr, 0.3)
        v = np.array([1.0, 0.3, 0.0])
        assert abs(v @ para.conic.m @ v) <= 1e-12 * np.abs(para.conic.m).max()


class TestSquaredParameter:
    def test_worked_values(self):
        fr = frame_of(-1.0, 1.0, 1.0)
        assert squared_parameter(fr, 0.0) == pytest.approx(4.0, rel=1e-14)
        assert squared_parameter(fr, -1.0) == 0.0
        assert squared_parameter(fr, 1e8) < 1e-15
        assert squared_parameter(fr, -1e8) < 1e-15

    def test_matches_parameter_of_member(self, rng):
        for _ in range(100):
            fr = frame_of(*random_frame_params(rng))
            span = fr.b1 - fr.a1
            lam = rng.uniform(fr.a1 + 0.02 * span, fr.b1 - 0.02 * span)
            para = pencil_parabola(fr, lam)
            assert squared_parameter(fr, lam) == pytest.approx(
                para.parameter**2, rel=1e-9
            )

    def test_denominator_positive(self, rng):
        for _ in range(200):
            a1, b1, c2 = random_frame_params(rng)
            lam = rng.uniform(-1e3, 1e3) * max(abs(a1), abs(b1), c2)
            den = (lam - a1 - b1) ** 2 + c2**2
            assert den > 0.0


class TestTangencyCubic:
    def test_worked_coefficients(self):
        assert np.allclose(tangency_cubic(frame_of(-1.0, 1.0, 1.0)), [1.0, 0.0, -5.0, 0.0])

    def test_sign_identity(self, rng):
        for _ in range(1000):
            a1, b1, c2 = random_frame_params(rng)
            coeffs = tangency_cubic(frame_of(a1, b1, c2))
            ev = np.polyval(coeffs, [a1, b1])
            lhs = ev[0] * ev[1]
            rhs = -(b1**2 + c2**2) * (a1 - b1) ** 2 * (a1**2 + c2**2)
            assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_three_real_roots_one_inside(self, rng):
        for _ in range(1000):
            fr = frame_of(*random_frame_params(rng))
            roots = solve_cubic(tangency_cubic(fr))
            assert len(roots) == 3
            inside = roots[(roots > fr.a1) & (roots < fr.b1)]
            assert inside.size == 1

    def test_solve_cubic_against_numpy(self, rng):
        for _ in range(200):
            r = np.sort(rng.uniform(-5, 5, 3))
            if r[1] - r[0] < 0.05 or r[2] - r[1] < 0.05:
                continue
            coeffs = np.array([1.0, -r.sum(), r[0] * r[1] + r[0] * r[2] + r[1] * r[2], -r.prod()])
            assert np.allclose(solve_cubic(coeffs), r, atol=1e-9)

    def test_derivative_vanishes_at_roots(self, rng):
        for _ in range(200):
            fr = frame_of(*random_frame_params(rng))
            roots = solve_cubic(tangency_cubic(fr))
            h = 1e-6 * (fr.b1 - fr.a1)
            scale = max(squared_parameter(fr, lam) for lam in roots)
            for lam in roots:
                d = (squared_parameter(fr, lam + h) - squared_parameter(fr, lam - h)) / (2 * h)
                assert abs(d) <= 1e-7 * max(scale, 1e-12)

    def test_derivative_identity(self, rng):
        # d(p^2)/dlam * den^4 / (8 c2^4) = (b1 - lam)(lam - a1) E(lam)
        for _ in range(200):
            fr = frame_of(*random_frame_params(rng))
            a1, b1, c2 = fr.a1, fr.b1, fr.c2
            span = b1 - a1
            lam = rng.uniform(a1 - span, b1 + span)
            h = 1e-6 * span
            d = (squared_parameter(fr, lam + h) - squared_parameter(fr, lam - h)) / (2 * h)
            den = (lam - a1 - b1) ** 2 + c2**2
            lhs = d * den**4 / (8.0 * c2**4)
            rhs = (b1 - lam) * (lam - a1) * np.polyval(tangency_cubic(fr), lam)
            if abs(rhs) > 1e-6 * span**5:
                assert lhs == pytest.approx(rhs, rel=1e-5)

    def test_squared_parameter_unimodal_between_endpoints(self, rng):
        # every local maximum on (a1, b1) is the global one: values rise
        # to the interior root and fall after it
        for _ in range(200):
            fr = frame_of(*random_frame_params(rng))
            lams = np.linspace(fr.a1, fr.b1, 201)[1:-1]
            vals = squared_parameter(fr, lams)
            d = np.diff(vals)
            sign_changes = np.sum(np.diff(np.sign(d[np.abs(d) > 0])) != 0)
            assert sign_changes <= 1


class TestExparabolas:
    def test_worked_triangle(self):
        res = exparabolas(WORKED)
        assert len(res) == 3
        by_side = {r.side: r for r in res}
        ab = by_side["AB"]
        assert ab.opposite_vertex == "C"
        assert abs(ab.lam) <= 1e-12
        assert ab.parabola.parameter == pytest.approx(2.0, rel=1e-12)
        assert np.allclose(ab.tangency, [0.0, 0.0], atol=1e-12)
        # mirror symmetry: the two other exparabolas are congruent
        assert by_side["BC"].parabola.parameter == pytest.approx(
            by_side["CA"].parabola.parameter, rel=1e-12
        )

    def test_equilateral_symmetry(self):
        t = Triangle([0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2])
        res = exparabolas(t)
        params = [r.parabola.parameter for r in res]
        assert np.allclose(params, params[0], rtol=1e-10)
        mids = {"AB": (t.A + t.B) / 2, "BC": (t.B + t.C) / 2, "CA": (t.C + t.A) / 2}
        for r in res:
            assert np.allclose(r.tangency, mids[r.side], atol=1e-9)

    def test_tangent_to_all_side_lines(self, rng):
        for _ in range(50):
            t = random_triangle(rng)
            lines = []
            for v1, v2 in ((t.A, t.B), (t.B, t.C), (t.C, t.A)):
                e = v2 - v1
                n = np.array([-e[1], e[0]])
                n = n / np.linalg.norm(n)
                lines.append(np.array([-float(n @ v1), n[0], n[1]]))
            for r in exparabolas(t):
                ad = adjugate(r.parabola.conic.m)
                for u in lines:
                    res = abs(u @ ad @ u) / (np.abs(ad).max() * (u @ u))
                    assert res <= 1e-9

    def test_region_placement(self, rng):
        for _ in range(30):
            t = random_triangle(rng)
            for r in exparabolas(t):
                region = triangle_region(t, r.opposite_vertex)
                apex, angle, p = apex_form(r.parabola.conic)
                axis = np.array([np.cos(angle), np.sin(angle)])
                for h in region.halfplanes:
                    v = halfplane_violation(apex, axis, p, h.normal, h.offset)
                    assert v <= 1e-9 * t.diameter

    def test_rigid_motion_invariance_and_scaling(self, rng):
        for _ in range(20):
            t = random_triangle(rng)
            base = sorted(r.parabola.parameter for r in exparabolas(t))
            ang = rng.uniform(0, 2 * np.pi)
            shift = rng.uniform(-5, 5, 2)
            rot = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
            t2 = Triangle(rot @ t.A + shift, rot @ t.B + shift, rot @ t.C + shift)
            moved = sorted(r.parabola.parameter for r in exparabolas(t2))
            assert np.allclose(base, moved, rtol=1e-9)
            sigma = rng.uniform(0.3, 4.0)
            t3 = Triangle(sigma * t.A, sigma * t.B, sigma * t.C)
            scaled = sorted(r.parabola.parameter for r in exparabolas(t3))
            assert np.allclose(scaled, [sigma * b for b in base], rtol=1e-9)

    def test_cross_frame_consistency(self, rng):
        # the out-of-interval roots of one side's cubic reproduce the
        # other two exparabolas' parameters
        for _ in range(20):
            t = random_triangle(rng)
            res = exparabolas(t)
            params = sorted(r.parabola.parameter for r in res)
            fr = canonical_frame(t, "AB")
            roots = solve_cubic(tangency_cubic(fr))
            from_one_frame = sorted(np.sqrt(squared_parameter(fr, lam)) for lam in roots)
            assert np.allclose(params, from_one_frame, rtol=1e-9)
