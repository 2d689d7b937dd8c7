"""Containment tests and the pinned maximal-parabola solver."""

import itertools

import numpy as np
import pytest

from conic_extrema import (
    ConvexRegion,
    HalfPlane,
    NoInscribedParabola,
    Triangle,
    UnboundedParameter,
    exparabolas,
    halfplane_violation,
    parabola_from_apex,
    parabola_in_halfplane,
    solve_max_parabola,
    triangle_region,
)
from conic_extrema.maxparabola import _polish_triple
from conftest import random_pinned_region, random_triangle

UP_PARABOLA = parabola_from_apex([0.0, 0.0], np.pi / 2.0, 2.0)  # x^2 = 4y


class TestHalfplaneContainment:
    def test_open_halfplane_below(self):
        # y >= -1, normal (0, -1), offset 1: parabola opens away, fits
        assert parabola_in_halfplane(UP_PARABOLA, HalfPlane([0.0, -1.0], 1.0))

    def test_recession_violated(self):
        # y <= 10 caps the opening direction
        assert not parabola_in_halfplane(UP_PARABOLA, HalfPlane([0.0, 1.0], 10.0))

    def test_axis_parallel_boundary(self):
        # x >= 0: the boundary x = 0 runs along the axis and cuts the
        # interior, so containment fails
        assert not parabola_in_halfplane(UP_PARABOLA, HalfPlane([-1.0, 0.0], 0.0))

    def test_tangency_counts_as_contained(self):
        # y >= 0 touches at the apex only
        assert parabola_in_halfplane(UP_PARABOLA, HalfPlane([0.0, -1.0], 0.0))

    def test_violation_units(self):
        axis = np.array([0.0, 1.0])
        # shifted boundary y >= 0.5 penetrates by exactly 0.5
        v = halfplane_violation([0.0, 0.0], axis, 2.0, np.array([0.0, -1.0]), -0.5)
        assert v == pytest.approx(0.5, abs=1e-12)
        # slanted tangent line of x^2 = 4y: y = x - 1 touches at (2, 1)
        n = np.array([1.0, -1.0]) / np.sqrt(2.0)
        v2 = halfplane_violation([0.0, 0.0], axis, 2.0, n, 1.0 / np.sqrt(2.0))
        assert v2 == pytest.approx(0.0, abs=1e-12)


class TestTriangleRegion:
    def test_worked_region(self):
        t = Triangle([-1.0, 0.0], [1.0, 0.0], [0.0, 1.0])
        region = triangle_region(t, "C")
        assert region.contains_point([0.0, -0.5])
        assert not region.contains_point([0.0, 0.5])  # C side is excluded
        assert region.contains_point([0.0, 0.0], tol=1e-12)  # on side AB

    def test_exparabola_fits_its_region(self, rng):
        for _ in range(20):
            t = random_triangle(rng)
            for r in exparabolas(t):
                region = triangle_region(t, r.opposite_vertex)
                for h in region.halfplanes:
                    assert parabola_in_halfplane(r.parabola, h, tol=1e-8 * t.diameter)


class TestSolver:
    def test_worked_triangle(self):
        t = Triangle([-1.0, 0.0], [1.0, 0.0], [0.0, 1.0])
        sol = solve_max_parabola(triangle_region(t, "C"), starts=64, seed=0)
        assert sol.parabola.parameter == pytest.approx(2.0, rel=1e-10)
        assert abs(sol.apex[0]) <= 1e-9
        assert sol.apex[1] <= 1e-9  # apex on the y-axis, at or below the origin
        assert sol.axis_angle == pytest.approx(1.5 * np.pi, abs=1e-9)
        assert set(sol.active_constraints) == {0, 1, 2}
        assert sol.convergence.agreeing_starts >= 1
        assert sol.convergence.spread <= 1e-5 * 1e3

    def test_strip_has_no_parabola(self):
        region = ConvexRegion([HalfPlane([0.0, 1.0], 1.0), HalfPlane([0.0, -1.0], 1.0)])
        with pytest.raises(NoInscribedParabola):
            solve_max_parabola(region, seed=0)

    def test_wedge_is_unbounded(self):
        region = ConvexRegion([HalfPlane([0.0, 1.0], 1.0), HalfPlane([1.0, 0.0], 1.0)])
        with pytest.raises(UnboundedParameter):
            solve_max_parabola(region, seed=0)

    def test_oracle_agreement_small_batch(self, rng):
        for _ in range(10):
            t = random_triangle(rng, min_ratio=0.06)
            opp = rng.choice(["A", "B", "C"])
            expected = next(
                r.parabola.parameter for r in exparabolas(t) if r.opposite_vertex == opp
            )
            sol = solve_max_parabola(triangle_region(t, opp), starts=16, seed=3)
            assert sol.parabola.parameter == pytest.approx(expected, rel=1e-6)

    def test_solution_feasible(self, rng):
        for trial in range(8):
            region, _ = random_pinned_region(rng)
            sol = solve_max_parabola(region, starts=24, seed=trial)
            axis = np.array([np.cos(sol.axis_angle), np.sin(sol.axis_angle)])
            for h in region.halfplanes:
                v = halfplane_violation(
                    sol.apex, axis, sol.parabola.parameter, h.normal, h.offset
                )
                assert v <= 1e-7 * 1e3
            assert len(sol.active_constraints) >= 3

    def test_multistart_agreement(self, rng):
        for trial in range(6):
            region, _ = random_pinned_region(rng)
            sol = solve_max_parabola(region, starts=32, seed=trial + 50)
            assert sol.convergence.agreeing_starts >= 1
            assert sol.convergence.spread <= 1e-4 * 1e3

    def test_matches_triple_enumeration(self, rng):
        for trial in range(6):
            region, _ = random_pinned_region(rng)
            sol = solve_max_parabola(region, starts=24, seed=trial + 99)
            best = None
            for triple in itertools.combinations(range(len(region.halfplanes)), 3):
                res = _polish_triple(region, triple, 1e3)
                if res is not None and (best is None or res[0] > best):
                    best = res[0]
            assert sol.parabola.parameter == pytest.approx(best, rel=1e-12)

    def test_fixed_triple_monotone_under_added_halfplane(self, rng):
        # Adding a half-plane can only shrink the admissible tangency
        # interval of any fixed triple, so that triple's optimum never
        # increases.  (The overall pinned optimum is NOT monotone: a new
        # boundary line also brings a new tangency opportunity, which can
        # pin a strictly larger parabola; see test below.)
        for trial in range(8):
            t = random_triangle(rng, min_ratio=0.06)
            region = triangle_region(t, "C")
            base = _polish_triple(region, (0, 1, 2), 1e3)
            p0, apex, angle = base[0], base[1], base[2]
            axis = np.array([np.cos(angle), np.sin(angle)])
            n = -axis
            sup = halfplane_violation(apex, axis, p0, n, 0.0)
            cut = ConvexRegion(
                list(region.halfplanes) + [HalfPlane(n, sup - 0.05 * p0)]
            )
            res = _polish_triple(cut, (0, 1, 2), 1e3)
            assert res is None or res[0] <= p0 * (1.0 + 1e-12)
            keep = ConvexRegion(
                list(region.halfplanes) + [HalfPlane(n, sup + 0.5 * p0)]
            )
            res2 = _polish_triple(keep, (0, 1, 2), 1e3)
            assert res2[0] == pytest.approx(p0, rel=1e-12)

    def test_new_boundary_line_can_increase_pinned_optimum(self, rng):
        # counterexample to naive monotonicity of the pinned optimum
        t = random_triangle(rng, min_ratio=0.06)
        region = triangle_region(t, "C")
        sol = solve_max_parabola(region, starts=16, seed=0)
        p0 = sol.parabola.parameter
        axis = np.array([np.cos(sol.axis_angle), np.sin(sol.axis_angle)])
        n = -axis
        sup = halfplane_violation(sol.apex, axis, p0, n, 0.0)
        cut = ConvexRegion(list(region.halfplanes) + [HalfPlane(n, sup - 0.05 * p0)])
        sol2 = solve_max_parabola(cut, starts=16, seed=0)
        assert sol2.parabola.parameter > p0
