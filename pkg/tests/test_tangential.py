"""Tests for perimeter critical points, Hessians, and Morse indices."""

import math

import numpy as np
import pytest

from polyslope import (
    ExceptionalSpace,
    SlopeSystem,
    build_chart,
    critical_gradient_norm,
    hessian_det_identity,
    hessian_fd_comparison,
    morse_index_eigen,
    morse_index_formula,
    perimeter_hessian,
    tangential_critical_points,
)
from polyslope.randomgen import random_convex_slope_system, random_slope_system
from polyslope.tangential import (
    constrained_perimeter,
    perimeter_gradient_fd,
    well_conditioned_chart,
)

from families import bisect_family_root, family_system

EQUILATERAL = SlopeSystem.from_degrees([90, 210, 330])


class TestCriticalPoints:
    def test_equilateral_values(self):
        # Hand algebra: area 1 forces r = sqrt(2/Pi), perimeter = sqrt(2*Pi).
        points = tangential_critical_points(EQUILATERAL)
        assert not isinstance(points, ExceptionalSpace)
        pi_sum = 6 * math.sqrt(3)
        expected_r = math.sqrt(2.0 / pi_sum)
        expected_p = math.sqrt(2.0 * pi_sum)
        assert points[0].inradius == pytest.approx(expected_r, abs=1e-12)
        assert points[0].perimeter == pytest.approx(expected_p, abs=1e-10)
        assert points[0].area == pytest.approx(1.0, abs=1e-12)
        assert points[1].inradius == pytest.approx(-expected_r, abs=1e-12)
        assert points[1].perimeter == pytest.approx(-expected_p, abs=1e-10)
        assert points[1].area == pytest.approx(1.0, abs=1e-12)

    def test_tangency_and_scaling_invariants(self):
        rng = np.random.default_rng(20)
        for _ in range(40):
            n = int(rng.integers(3, 10))
            chart = build_chart(random_slope_system(rng, n))
            points = tangential_critical_points(chart)
            if isinstance(points, ExceptionalSpace):
                continue
            for point in points:
                assert abs(point.area) == pytest.approx(1.0, abs=1e-10)
                assert point.area == pytest.approx(
                    0.5 * point.perimeter * point.inradius, abs=1e-10
                )
                expected_perimeter = chart.perimeter_sum * point.inradius
                assert point.perimeter == pytest.approx(
                    expected_perimeter, abs=1e-10 * max(1.0, abs(expected_perimeter))
                )
                for i, slope in enumerate(chart.system):
                    offset = float(slope.normal @ point.polygon.vertices[i])
                    side = float(slope.normal @ point.incenter) - offset
                    assert side == pytest.approx(point.inradius, abs=1e-9)

    def test_points_share_area_sign_with_perimeter_sum(self):
        rng = np.random.default_rng(21)
        for _ in range(40):
            n = int(rng.integers(3, 9))
            chart = build_chart(random_slope_system(rng, n))
            points = tangential_critical_points(chart)
            if isinstance(points, ExceptionalSpace):
                continue
            for point in points:
                assert math.copysign(1, point.area) == math.copysign(1, chart.perimeter_sum)

    def test_exceptional_at_family_root(self):
        root = bisect_family_root()
        result = tangential_critical_points(family_system(root))
        assert isinstance(result, ExceptionalSpace)

    def test_both_sides_of_family_root_have_points(self):
        root = bisect_family_root()
        for t in (root - 1e-3, root + 1e-3):
            points = tangential_critical_points(family_system(t))
            assert not isinstance(points, ExceptionalSpace)


class TestGradient:
    def test_vanishes_at_critical_points(self):
        rng = np.random.default_rng(22)
        for _ in range(30):
            n = int(rng.integers(4, 10))
            chart = build_chart(random_slope_system(rng, n))
            points = tangential_critical_points(chart)
            if isinstance(points, ExceptionalSpace):
                continue
            for point in points:
                assert critical_gradient_norm(point) < 1e-6

    def test_large_away_from_critical_points(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            n = int(rng.integers(4, 9))
            system = random_slope_system(rng, n)
            chart = well_conditioned_chart(system)
            points = tangential_critical_points(chart)
            if isinstance(points, ExceptionalSpace):
                continue
            point = points[0]
            free = np.full(n - 3, point.inradius)
            free[0] *= 1.3
            target = math.copysign(1.0, chart.perimeter_sum)
            grad = perimeter_gradient_fd(
                chart, free, target, point.inradius, 1e-6 * abs(point.inradius)
            )
            scale = float(np.sum(np.abs(chart.unit_perimeters))) * abs(point.inradius)
            assert float(np.linalg.norm(grad)) > 1e-3 * scale


class TestHessian:
    def test_empty_for_triangles(self):
        points = tangential_critical_points(EQUILATERAL)
        assert points[0].hessian.shape == (0, 0)
        assert perimeter_hessian(points[0]).shape == (0, 0)

    def test_quadrilateral_single_entry(self):
        rng = np.random.default_rng(24)
        chart = build_chart(random_slope_system(rng, 4))
        points = tangential_critical_points(chart)
        p = chart.unit_perimeters
        for point in points:
            expected = -(p[1] / (point.inradius * p[0])) * (p[0] + p[1])
            assert point.hessian.shape == (1, 1)
            assert point.hessian[0, 0] == pytest.approx(expected, rel=1e-12)

    def test_matches_finite_differences_at_documented_step(self):
        # Plain central differences at step 1e-5 * r resolve the Hessian to
        # about 1e-3 of scale in double precision; the Richardson-extrapolated
        # oracle below certifies 1e-5.
        rng = np.random.default_rng(9)
        system = random_slope_system(rng, 6)
        chart = build_chart(system)
        points = tangential_critical_points(chart)
        for point in points:
            closed, fd = hessian_fd_comparison(point, step_factor=1e-5, richardson=False)
            scale = float(np.max(np.abs(closed)))
            rel = np.abs(fd - closed) / np.maximum(np.abs(closed), 1e-2 * scale)
            assert float(np.max(rel)) < 1e-3

    def test_matches_extrapolated_differences_tightly(self):
        rng = np.random.default_rng(25)
        for _ in range(15):
            n = int(rng.integers(4, 9))
            chart = build_chart(random_slope_system(rng, n))
            points = tangential_critical_points(chart)
            if isinstance(points, ExceptionalSpace):
                continue
            for point in points:
                closed, fd = hessian_fd_comparison(point)
                scale = float(np.max(np.abs(closed)))
                rel = np.abs(fd - closed) / np.maximum(np.abs(closed), 1e-2 * scale)
                assert float(np.max(rel)) < 1e-5

    def test_determinant_identity_small_cases(self):
        rng = np.random.default_rng(26)
        for n in (4, 5, 8):
            chart = build_chart(random_slope_system(rng, n))
            points = tangential_critical_points(chart)
            p = chart.unit_perimeters
            for point in points:
                lhs, rhs = hessian_det_identity(point)
                assert lhs == pytest.approx(rhs, rel=1e-9)
                if n == 4:
                    det = float(np.linalg.det(point.hessian))
                    assert det == pytest.approx(
                        -p[1] * chart.perimeter_sum / (p[0] * point.inradius), rel=1e-10
                    )
                if n == 5:
                    lhs5 = point.inradius**2 * float(np.linalg.det(point.hessian))
                    rhs5 = (-p[1] * chart.perimeter_sum / p[0]) * (-p[2])
                    assert lhs5 == pytest.approx(rhs5, rel=1e-9)


class TestMorseIndex:
    def test_triangle_index_zero_both_routes(self):
        rng = np.random.default_rng(27)
        systems = [EQUILATERAL] + [random_slope_system(rng, 3) for _ in range(20)]
        for system in systems:
            points = tangential_critical_points(system)
            if isinstance(points, ExceptionalSpace):
                continue
            for point in points:
                report = morse_index_eigen(point)
                assert report.index_eigen == 0
                assert report.index_formula == 0
                assert report.agreement

    def test_convex_extremes(self):
        rng = np.random.default_rng(28)
        for n in range(4, 10):
            system = random_convex_slope_system(rng, n)
            points = tangential_critical_points(system)
            for point in points:
                report = morse_index_eigen(point)
                expected = 0 if point.inradius > 0 else n - 3
                assert report.index_eigen == expected
                assert report.index_formula == expected

    def test_index_complement_and_agreement(self):
        rng = np.random.default_rng(29)
        for _ in range(60):
            n = int(rng.integers(4, 10))
            chart = build_chart(random_slope_system(rng, n))
            points = tangential_critical_points(chart)
            if isinstance(points, ExceptionalSpace):
                continue
            reports = [morse_index_eigen(point) for point in points]
            assert all(r.agreement for r in reports)
            assert reports[0].index_eigen + reports[1].index_eigen == n - 3

    def test_index_invariant_under_relabeling(self):
        rng = np.random.default_rng(30)
        for _ in range(20):
            n = int(rng.integers(4, 9))
            system = random_slope_system(rng, n)
            base = sorted(
                morse_index_eigen(p).index_eigen
                for p in tangential_critical_points(system)
            )
            for shift in (1, n // 2):
                rotated = sorted(
                    morse_index_eigen(p).index_eigen
                    for p in tangential_critical_points(system.rotated(shift))
                )
                assert rotated == base

    def test_minor_signs_count_negative_eigenvalues(self):
        rng = np.random.default_rng(31)
        chart = build_chart(random_slope_system(rng, 7))
        for point in tangential_critical_points(chart):
            report = morse_index_eigen(point)
            changes = 0
            previous = 1
            for sign in report.minor_signs:
                if sign != previous:
                    changes += 1
                previous = sign
            assert changes == report.index_eigen

    def test_formula_saddle_example(self):
        # A positive-inradius point with one right turn, winding one, and
        # positive perimeter sits at index 1.
        rng = np.random.default_rng(32)
        found = False
        for _ in range(400):
            system = random_slope_system(rng, 5)
            points = tangential_critical_points(system)
            if isinstance(points, ExceptionalSpace):
                continue
            point = points[0] if points[0].inradius > 0 else points[1]
            if point.right_turns == 1 and point.winding == 1 and point.perimeter > 0:
                assert morse_index_formula(point) == 1
                assert morse_index_eigen(point).index_eigen == 1
                found = True
                break
        assert found


class TestConstrainedChart:
    def test_constraint_is_maintained(self):
        rng = np.random.default_rng(33)
        chart = well_conditioned_chart(random_slope_system(rng, 6))
        points = tangential_critical_points(chart)
        point = points[0]
        target = math.copysign(1.0, chart.perimeter_sum)
        free = np.full(3, point.inradius) * np.array([1.1, 0.95, 1.02])
        value = constrained_perimeter(chart, free, target, point.inradius)
        p = chart.unit_perimeters
        # Recover the implicit radius from the reported perimeter and verify
        # the area constraint directly.
        r0 = (value - float(np.sum(p[1:] * free))) / p[0]
        area = 0.5 * (p[0] * r0**2 + float(np.sum(p[1:] * free**2)))
        assert area == pytest.approx(target, abs=1e-12)
