"""Tests for cyclic polygons, duality, and the area Morse index."""

import math

import numpy as np
import pytest

from polyslope import (
    AntipodalVertices,
    Bifurcating,
    CoincidentVertices,
    CyclicPolygon,
    build_chart,
    DegenerateCritical,
    LengthMismatch,
    PolygonChain,
    area_criticality_residual,
    area_morse_index_formula,
    area_morse_index_numeric,
    bifurcation_test,
    cyclic_invariants,
    dual_polygon,
    duality_index_check,
    radii_of_polygon,
    signed_perimeter,
    winding_number,
)
from polyslope.cyclic import cyclic_winding_check
from polyslope.randomgen import random_cyclic_polygon, random_star_polygon

from families import bif_family, bisect_bifurcation_root

SQUARE = CyclicPolygon.from_degrees(1.0, [0, 90, 180, 270])
SQUARE_REVERSED = CyclicPolygon.from_degrees(1.0, [270, 180, 90, 0])
PENTAGRAM = CyclicPolygon.from_degrees(1.0, [0, 144, 288, 72, 216])


class TestInvariants:
    def test_square(self):
        inv = cyclic_invariants(SQUARE)
        assert inv.orientations.tolist() == [1, 1, 1, 1]
        assert np.allclose(inv.half_angles, math.pi / 4)
        assert inv.positive_edges == 4
        assert inv.winding == 1
        assert inv.bifurcation_sum == pytest.approx(4.0)

    def test_square_reversed(self):
        inv = cyclic_invariants(SQUARE_REVERSED)
        assert inv.orientations.tolist() == [-1, -1, -1, -1]
        assert inv.positive_edges == 0
        assert inv.winding == -1
        assert inv.bifurcation_sum == pytest.approx(-4.0)

    def test_pentagram(self):
        inv = cyclic_invariants(PENTAGRAM)
        assert inv.positive_edges == 5
        assert inv.winding == 2
        assert inv.bifurcation_sum == pytest.approx(5 * math.tan(math.radians(72)))

    def test_chord_lengths(self):
        rng = np.random.default_rng(40)
        for _ in range(30):
            cyclic = random_cyclic_polygon(rng, int(rng.integers(4, 8)))
            inv = cyclic_invariants(cyclic)
            chords = cyclic.polygon.edge_lengths
            assert np.allclose(
                chords, 2 * cyclic.radius * np.sin(inv.half_angles), atol=1e-12 * cyclic.radius
            )

    def test_winding_matches_geometric_winding(self):
        rng = np.random.default_rng(41)
        for _ in range(30):
            cyclic = random_cyclic_polygon(rng, int(rng.integers(4, 8)))
            assert cyclic_winding_check(cyclic)
        assert cyclic_invariants(PENTAGRAM).winding == winding_number(
            PENTAGRAM.polygon, PENTAGRAM.center
        )

    def test_validation_errors(self):
        with pytest.raises(CoincidentVertices):
            CyclicPolygon.from_degrees(1.0, [0, 0, 120])
        with pytest.raises(AntipodalVertices):
            CyclicPolygon.from_degrees(1.0, [0, 180.0, 240])
        with pytest.raises(ValueError):
            CyclicPolygon.from_degrees(-1.0, [0, 90, 200])


class TestDualPolygon:
    def test_square_dual_is_circumscribed_square(self):
        dual = dual_polygon(SQUARE)
        expected = np.array([[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]])
        assert np.allclose(dual.polygon.vertices, expected, atol=1e-12)
        assert signed_perimeter(dual.polygon, dual.slopes) == pytest.approx(8.0)

    def test_dual_inscribed_circle(self):
        rng = np.random.default_rng(42)
        for _ in range(30):
            cyclic = random_cyclic_polygon(rng, int(rng.integers(4, 8)))
            dual = dual_polygon(cyclic)
            for i, slope in enumerate(dual.slopes):
                offset = float(slope.normal @ dual.polygon.vertices[i])
                side = float(slope.normal @ cyclic.center) - offset
                assert side == pytest.approx(cyclic.radius, abs=1e-9 * cyclic.radius)

    def test_perimeter_proportional_to_tangent_sum(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            cyclic = random_cyclic_polygon(rng, int(rng.integers(4, 8)))
            inv = cyclic_invariants(cyclic)
            dual = dual_polygon(cyclic)
            measured = signed_perimeter(dual.polygon, dual.slopes)
            expected = 2.0 * cyclic.radius * inv.bifurcation_sum
            scale = 2.0 * cyclic.radius * float(np.sum(np.abs(np.tan(inv.half_angles))))
            assert abs(measured - expected) <= 1e-9 * scale


class TestBifurcation:
    def test_square_and_pentagram_not_bifurcating(self):
        assert not bifurcation_test(SQUARE)
        assert not bifurcation_test(PENTAGRAM)

    def test_root_found_by_bisection_is_bifurcating(self):
        root = bisect_bifurcation_root()
        cyclic = bif_family(root)
        assert bifurcation_test(cyclic)
        dual = dual_polygon(cyclic)
        inv = cyclic_invariants(cyclic)
        scale = 2.0 * cyclic.radius * float(np.sum(np.abs(np.tan(inv.half_angles))))
        assert abs(signed_perimeter(dual.polygon, dual.slopes)) < 1e-9 * scale
        with pytest.raises(DegenerateCritical):
            area_morse_index_numeric(cyclic)
        with pytest.raises(Bifurcating):
            area_morse_index_formula(cyclic)

    def test_off_root_is_generic(self):
        root = bisect_bifurcation_root()
        cyclic = bif_family(root + 0.05)
        assert not bifurcation_test(cyclic)
        assert area_morse_index_numeric(cyclic) == area_morse_index_formula(cyclic)


class TestCriticalityResidual:
    def test_square_is_critical(self):
        square = PolygonChain(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
        assert area_criticality_residual(square, [1, 1, 1, 1]) < 1e-10

    def test_pentagram_is_critical(self):
        polygon = PENTAGRAM.polygon
        assert area_criticality_residual(polygon, polygon.edge_lengths) < 1e-10

    def test_perturbed_square_is_not_critical(self):
        pushed = PolygonChain(
            np.array([[0.0, 0.0], [1.0, 0.0], [1.05, 0.97], [0.0, 1.0]])
        )
        assert area_criticality_residual(pushed, pushed.edge_lengths) > 1e-3

    def test_length_mismatch_rejected(self):
        square = PolygonChain(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
        with pytest.raises(LengthMismatch):
            area_criticality_residual(square, [1, 1, 1, 1.01])


class TestAreaIndex:
    def test_convex_counterclockwise_is_max(self):
        rng = np.random.default_rng(44)
        for n in range(4, 8):
            while True:
                cyclic = random_cyclic_polygon(rng, n)
                inv = cyclic_invariants(cyclic)
                if inv.positive_edges == n and inv.winding == 1:
                    break
            assert area_morse_index_numeric(cyclic) == n - 3
            assert area_morse_index_formula(cyclic) == n - 3

    def test_convex_clockwise_is_min(self):
        rng = np.random.default_rng(45)
        while True:
            cyclic = random_cyclic_polygon(rng, 5)
            inv = cyclic_invariants(cyclic)
            if inv.positive_edges == 0 and inv.winding == -1:
                break
        assert area_morse_index_numeric(cyclic) == 0
        assert area_morse_index_formula(cyclic) == 0

    def test_reversed_square_formula(self):
        # e = 0, winding -1, negative tangent sum: 0 - 1 + 2 - 1 = 0.
        assert area_morse_index_formula(SQUARE_REVERSED) == 0

    def test_pentagram_index_zero(self):
        assert area_morse_index_numeric(PENTAGRAM) == 0
        assert area_morse_index_formula(PENTAGRAM) == 0

    def test_numeric_matches_formula_on_random_polygons(self):
        rng = np.random.default_rng(46)
        for _ in range(60):
            cyclic = random_cyclic_polygon(rng, int(rng.integers(4, 8)))
            if bifurcation_test(cyclic):
                continue
            assert area_morse_index_numeric(cyclic) == area_morse_index_formula(cyclic)


class TestDuality:
    def test_pentagram_duality(self):
        report = duality_index_check(PENTAGRAM)
        assert report.mu_area_numeric == 0
        assert report.mu_area_formula == 0
        assert report.mu_dual_perimeter == 2
        assert report.identity_holds

    def test_convex_duality(self):
        rng = np.random.default_rng(47)
        for n in range(4, 7):
            while True:
                cyclic = random_cyclic_polygon(rng, n)
                inv = cyclic_invariants(cyclic)
                if inv.positive_edges == n and inv.winding == 1:
                    break
            report = duality_index_check(cyclic)
            assert report.mu_area_numeric == n - 3
            assert report.mu_dual_perimeter == 0
            assert report.identity_holds

    def test_reversed_pentagram(self):
        # All edges negatively oriented, winding -2: index 0 - 1 + 4 - 1 = 2.
        reversed_star = CyclicPolygon.from_degrees(1.0, [216, 72, 288, 144, 0])
        inv = cyclic_invariants(reversed_star)
        assert inv.positive_edges == 0
        assert inv.winding == -2
        assert area_morse_index_numeric(reversed_star) == 2
        assert area_morse_index_formula(reversed_star) == 2
        report = duality_index_check(reversed_star)
        assert report.mu_dual_perimeter == 0
        assert report.identity_holds

    def test_dual_radii_in_own_chart(self):
        # The dual polygon is tangential for its own slope system with every
        # decomposition radius equal to +R.
        rng = np.random.default_rng(49)
        for _ in range(20):
            cyclic = random_cyclic_polygon(rng, int(rng.integers(4, 8)))
            dual = dual_polygon(cyclic)
            chart = build_chart(dual.slopes)
            radii = radii_of_polygon(chart, dual.polygon)
            assert np.allclose(radii, cyclic.radius, atol=1e-9 * cyclic.radius)

    def test_random_duality_identity(self):
        rng = np.random.default_rng(48)
        stars = 0
        for trial in range(80):
            if trial % 4 == 3:
                n = 5 if trial % 2 else 7
                cyclic = random_star_polygon(rng, n, 2)
                stars += 1
            else:
                cyclic = random_cyclic_polygon(rng, int(rng.integers(4, 8)))
            if bifurcation_test(cyclic):
                continue
            report = duality_index_check(cyclic)
            assert report.identity_holds
        assert stars >= 10

    def test_bifurcating_input_rejected(self):
        root = bisect_bifurcation_root()
        with pytest.raises(Bifurcating):
            duality_index_check(bif_family(root))
