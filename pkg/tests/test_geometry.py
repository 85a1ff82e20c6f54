"""Tests for the planar primitives."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyslope import (
    CoincidentVertices,
    DirectedSlope,
    ParallelLines,
    PointOnBoundary,
    PolygonChain,
    SlopeMismatch,
    SlopeSystem,
    line_angle,
    oriented_area,
    signed_perimeter,
    turn_counts,
    turning_sum,
    winding_number,
)

UNIT_SQUARE = PolygonChain(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


@st.composite
def polygon_strategy(draw, max_n=8):
    # Vertices on a jittered circle: consecutive distinctness is structural.
    n = draw(st.integers(min_value=3, max_value=max_n))
    radii = [draw(st.floats(min_value=0.5, max_value=2.0)) for _ in range(n)]
    jitter = [draw(st.floats(min_value=-0.3, max_value=0.3)) for _ in range(n)]
    angles = [2 * math.pi * k / n + jitter[k] for k in range(n)]
    verts = np.array(
        [[r * math.cos(a), r * math.sin(a)] for r, a in zip(radii, angles)]
    )
    return PolygonChain(verts)


class TestOrientedArea:
    def test_unit_square(self):
        assert oriented_area(UNIT_SQUARE) == pytest.approx(1.0)

    def test_reversed_square(self):
        assert oriented_area(UNIT_SQUARE.reversed_orientation()) == pytest.approx(-1.0)

    def test_bowtie_cancels(self):
        bowtie = PolygonChain(np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]))
        assert oriented_area(bowtie) == pytest.approx(0.0, abs=1e-15)

    @settings(max_examples=60, deadline=None)
    @given(polygon_strategy(), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
    def test_translation_invariance(self, polygon, dx, dy):
        # Shoelace roundoff scales with the squared coordinate magnitude.
        scale = max(1.0, polygon.diameter, abs(dx), abs(dy)) ** 2
        moved = polygon.translated([dx, dy])
        assert abs(oriented_area(moved) - oriented_area(polygon)) <= 1e-12 * scale

    @settings(max_examples=60, deadline=None)
    @given(polygon_strategy())
    def test_reversal_negates(self, polygon):
        scale = max(1.0, polygon.diameter) ** 2
        total = oriented_area(polygon) + oriented_area(polygon.reversed_orientation())
        assert abs(total) <= 1e-12 * scale


class TestWindingNumber:
    def test_square_center(self):
        assert winding_number(UNIT_SQUARE, [0.5, 0.5]) == 1

    def test_far_point(self):
        assert winding_number(UNIT_SQUARE, [10.0, 10.0]) == 0

    def test_double_traversal(self):
        doubled = PolygonChain(np.vstack([UNIT_SQUARE.vertices, UNIT_SQUARE.vertices]))
        assert winding_number(doubled, [0.5, 0.5]) == 2

    def test_point_on_edge_rejected(self):
        with pytest.raises(PointOnBoundary):
            winding_number(UNIT_SQUARE, [0.5, 0.0])

    def test_simple_ccw_polygon_interior(self):
        hexagon = PolygonChain(
            np.array(
                [[math.cos(2 * math.pi * k / 6), math.sin(2 * math.pi * k / 6)] for k in range(6)]
            )
        )
        assert winding_number(hexagon, [0.05, -0.1]) == 1


class TestLineAngle:
    def test_zero_to_sixty(self):
        a = DirectedSlope.from_degrees(0)
        b = DirectedSlope.from_degrees(60)
        assert line_angle(a, b) == pytest.approx(math.pi / 3)

    def test_sixty_to_zero(self):
        a = DirectedSlope.from_degrees(60)
        b = DirectedSlope.from_degrees(0)
        assert line_angle(a, b) == pytest.approx(2 * math.pi / 3)

    def test_parallel_rejected(self):
        with pytest.raises(ParallelLines):
            line_angle(DirectedSlope.from_degrees(10), DirectedSlope.from_degrees(190))

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.0, 360.0), st.floats(0.0, 360.0))
    def test_complement_sums_to_pi(self, a_deg, b_deg):
        a = DirectedSlope.from_degrees(a_deg)
        b = DirectedSlope.from_degrees(b_deg)
        gap = (a.angle - b.angle) % math.pi
        if min(gap, math.pi - gap) < 1e-6:
            return
        assert line_angle(a, b) + line_angle(b, a) == pytest.approx(math.pi)


class TestTurning:
    def test_three_sixty_degree_steps(self):
        t, k = turning_sum(SlopeSystem.from_degrees([0, 60, 120]))
        assert t == pytest.approx(math.pi)
        assert k == 1

    def test_three_onetwenty_degree_steps(self):
        t, k = turning_sum(SlopeSystem.from_degrees([0, 120, 60]))
        assert t == pytest.approx(2 * math.pi)
        assert k == 2

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 12])
    def test_range_of_turning_multiple(self, n):
        rng = np.random.default_rng(n)
        from polyslope.randomgen import random_slope_system

        for _ in range(20):
            system = random_slope_system(rng, n)
            _, k = turning_sum(system)
            assert 1 <= k <= n - 1

    def test_recursion(self):
        rng = np.random.default_rng(5)
        from polyslope.randomgen import random_slope_system

        for _ in range(50):
            n = int(rng.integers(4, 10))
            system = random_slope_system(rng, n)
            total, _ = turning_sum(system)
            head = SlopeSystem(system.slopes[:-1])
            tail = SlopeSystem((system.slopes[0], system.slopes[-2], system.slopes[-1]))
            rhs = turning_sum(head)[0] + turning_sum(tail)[0] - math.pi
            assert total == pytest.approx(rhs, abs=1e-9)


class TestTurnCounts:
    def test_quarter_turns_left(self):
        assert turn_counts(SlopeSystem.from_degrees([0, 90, 180, 270])) == (0, 4)

    def test_quarter_turns_right(self):
        assert turn_counts(SlopeSystem.from_degrees([0, 270, 180, 90])) == (4, 0)

    def test_counts_sum_to_n(self):
        rng = np.random.default_rng(17)
        from polyslope.randomgen import random_slope_system

        for _ in range(50):
            n = int(rng.integers(3, 12))
            right, left = turn_counts(random_slope_system(rng, n))
            assert right + left == n


class TestSignedPerimeter:
    def setup_method(self):
        self.triangle = PolygonChain(
            np.array([[0.0, 0.0], [2.0, 0.0], [1.0, math.sqrt(3.0)]])
        )
        self.slopes = [
            DirectedSlope.from_degrees(0),
            DirectedSlope.from_degrees(120),
            DirectedSlope.from_degrees(240),
        ]

    def test_codirected_gives_total_length(self):
        total = signed_perimeter(self.triangle, self.slopes)
        assert total == pytest.approx(6.0)

    def test_reversed_slopes_negate(self):
        flipped = [s.reversed() for s in self.slopes]
        assert signed_perimeter(self.triangle, flipped) == pytest.approx(-6.0)

    def test_point_reflection_negates(self):
        reflected = PolygonChain(-self.triangle.vertices)
        assert signed_perimeter(reflected, self.slopes) == pytest.approx(-6.0)

    def test_slope_mismatch_rejected(self):
        bad = [
            DirectedSlope.from_degrees(10),
            DirectedSlope.from_degrees(120),
            DirectedSlope.from_degrees(240),
        ]
        with pytest.raises(SlopeMismatch):
            signed_perimeter(self.triangle, bad)


class TestConstruction:
    def test_directed_slope_reduces_angle(self):
        assert DirectedSlope(2 * math.pi + 0.5).angle == pytest.approx(0.5)
        assert DirectedSlope(-0.5).angle == pytest.approx(2 * math.pi - 0.5)

    def test_consecutive_parallel_rejected(self):
        with pytest.raises(ParallelLines):
            SlopeSystem.from_degrees([0, 180, 90])

    def test_pairwise_check_catches_opposite_pairs(self):
        system = SlopeSystem.from_degrees([0, 90, 180, 270])
        with pytest.raises(ParallelLines):
            system.require_pairwise_nonparallel()

    def test_coincident_vertices_rejected(self):
        with pytest.raises(CoincidentVertices):
            PolygonChain(np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]]))

    def test_too_few_vertices_rejected(self):
        with pytest.raises(ValueError):
            PolygonChain(np.array([[0.0, 0.0], [1.0, 0.0]]))
