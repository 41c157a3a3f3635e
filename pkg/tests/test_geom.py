import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vispuzzle import geom
from vispuzzle.errors import DegenerateGeometry, InvalidState

from oracles import bisect_slide, raster_iou, sampled_overlap


def square(cx, cy, side=1.0, heading=0.0):
    return geom.OrientedRect(geom.Point2(cx, cy), side, side, heading)


class TestOverlap:
    def test_disjoint_squares(self):
        assert geom.overlap(square(0, 0), square(3, 0)) is False

    def test_identical_squares(self):
        assert geom.overlap(square(0, 0), square(0, 0)) is True

    def test_rotated_square_pair_matches_sampling_oracle(self):
        a = square(0, 0)
        b = square(0.5, 0, heading=45.0)
        expected = sampled_overlap(a.corners(), b.corners(), samples=10_000)
        assert expected is True
        assert geom.overlap(a, b) is True

    def test_touching_edges_is_not_overlap(self):
        assert geom.overlap(square(0, 0), square(1.0, 0)) is False

    def test_zero_area_raises(self):
        with pytest.raises(DegenerateGeometry):
            square(0, 0, side=0.0)

    def test_symmetry_on_random_pairs(self):
        rng = random.Random(7)
        for _ in range(200):
            a = square(rng.uniform(-2, 2), rng.uniform(-2, 2),
                       side=rng.uniform(0.2, 2), heading=rng.uniform(-180, 179))
            b = square(rng.uniform(-2, 2), rng.uniform(-2, 2),
                       side=rng.uniform(0.2, 2), heading=rng.uniform(-180, 179))
            assert geom.overlap(a, b) == geom.overlap(b, a)

    def test_polygon_vs_rect(self):
        tri = geom.Polygon.from_xy([(0, 0), (2, 0), (0, 2)])
        assert geom.overlap(tri, square(0.5, 0.5)) is True
        assert geom.overlap(tri, square(5, 5)) is False


class TestMaxSlide:
    def test_boundary_contact_from_reference_pose(self):
        # length 1.80 along heading 90: front edge at y=9.90, wall at y=10.
        mover = geom.OrientedRect(geom.Point2(4.51, 9.00), 1.80, 0.90, 90.0)
        d = geom.max_slide(mover, (0.0, 1.0), [], (0, 0, 10, 10))
        assert d == pytest.approx(0.10, abs=1e-9)

    def test_flush_against_wall_returns_zero(self):
        mover = geom.OrientedRect(geom.Point2(9.5, 5.0), 1.0, 1.0, 0.0)
        d = geom.max_slide(mover, (1.0, 0.0), [], (0, 0, 10, 10))
        assert d == pytest.approx(0.0, abs=1e-9)

    def test_initial_overlap_raises(self):
        mover = square(0, 0)
        with pytest.raises(InvalidState):
            geom.max_slide(mover, (1, 0), [square(0.2, 0)], (-5, -5, 5, 5))

    def test_monotone_in_obstacles(self):
        mover = square(1, 1)
        obstacles = [square(4, 1), square(7, 1)]
        bounds = (0, 0, 10, 10)
        d_full = geom.max_slide(mover, (1, 0), obstacles, bounds)
        d_less = geom.max_slide(mover, (1, 0), obstacles[1:], bounds)
        assert d_less >= d_full

    def test_random_scenes_match_bisection_oracle(self):
        rng = random.Random(42)
        bounds = (0.0, 0.0, 10.0, 10.0)
        checked = 0
        while checked < 250:
            mover = geom.OrientedRect(
                geom.Point2(rng.uniform(1.5, 8.5), rng.uniform(1.5, 8.5)),
                rng.uniform(0.8, 2.2), rng.uniform(0.5, 1.2),
                rng.choice([0, 15, -30, 45, 90, -135]))
            others = []
            for _ in range(rng.randint(1, 4)):
                others.append(geom.OrientedRect(
                    geom.Point2(rng.uniform(0.8, 9.2), rng.uniform(0.8, 9.2)),
                    rng.uniform(0.6, 2.5), rng.uniform(0.4, 1.2),
                    rng.choice([0, 30, -45, 60, 90])))
            if any(geom.overlap(mover, o) for o in others):
                continue
            if not geom.inside_bounds(mover.corners(), bounds):
                continue
            theta = rng.uniform(0, 2 * math.pi)
            axis = (math.cos(theta), math.sin(theta))

            d = geom.max_slide(mover, axis, others, bounds)

            def valid_at(t):
                moved = mover.translated(axis[0] * t, axis[1] * t)
                if not geom.inside_bounds(moved.corners(), bounds):
                    return False
                return not any(geom.overlap(moved, o) for o in others)

            expected = bisect_slide(valid_at, upper=15.0)
            assert d == pytest.approx(expected, abs=1e-4)

            moved = mover.translated(axis[0] * d, axis[1] * d)
            assert geom.inside_bounds(moved.corners(), bounds)
            assert not any(geom.overlap(moved, o) for o in others)
            checked += 1


class TestReflect:
    def test_across_vertical_axis(self):
        line = geom.Line2(geom.Point2(0, 0), (0, 1))
        assert geom.reflect(geom.Point2(1, 0), line) == geom.Point2(-1, 0)

    def test_point_on_line_fixed(self):
        line = geom.Line2(geom.Point2(2, 3), (1, 0))
        p = geom.reflect(geom.Point2(5, 3), line)
        assert (p.x, p.y) == pytest.approx((5, 3))

    def test_diagonal_swaps_coordinates(self):
        line = geom.Line2(geom.Point2(0, 0), (math.sqrt(0.5), math.sqrt(0.5)))
        p = geom.reflect(geom.Point2(2, 1), line)
        assert (p.x, p.y) == pytest.approx((1, 2))

    def test_involution_on_random_pairs(self):
        rng = random.Random(3)
        for _ in range(10_000):
            p = geom.Point2(rng.uniform(-50, 50), rng.uniform(-50, 50))
            ang = rng.uniform(0, 2 * math.pi)
            line = geom.Line2(geom.Point2(rng.uniform(-5, 5), rng.uniform(-5, 5)),
                              (math.cos(ang), math.sin(ang)))
            q = geom.reflect(geom.reflect(p, line), line)
            assert abs(q.x - p.x) < 1e-9 and abs(q.y - p.y) < 1e-9


class TestSilhouetteIoU:
    def test_identical_silhouettes(self):
        a = [geom.Polygon.from_xy([(0, 0), (1, 0), (1, 1), (0, 1)])]
        assert geom.silhouette_iou(a, a) == pytest.approx(1.0)

    def test_translated_copy_still_matches(self):
        a = [geom.Polygon.from_xy([(0, 0), (1, 0), (1, 1), (0, 1)])]
        b = [a[0].translated(13.0, -2.0)]
        assert geom.silhouette_iou(a, b) == pytest.approx(1.0)

    def test_corner_quarter_removed(self):
        # Unit square vs the same square minus its top-right quarter. After
        # centroid alignment the L shifts by 1/12 in x and y, giving
        # intersection 2/3 and union 13/12: IoU = 8/13. Frozen from the
        # 2048^2 rasterization oracle.
        sq = [geom.Polygon.from_xy([(0, 0), (1, 0), (1, 1), (0, 1)])]
        ell = [
            geom.Polygon.from_xy([(0, 0), (1, 0), (1, 0.5), (0, 0.5)]),
            geom.Polygon.from_xy([(0, 0.5), (0.5, 0.5), (0.5, 1), (0, 1)]),
        ]
        expected = raster_iou([p.as_xy() for p in sq], [p.as_xy() for p in ell])
        assert expected == pytest.approx(8 / 13, abs=2e-3)
        assert geom.silhouette_iou(sq, ell) == pytest.approx(8 / 13, abs=1e-9)

    def test_disjoint_after_alignment_is_zero(self):
        # Equal-area pairs far apart on perpendicular axes: after centroid
        # alignment the unions still have zero intersection.
        a = [
            geom.Polygon.from_xy([(0, -0.5), (1, -0.5), (1, 0.5), (0, 0.5)]),
            geom.Polygon.from_xy([(9, -0.5), (10, -0.5), (10, 0.5), (9, 0.5)]),
        ]
        b = [
            geom.Polygon.from_xy([(4.5, 4.5), (5.5, 4.5), (5.5, 5.5), (4.5, 5.5)]),
            geom.Polygon.from_xy([(4.5, -5.5), (5.5, -5.5), (5.5, -4.5), (4.5, -4.5)]),
        ]
        assert geom.silhouette_iou(a, b) == pytest.approx(0.0, abs=1e-12)

    def test_zero_area_raises(self):
        with pytest.raises(DegenerateGeometry):
            geom.silhouette_iou([], [])


class TestTransforms:
    @given(st.floats(-180, 180), st.floats(-10, 10), st.floats(-10, 10),
           st.floats(-10, 10), st.floats(-10, 10))
    @settings(max_examples=200)
    def test_inverse_roundtrip(self, rot, tx, ty, px, py):
        t = geom.RigidTransform(rot, (tx, ty))
        p = geom.Point2(px, py)
        q = t.inverse().apply(t.apply(p))
        assert abs(q.x - p.x) < 1e-9 and abs(q.y - p.y) < 1e-9

    def test_compose_order(self):
        rot = geom.RigidTransform(90.0, (0.0, 0.0))
        shift = geom.RigidTransform(0.0, (1.0, 0.0))
        p = geom.Point2(1.0, 0.0)
        q = rot.compose(shift).apply(p)  # shift then rotate
        assert (q.x, q.y) == pytest.approx((0.0, 2.0), abs=1e-12)

    def test_rotation_about_pivot(self):
        t = geom.RigidTransform.rotation_about(90.0, geom.Point2(1.0, 1.0))
        q = t.apply(geom.Point2(2.0, 1.0))
        assert (q.x, q.y) == pytest.approx((1.0, 2.0), abs=1e-12)


class TestPolygonBasics:
    def test_clockwise_rejected(self):
        with pytest.raises(DegenerateGeometry):
            geom.Polygon.from_xy([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_self_intersection_rejected(self):
        with pytest.raises(DegenerateGeometry):
            geom.Polygon.from_xy([(0, 0), (2, 2), (2, 0), (0, 2)])

    def test_triangulation_preserves_area(self):
        pts = [(0, 0), (3, 0), (3, 1), (1, 1), (1, 2), (0, 2)]
        tris = geom.triangulate(pts)
        total = sum(geom.signed_area(list(t)) for t in tris)
        assert total == pytest.approx(geom.signed_area(pts))
