import math
import random

import pytest

from vispuzzle import geom, hingefold as hf
from vispuzzle.errors import InvalidAngle, InvalidIdentifier, Unsolvable
from vispuzzle.geom import Point2, Polygon


def two_square_chain(pivot_y=0.0):
    shapes = (
        Polygon.from_xy([(0, 0), (1, 0), (1, 1), (0, 1)]),
        Polygon.from_xy([(1, 0), (2, 0), (2, 1), (1, 1)]),
    )
    hinges = (hf.Hinge("A", Point2(1.0, pivot_y)),)
    return hf.HingeChain(shapes, hinges, (0,))


def random_chain(rng):
    return hf._build_chain(rng, rng.randint(2, 6))


class TestRotateHinge:
    def test_half_turn_twice_is_identity(self):
        chain = two_square_chain()
        once = hf.rotate_hinge(chain, 0, 180)
        twice = hf.rotate_hinge(once, 0, 180)
        for p, q in zip(chain.shapes[1].vertices, twice.shapes[1].vertices):
            assert math.dist(p.as_tuple(), q.as_tuple()) < 1e-9
        assert twice.angles == (0,)

    def test_quarter_turn_maps_offset_vertex(self):
        chain = two_square_chain()
        rotated = hf.rotate_hinge(chain, 0, 90)
        # pivot + (1, 0) is the downstream square's bottom-right corner.
        corner = rotated.shapes[1].vertices[1]
        assert (corner.x, corner.y) == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_bad_angle_rejected(self):
        chain = two_square_chain()
        with pytest.raises(InvalidAngle):
            hf.rotate_hinge(chain, 0, 60)
        with pytest.raises(InvalidAngle):
            hf.rotate_hinge(chain, 0, 360)

    def test_bad_index_rejected(self):
        with pytest.raises(InvalidIdentifier):
            hf.rotate_hinge(two_square_chain(), 3, 90)

    def test_upstream_shapes_fixed(self):
        chain = two_square_chain()
        rotated = hf.rotate_hinge(chain, 0, 135)
        assert rotated.shapes[0] == chain.shapes[0]

    def test_areas_and_edges_preserved(self):
        rng = random.Random(8)
        for _ in range(40):
            chain = random_chain(rng)
            areas = [s.area for s in chain.shapes]
            for _ in range(rng.randint(1, 6)):
                idx = rng.randrange(len(chain.hinges))
                chain = hf.rotate_hinge(chain, idx, rng.choice(hf.ANGLES))
            for before, shape in zip(areas, chain.shapes):
                assert shape.area == pytest.approx(before, abs=1e-9)

    def test_order_independence_single_pass(self):
        rng = random.Random(21)
        for _ in range(100):
            chain = random_chain(rng)
            k = len(chain.hinges)
            angles = [rng.choice(hf.ANGLES) for _ in range(k)]
            ltr = chain
            for i in range(k):
                ltr = hf.rotate_hinge(ltr, i, angles[i])
            rtl = chain
            for i in reversed(range(k)):
                rtl = hf.rotate_hinge(rtl, i, angles[i])
            for a, b in zip(ltr.shapes, rtl.shapes):
                for p, q in zip(a.vertices, b.vertices):
                    assert math.dist(p.as_tuple(), q.as_tuple()) < 1e-9


class TestMatchesTarget:
    def test_initial_silhouette_with_no_rotations(self):
        chain = two_square_chain()
        assert hf.matches_target(chain, chain.shapes)

    def test_wrong_angles_rejected(self):
        chain = two_square_chain()
        target = hf.rotate_hinge(chain, 0, 90).shapes
        wrong = hf.rotate_hinge(chain, 0, 45)
        iou = geom.silhouette_iou(list(wrong.shapes), list(target))
        assert iou < hf.MATCH_IOU
        assert not hf.matches_target(wrong, target)

    def test_generated_gt_matches(self):
        inst = hf.generate(2, seed=5)
        cfg = hf.apply_assignment(inst.chain, inst.gt_assignment())
        assert hf.matches_target(cfg, inst.target)


class TestSolve:
    def test_one_hinge_recovers_gt(self):
        chain = two_square_chain()
        for gt in hf.ANGLES:
            target = hf.rotate_hinge(chain, 0, gt).shapes
            solved = hf.solve(chain, target)
            cfg = hf.apply_assignment(chain, solved)
            assert hf.matches_target(cfg, target)

    def test_impossible_target(self):
        chain = two_square_chain()
        target = (
            Polygon.from_xy([(0, 0), (1, 0), (1, 1), (0, 1)]),
            Polygon.from_xy([(9, 9), (10, 9), (10, 10), (9, 10)]),
        )
        with pytest.raises(Unsolvable):
            hf.solve(chain, target)

    def test_gt_among_solutions_for_generated(self):
        for seed in range(6):
            inst = hf.generate(2, seed=seed)
            solved = hf.solve(inst.chain, inst.target)
            cfg = hf.apply_assignment(inst.chain, solved)
            assert hf.matches_target(cfg, inst.target)


class TestGenerate:
    @pytest.mark.parametrize("level", [1, 2, 3])
    def test_hinge_count_is_level(self, level):
        inst = hf.generate(level, seed=3)
        assert len(inst.chain.hinges) == level
        assert len(inst.gt_angles) == level
        assert len(inst.chain.shapes) == level + 1

    def test_no_half_turn_between_congruent_shapes(self):
        seen_congruent_join = 0
        for seed in range(15):
            inst = hf.generate(2, seed=seed)
            for i, angle in enumerate(inst.gt_angles):
                if hf._same_class(inst.chain.shapes[i], inst.chain.shapes[i + 1]):
                    seen_congruent_join += 1
                    assert angle != 180
        assert seen_congruent_join > 0

    def test_no_self_overlap_along_gt_trace(self):
        inst = hf.generate(3, seed=12)
        cfg = inst.chain
        for i, angle in enumerate(inst.gt_angles):
            cfg = hf.rotate_hinge(cfg, i, angle)
            assert not hf.chain_has_self_overlap(cfg)

    def test_determinism(self):
        a = hf.generate(3, seed=77)
        b = hf.generate(3, seed=77)
        assert a.to_doc() == b.to_doc()

    def test_doc_roundtrip(self):
        inst = hf.generate(2, seed=4)
        back = hf.HingeInstance.from_doc(inst.to_doc())
        assert back.to_doc() == inst.to_doc()

    def test_admissible_sizes(self):
        inst = hf.generate(2, seed=4)
        sizes = inst.admissible_set_sizes()
        assert len(sizes) == 2
        assert all(s in (6, 7) for s in sizes)
