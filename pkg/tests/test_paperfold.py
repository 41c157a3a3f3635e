import math
import random
from collections import Counter

import pytest

from vispuzzle import paperfold as pf
from vispuzzle.errors import InvalidFold, InvalidPunch

from oracles import track_fold_points


def patterns_equal(holes_a, holes_b, tol=1e-6):
    if len(holes_a) != len(holes_b):
        return False
    remaining = list(holes_b)
    for a in holes_a:
        hit = next((b for b in remaining if math.dist(a, b) <= tol), None)
        if hit is None:
            return False
        remaining.remove(hit)
    return True


class TestFold:
    def test_initial_stack_is_single_identity_layer(self):
        stack = pf.initial_stack()
        assert len(stack.layers) == 1
        assert stack.layers[0].to_paper == (1, 0, 0, 0, 1, 0)

    def test_vertical_half_fold_doubles_layers(self):
        stack = pf.fold(pf.initial_stack(), pf.Fold("vertical", 0.5, "positive"))
        assert len(stack.layers) == 2
        for layer in stack.layers:
            assert all(x <= 0.5 + 1e-9 for x, _ in layer.domain)

    def test_two_half_folds_give_four_layers_on_quarter(self):
        stack = pf.fold_all([
            pf.Fold("vertical", 0.5, "positive"),
            pf.Fold("horizontal", 0.5, "positive"),
        ])
        # brute-force layer count: every sampled paper point maps into the
        # quarter square, 4 points per folded location
        assert len(stack.layers) == 4
        probe = (0.2, 0.3)
        assert sum(1 for l in stack.layers if l.covers(probe)) == 4

    def test_degenerate_fold_outside_extent(self):
        with pytest.raises(InvalidFold):
            pf.fold(pf.initial_stack(), pf.Fold("vertical", 1.4, "positive"))

    def test_diagonal_fold_keeps_layers_in_square(self):
        stack = pf.fold(pf.initial_stack(), pf.Fold("main_diagonal", 0.0, "positive"))
        for layer in stack.layers:
            for p in layer.domain:
                q = pf._apply(layer.to_paper, p)
                assert -1e-9 <= q[0] <= 1 + 1e-9 and -1e-9 <= q[1] <= 1 + 1e-9


class TestPunch:
    def test_no_folds_single_hole(self):
        pattern = pf.punch(pf.initial_stack(), (0.3, 0.7))
        assert patterns_equal(pattern.holes, [(0.3, 0.7)])

    def test_vertical_fold_mirror_pair(self):
        stack = pf.fold(pf.initial_stack(), pf.Fold("vertical", 0.5, "positive"))
        pattern = pf.punch(stack, (0.25, 0.5))
        assert patterns_equal(pattern.holes, [(0.25, 0.5), (0.75, 0.5)])

    def test_outside_extent_raises(self):
        stack = pf.fold(pf.initial_stack(), pf.Fold("vertical", 0.5, "positive"))
        with pytest.raises(InvalidPunch):
            pf.punch(stack, (0.8, 0.5))

    def test_matches_point_tracking_oracle_on_random_sequences(self):
        rng = random.Random(9)
        checked = 0
        while checked < 30:
            stack = pf.initial_stack()
            ok = True
            for _ in range(rng.randint(1, 3)):
                f = pf._sample_fold(rng, stack)
                if f is None:
                    ok = False
                    break
                try:
                    stack = pf.fold(stack, f)
                except InvalidFold:
                    ok = False
                    break
            if not ok:
                continue
            p = pf._punch_candidates(stack, rng)
            if p is None:
                continue
            pattern = pf.punch(stack, p)
            oracle = track_fold_points(
                [(f.family, f.c, f.moving == "positive") for f in stack.folds],
                p, n_points=10_000, seed=checked)
            assert len(oracle) == len(pattern.holes)
            for h in pattern.holes:
                assert min(math.dist(h, o) for o in oracle) < 0.02
            checked += 1

    def test_hole_count_bounds(self):
        rng = random.Random(4)
        for seed in range(10):
            inst = pf.generate(rng.randint(1, 4), seed=seed)
            pattern = inst.gt_pattern
            assert 1 <= len(pattern) <= 2 ** len(inst.folds)
            for x, y in pattern.holes:
                assert 0 <= x <= 1 and 0 <= y <= 1


class TestUnfoldTrace:
    def test_single_fold_trace(self):
        stack = pf.fold(pf.initial_stack(), pf.Fold("vertical", 0.5, "positive"))
        pattern = pf.punch(stack, (0.25, 0.5))
        trace = pf.unfold_trace(stack, pattern)
        assert len(trace) == 1
        assert patterns_equal(trace[-1].holes, pattern.holes)

    def test_final_element_equals_punch_output(self):
        for seed in range(6):
            inst = pf.generate(3, seed=seed)
            stack = pf.fold_all(inst.folds)
            pattern = pf.punch(stack, inst.punch_point)
            trace = pf.unfold_trace(stack, pattern)
            assert len(trace) == len(inst.folds)
            assert patterns_equal(trace[-1].holes, pattern.holes)

    def test_hole_count_never_decreases(self):
        for seed in range(6):
            inst = pf.generate(4, seed=seed)
            stack = pf.fold_all(inst.folds)
            pattern = pf.punch(stack, inst.punch_point)
            counts = [1] + [len(t) for t in pf.unfold_trace(stack, pattern)]
            for a, b in zip(counts, counts[1:]):
                assert b >= a
                assert b <= 2 * a


class TestOptions:
    def test_exactly_one_option_matches_gt(self):
        inst = pf.generate(2, seed=1)
        exact = [k for k, v in inst.options.items() if v.matches(inst.gt_pattern)]
        assert exact == [inst.answer_label]

    def test_distractors_differ_beyond_delta(self):
        for seed in range(25):
            inst = pf.generate(2, seed=seed)
            gt = inst.gt_pattern
            for label, cand in inst.options.items():
                if label == inst.answer_label:
                    continue
                if len(cand) == len(gt):
                    assert any(all(math.dist(h, g) > pf.DELTA for g in gt.holes)
                               for h in cand.holes)
                else:
                    assert abs(len(cand) - len(gt)) == 1

    def test_answer_labels_roughly_uniform(self):
        counts = Counter(pf.generate(1, seed=s).answer_label for s in range(150))
        assert set(counts) <= set("ABCDE")
        for letter in "ABCDE":
            assert 10 <= counts[letter] <= 55

    def test_option_count_and_labels(self):
        inst = pf.generate(5, seed=2)
        assert sorted(inst.options) == list("ABCDE")


class TestGenerate:
    @pytest.mark.parametrize("level", [1, 2, 3, 4, 5])
    def test_fold_count_is_level(self, level):
        inst = pf.generate(level, seed=6)
        assert len(inst.folds) == level

    def test_determinism(self):
        a = pf.generate(3, seed=13)
        b = pf.generate(3, seed=13)
        assert a.to_doc() == b.to_doc()

    def test_doc_roundtrip(self):
        inst = pf.generate(2, seed=3)
        back = pf.PaperFoldInstance.from_doc(inst.to_doc())
        assert back.to_doc() == inst.to_doc()

    def test_reflection_algebra_matches_trace(self):
        # unfolding the punch point reproduces the punch output exactly
        for seed in range(8):
            inst = pf.generate(3, seed=seed)
            stack = pf.fold_all(inst.folds)
            pattern = pf.punch(stack, inst.punch_point)
            trace = pf.unfold_trace(stack, pattern)
            assert patterns_equal(trace[-1].holes, pattern.holes, tol=1e-9)
