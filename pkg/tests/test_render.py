import numpy as np
import pytest

from vispuzzle import formboard, hingefold, paperfold, render, rushhour, slidepuzzle
from vispuzzle.render.raster import Canvas, decode_png, png_bytes


@pytest.fixture(scope="module")
def rush_instance():
    return rushhour.generate(2, seed=4)


class TestRaster:
    def test_png_roundtrip(self):
        canvas = Canvas(40, 30, (12, 200, 99))
        canvas.fill_convex([(5, 5), (30, 8), (18, 25)], (255, 0, 0))
        data = png_bytes(canvas.img)
        assert data[:8] == b"\x89PNG\r\n\x1a\n"
        back = decode_png(data)
        assert (back == canvas.img).all()

    def test_fill_deterministic(self):
        imgs = []
        for _ in range(2):
            c = Canvas(64, 64)
            c.fill_convex([(3.3, 4.7), (55.1, 10.2), (30.0, 58.9)], (10, 90, 200))
            c.text((32, 32), "R7", 14, (0, 0, 0))
            imgs.append(c.img.copy())
        assert (imgs[0] == imgs[1]).all()

    def test_coverage_partial_on_edges(self):
        c = Canvas(20, 20, (255, 255, 255))
        c.fill_convex([(5, 5), (15, 5), (15, 15), (5, 15)], (0, 0, 0))
        assert (c.img[10, 10] == (0, 0, 0)).all()
        assert (c.img[2, 2] == (255, 255, 255)).all()

    def test_text_draws_pixels(self):
        c = Canvas(40, 40, (255, 255, 255))
        c.text((20, 20), "A", 14, (0, 0, 0))
        assert (c.img == 0).any()


class TestRushHourRender:
    def test_byte_determinism(self, rush_instance):
        a = render.render_initial(rush_instance).to_png()
        b = render.render_initial(rush_instance).to_png()
        assert a == b

    def test_red_car_center_pixel_matches_palette(self, rush_instance):
        res = render.render_initial(rush_instance)
        lot = rush_instance.lot
        spec = render.RenderSpec()
        mapper = render._Mapper((0, 0, *lot.size), spec.width, spec.height, spec.margin)
        red = lot.vehicle("R").body
        px, py = mapper.pt((red.center.x, red.center.y))
        assert tuple(res.image[int(round(py)), int(round(px))]) == render.RED_CAR

    def test_every_vehicle_label_present_once(self, rush_instance):
        res = render.render_initial(rush_instance)
        assert sorted(res.labels) == sorted(rush_instance.lot.labels())
        for x, y in res.labels.values():
            assert 0 <= x < res.image.shape[1]
            assert 0 <= y < res.image.shape[0]

    def test_cot_frame_count(self, rush_instance):
        frames = render.render_cot(rush_instance)
        assert len(frames) == len(rush_instance.gt_actions) + 1

    def test_cot_matches_replayed_states(self, rush_instance):
        frames = render.render_cot(rush_instance)
        states = rushhour.replay(rush_instance.lot, list(rush_instance.gt_actions))
        for frame, st in zip(frames, states):
            direct = render.render_state(rush_instance, st)
            assert frame.to_png() == direct.to_png()


class TestOtherTasks:
    def test_sliding_initial_and_cot(self):
        inst = slidepuzzle.generate(3, seed=2, image_id="img_000")
        res = render.render_initial(inst)
        assert res.image.shape[2] == 3
        frames = render.render_cot(inst)
        assert len(frames) == len(inst.gt_moves) + 1
        assert frames[0].to_png() == res.to_png()
        # blank tile is near-black
        n = inst.board.n
        size = res.image.shape[0]
        cuts = [round(i * size / n) for i in range(n + 1)]
        r, c = divmod(inst.board.blank, n)
        y = (cuts[r] + cuts[r + 1]) // 2
        x = (cuts[c] + cuts[c + 1]) // 2
        assert tuple(res.image[y, x]) == (8, 8, 8)

    def test_sliding_final_cot_frame_is_solved_image(self):
        inst = slidepuzzle.generate(2, seed=7, image_id="img_001")
        frames = render.render_cot(inst)
        board = inst.board
        for mv in inst.gt_moves:
            board = slidepuzzle.apply(board, mv)
        assert board.is_solved()
        direct = render.render_state(inst, board)
        assert frames[-1].to_png() == direct.to_png()

    def test_hinge_combined_and_cot(self):
        inst = hingefold.generate(2, seed=3)
        res = render.render_initial(inst)
        assert sorted(res.labels) == [h.label for h in inst.chain.hinges]
        frames = render.render_cot(inst)
        assert len(frames) == len(inst.gt_angles) + 1

    def test_paper_combined_and_cot(self):
        inst = paperfold.generate(3, seed=1)
        res = render.render_initial(inst)
        assert sorted(res.labels) == list("ABCDE")
        frames = render.render_cot(inst)
        assert len(frames) == len(inst.folds) + 1

    def test_form_combined_and_cot(self):
        inst = formboard.generate(3, seed=5)
        res = render.render_initial(inst)
        assert sorted(res.labels) == list("ABCDE")
        frames = render.render_cot(inst)
        assert len(frames) == len(inst.answer) + 1
        # frames differ from one another as pieces are placed
        assert frames[0].to_png() != frames[-1].to_png()

    def test_determinism_across_tasks(self):
        for inst in (hingefold.generate(1, seed=1), paperfold.generate(1, seed=1),
                     formboard.generate(1, seed=1)):
            assert render.render_initial(inst).to_png() == render.render_initial(inst).to_png()
