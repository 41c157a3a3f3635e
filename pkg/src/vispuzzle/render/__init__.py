"""Deterministic rendering of task states, question images, and ground-truth
visual chain-of-thought frames.

File conventions: initial_state.png (rush hour), initial.png (sliding
puzzle), combined.png (hinge folding / paper fold / form board), and
cot_{step:02d}.png for trajectory frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .. import formboard, hingefold, paperfold, rushhour, slidepuzzle
from ..errors import InvalidState
from .raster import Canvas, decode_png, png_bytes

__all__ = ["RenderSpec", "RenderResult", "render_initial", "render_state",
           "render_cot", "png_bytes", "decode_png", "cot_frame_count"]

VEHICLE_PALETTE = (
    (72, 120, 208),    # blue
    (255, 158, 74),    # orange
    (103, 191, 92),    # green
    (170, 110, 220),   # purple
    (237, 102, 150),   # pink
    (77, 187, 213),    # cyan
    (160, 120, 80),    # brown
    (180, 180, 60),    # olive
)
RED_CAR = (214, 60, 50)
PAPER = (250, 243, 215)
CREASE = (168, 150, 110)


@dataclass(frozen=True)
class RenderSpec:
    width: int = 512
    height: int = 512
    background: tuple = (255, 255, 255)
    stroke: float = 2.0
    font_px: int = 14
    margin: int = 46
    boundary_color: tuple = (90, 90, 90)
    exit_color: tuple = (150, 227, 150)
    obstacle_color: tuple = (28, 28, 28)


@dataclass
class RenderResult:
    image: np.ndarray
    labels: dict = field(default_factory=dict)

    def to_png(self) -> bytes:
        return png_bytes(self.image)


class _Mapper:
    """World -> pixel mapping with the y axis flipped."""

    def __init__(self, bbox, width, height, margin):
        x0, y0, x1, y1 = bbox
        self.scale = min((width - 2 * margin) / max(x1 - x0, 1e-9),
                         (height - 2 * margin) / max(y1 - y0, 1e-9))
        self.ox = width / 2 - self.scale * (x0 + x1) / 2
        self.oy = height / 2 + self.scale * (y0 + y1) / 2

    def pt(self, p):
        return (self.ox + self.scale * p[0], self.oy - self.scale * p[1])

    def pts(self, points):
        return [self.pt(p) for p in points]


def _text_color(rgb) -> tuple:
    lum = 0.299 * rgb[0] + 0.587 * rgb[1] + 0.114 * rgb[2]
    return (250, 250, 250) if lum < 140 else (25, 25, 25)


def vehicle_color(label: str) -> tuple:
    if label == "R":
        return RED_CAR
    idx = (ord(label) - ord("A")) % len(VEHICLE_PALETTE)
    return VEHICLE_PALETTE[idx]


# ---------------------------------------------------------------------------
# Rush hour

def _render_rushhour(lot, state, spec: RenderSpec) -> RenderResult:
    w, h = lot.size
    canvas = Canvas(spec.width, spec.height, spec.background)
    m = _Mapper((0, 0, w, h), spec.width, spec.height, spec.margin)
    labels = {}

    corners = m.pts([(0, 0), (w, 0), (w, h), (0, h)])
    canvas.stroke_polyline(corners, spec.stroke, spec.boundary_color, closed=True)

    ex = lot.exit
    exit_world = {
        "bottom": ((ex.lo, 0), (ex.hi, 0)),
        "top": ((ex.lo, h), (ex.hi, h)),
        "left": ((0, ex.lo), (0, ex.hi)),
        "right": ((w, ex.lo), (w, ex.hi)),
    }[ex.edge]
    canvas.stroke_segment(m.pt(exit_world[0]), m.pt(exit_world[1]),
                          spec.stroke * 4, spec.exit_color)

    for obs in lot.obstacles:
        canvas.fill_convex(m.pts([(obs.x0, obs.y0), (obs.x1, obs.y0),
                                  (obs.x1, obs.y1), (obs.x0, obs.y1)]),
                           spec.obstacle_color)

    for v in lot.vehicles:
        rect = rushhour.vehicle_rect(lot, state, v.label)
        body = m.pts(rect.corners())
        color = vehicle_color(v.label)
        ux, uy = rect.forward
        cx, cy = rect.center.x, rect.center.y
        half = rect.length / 2

        # dashed motion axis, outside the body only
        reach = 1.1
        canvas.dashed_segment(m.pt((cx + ux * half, cy + uy * half)),
                              m.pt((cx + ux * (half + reach), cy + uy * (half + reach))),
                              1.2, (110, 110, 110))
        canvas.dashed_segment(m.pt((cx - ux * half, cy - uy * half)),
                              m.pt((cx - ux * (half + reach), cy - uy * (half + reach))),
                              1.2, (110, 110, 110))

        canvas.fill_convex(body, color)
        canvas.stroke_polyline(body, 1.6, (40, 40, 40), closed=True)

        fg = _text_color(color)
        canvas.arrow(m.pt((cx + ux * half * 0.12, cy + uy * half * 0.12)),
                     m.pt((cx + ux * half * 0.85, cy + uy * half * 0.85)),
                     1.8, 0.16 * m.scale, fg)
        lpos = m.pt((cx - ux * half * 0.45, cy - uy * half * 0.45))
        canvas.text(lpos, v.label, spec.font_px, fg)
        labels[v.label] = lpos
    return RenderResult(canvas.img, labels)


# ---------------------------------------------------------------------------
# Sliding puzzle

def _render_sliding(inst, board, spec: RenderSpec, source) -> RenderResult:
    src = source.get(inst.image_id, size=min(spec.width, spec.height))
    n = board.n
    size = src.shape[0]
    cuts = [round(i * size / n) for i in range(n + 1)]
    canvas = Canvas(size, size, spec.background)
    for cell, tile_id in enumerate(board.perm):
        r, c = divmod(cell, n)
        y0, y1 = cuts[r], cuts[r + 1]
        x0, x1 = cuts[c], cuts[c + 1]
        if cell == board.blank:
            canvas.img[y0:y1, x0:x1] = (8, 8, 8)
            continue
        tr, tc = divmod(tile_id, n)
        sy0, sy1 = cuts[tr], cuts[tr + 1]
        sx0, sx1 = cuts[tc], cuts[tc + 1]
        tile = src[sy0:sy1, sx0:sx1]
        canvas.img[y0:y0 + tile.shape[0], x0:x0 + tile.shape[1]] = tile
    line = (50, 50, 50)
    for k in cuts:
        x = min(max(k, 1), size - 1)
        canvas.img[:, x - 1:x + 1] = line
        canvas.img[x - 1:x + 1, :] = line
    return RenderResult(canvas.img, {})


# ---------------------------------------------------------------------------
# Hinge folding

def _chain_bbox(shapes):
    xs = [v.x for s in shapes for v in s.vertices]
    ys = [v.y for s in shapes for v in s.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def _render_chain(canvas, mapper, chain, spec, labels):
    for i, shape in enumerate(chain.shapes):
        pts = mapper.pts(shape.as_xy())
        canvas.fill_polygon(pts, VEHICLE_PALETTE[i % len(VEHICLE_PALETTE)])
        canvas.stroke_polyline(pts, 1.6, (40, 40, 40), closed=True)
    for h in chain.hinges:
        p = mapper.pt(h.pivot.as_tuple())
        canvas.fill_circle(p, 4.0, (30, 30, 30))
        lpos = (p[0], p[1] + 12)
        canvas.text(lpos, h.label, spec.font_px, (30, 30, 30))
        labels[h.label] = lpos


def _render_hinge_state(inst, chain, spec: RenderSpec) -> RenderResult:
    canvas = Canvas(spec.width, spec.height, spec.background)
    mapper = _Mapper(_chain_bbox(chain.shapes), spec.width, spec.height, spec.margin)
    labels = {}
    _render_chain(canvas, mapper, chain, spec, labels)
    return RenderResult(canvas.img, labels)


def _render_hinge_combined(inst, spec: RenderSpec) -> RenderResult:
    canvas = Canvas(spec.width, spec.height, spec.background)
    labels = {}
    half = spec.width * 0.58
    cb = _chain_bbox(inst.chain.shapes)
    tb = _chain_bbox(inst.target)
    mc = _Mapper(cb, int(half), spec.height, spec.margin // 2 + 16)
    mt = _Mapper(tb, spec.width - int(half), spec.height, spec.margin // 2 + 16)
    # shared scale so chain and target compare at true size
    scale = min(mc.scale, mt.scale)
    mc.scale = scale
    mc.ox = half / 2 - scale * (cb[0] + cb[2]) / 2
    mc.oy = spec.height / 2 + scale * (cb[1] + cb[3]) / 2
    mt.scale = scale
    mt.ox = half + (spec.width - half) / 2 - scale * (tb[0] + tb[2]) / 2
    mt.oy = spec.height / 2 + scale * (tb[1] + tb[3]) / 2
    _render_chain(canvas, mc, inst.chain, spec, labels)
    for poly in inst.target:
        pts = mt.pts(poly.as_xy())
        canvas.fill_polygon(pts, (120, 120, 120))
    for poly in inst.target:
        canvas.stroke_polyline(mt.pts(poly.as_xy()), 1.6, (40, 40, 40), closed=True)
    canvas.stroke_segment((half, spec.margin // 2), (half, spec.height - spec.margin // 2),
                          1.2, (200, 200, 200))
    return RenderResult(canvas.img, labels)


# ---------------------------------------------------------------------------
# Paper fold

def _stage_stacks(inst):
    stacks = [paperfold.initial_stack()]
    for f in inst.folds:
        stacks.append(paperfold.fold(stacks[-1], f))
    return stacks


def _draw_stage(canvas, mapper, stack, holes=(), fold_line=None, hole_px=4.0):
    for layer in stack.layers:
        canvas.fill_polygon(mapper.pts(layer.domain), PAPER)
    for layer in stack.layers:
        canvas.stroke_polyline(mapper.pts(layer.domain), 1.0, CREASE, closed=True)
    if fold_line is not None:
        a, b = fold_line
        canvas.dashed_segment(mapper.pt(a), mapper.pt(b), 1.2, (120, 120, 120))
    for hx, hy in holes:
        canvas.fill_circle(mapper.pt((hx, hy)), hole_px, (30, 30, 30))


def _fold_line_span(stack, f):
    pts = [p for layer in stack.layers for p in layer.domain]
    probe = paperfold.Fold(f.family, f.c, "positive")
    if f.family == "vertical":
        ys = [y for _, y in pts]
        return ((f.c, min(ys)), (f.c, max(ys)))
    if f.family == "horizontal":
        xs = [x for x, _ in pts]
        return ((min(xs), f.c), (max(xs), f.c))
    xs = [x for x, _ in pts]
    lo, hi = min(xs) - 0.05, max(xs) + 0.05
    if f.family == "main_diagonal":
        return ((lo, lo + f.c), (hi, hi + f.c))
    return ((lo, f.c - lo), (hi, f.c - hi))


def _render_paper_combined(inst, spec: RenderSpec) -> RenderResult:
    canvas = Canvas(spec.width, spec.height, spec.background)
    labels = {}
    stacks = _stage_stacks(inst)
    n_top = len(inst.folds) + 1
    top_w = spec.width / n_top
    for j, stack in enumerate(stacks):
        mapper = _Mapper((-0.05, -0.05, 1.05, 1.05), int(top_w), int(top_w),
                         max(int(top_w * 0.1), 6))
        mapper.ox += j * top_w
        mapper.oy += (spec.height * 0.27 - top_w / 2)
        fold_line = None
        if j < len(inst.folds):
            fold_line = _fold_line_span(stacks[j], inst.folds[j])
        holes = [inst.punch_point] if j == len(inst.folds) else ()
        _draw_stage(canvas, mapper, stack, holes=holes, fold_line=fold_line,
                    hole_px=max(2.5, 0.035 * mapper.scale))

    opt_w = spec.width / 5
    for k, letter in enumerate("ABCDE"):
        mapper = _Mapper((-0.05, -0.05, 1.05, 1.05), int(opt_w), int(opt_w),
                         max(int(opt_w * 0.1), 6))
        mapper.ox += k * opt_w
        mapper.oy += spec.height * 0.75 - opt_w / 2
        _draw_stage(canvas, mapper, paperfold.initial_stack(),
                    holes=inst.options[letter].holes,
                    hole_px=max(2.5, 0.035 * mapper.scale))
        lpos = (k * opt_w + opt_w / 2, spec.height * 0.75 + opt_w / 2 + 12)
        canvas.text(lpos, letter, spec.font_px, (30, 30, 30))
        labels[letter] = lpos
    return RenderResult(canvas.img, labels)


def _render_paper_stage(inst, step: int, spec: RenderSpec) -> RenderResult:
    """CoT frame: step 0 is the folded, punched paper; each later step undoes
    one fold; the last shows the full pattern."""
    stacks = _stage_stacks(inst)
    n = len(inst.folds)
    final = paperfold.punch(stacks[-1], inst.punch_point)
    trace = paperfold.unfold_trace(stacks[-1], final)
    canvas = Canvas(spec.width, spec.height, spec.background)
    mapper = _Mapper((-0.08, -0.08, 1.08, 1.08), spec.width, spec.height, spec.margin)
    if step == 0:
        _draw_stage(canvas, mapper, stacks[-1], holes=[inst.punch_point],
                    hole_px=0.02 * mapper.scale)
    else:
        _draw_stage(canvas, mapper, stacks[n - step], holes=trace[step - 1].holes,
                    hole_px=0.02 * mapper.scale)
    return RenderResult(canvas.img, {})


# ---------------------------------------------------------------------------
# Form board

def _render_form_combined(inst, spec: RenderSpec, placed_labels=(),
                          show_candidates=True) -> RenderResult:
    canvas = Canvas(spec.width, spec.height, spec.background)
    labels = {}
    tb = inst.target.as_xy()
    tx0, ty0, tx1, ty1 = (min(x for x, _ in tb), min(y for _, y in tb),
                          max(x for x, _ in tb), max(y for _, y in tb))
    left_w = spec.width * 0.46
    mt = _Mapper((tx0, ty0, tx1, ty1), int(left_w), spec.height, spec.margin)

    slot_cols, slot_rows = 2, 3
    slot_w = (spec.width - left_w) / slot_cols
    slot_h = spec.height / slot_rows
    max_dim = max(max(x1 - x0, y1 - y0) for x0, y0, x1, y1 in
                  [_piece_bbox(p) for p in inst.pieces]) or 1.0
    piece_scale = 0.72 * min(slot_w, slot_h) / max_dim
    scale = min(mt.scale, piece_scale)
    mt.scale = scale
    mt.ox = left_w / 2 - scale * (tx0 + tx1) / 2
    mt.oy = spec.height / 2 + scale * (ty0 + ty1) / 2

    canvas.stroke_polyline(mt.pts(tb), 2.6, (20, 20, 20), closed=True)
    for p in inst.pieces:
        if p.label in placed_labels:
            pts = [(v[0] + p.placement[0], v[1] + p.placement[1])
                   for v in p.shape.as_xy()]
            px = mt.pts(pts)
            canvas.fill_polygon(px, p.color)
            canvas.stroke_polyline(px, 1.4, (40, 40, 40), closed=True)

    if show_candidates:
        for idx, p in enumerate(inst.pieces):
            col, row = idx % slot_cols, idx // slot_cols
            cx = left_w + col * slot_w + slot_w / 2
            cy = row * slot_h + slot_h * 0.44
            pts = [(cx + scale * vx, cy - scale * vy) for vx, vy in p.shape.as_xy()]
            canvas.fill_polygon(pts, p.color)
            canvas.stroke_polyline(pts, 1.4, (40, 40, 40), closed=True)
            lpos = (cx, cy + scale * max_dim * 0.5 + 12)
            canvas.text(lpos, p.label, spec.font_px, (30, 30, 30))
            labels[p.label] = lpos
    return RenderResult(canvas.img, labels)


def _piece_bbox(piece):
    xs = [v.x for v in piece.shape.vertices]
    ys = [v.y for v in piece.shape.vertices]
    return min(xs), min(ys), max(xs), max(ys)


# ---------------------------------------------------------------------------
# Public API

def render_state(instance, state, spec: RenderSpec = RenderSpec(),
                 source=None) -> RenderResult:
    """Render one world state; the state's type is task-specific (RushState,
    Board, HingeChain, or an int step for paper fold / form board)."""
    task = instance.task
    if task == "rush_hour":
        return _render_rushhour(instance.lot, state, spec)
    if task == "sliding_puzzle":
        return _render_sliding(instance, state, spec, source or _default_source())
    if task == "hinge_folding":
        return _render_hinge_state(instance, state, spec)
    if task == "paper_fold":
        return _render_paper_stage(instance, state, spec)
    if task == "form_board":
        placed = sorted(instance.answer)[:state]
        return _render_form_combined(instance, spec, placed_labels=placed,
                                     show_candidates=False)
    raise InvalidState(f"unknown task {task!r}")


def render_initial(instance, spec: RenderSpec = RenderSpec(),
                   source=None) -> RenderResult:
    """The question image (initial_state.png / initial.png / combined.png)."""
    task = instance.task
    if task == "rush_hour":
        return _render_rushhour(instance.lot, rushhour.initial_state(instance.lot), spec)
    if task == "sliding_puzzle":
        return _render_sliding(instance, instance.board, spec,
                               source or _default_source())
    if task == "hinge_folding":
        return _render_hinge_combined(instance, spec)
    if task == "paper_fold":
        return _render_paper_combined(instance, spec)
    if task == "form_board":
        return _render_form_combined(instance, spec)
    raise InvalidState(f"unknown task {task!r}")


def cot_frame_count(instance) -> int:
    return gt_action_count(instance) + 1


def gt_action_count(instance) -> int:
    task = instance.task
    if task == "rush_hour":
        return len(instance.gt_actions)
    if task == "sliding_puzzle":
        return len(instance.gt_moves)
    if task == "hinge_folding":
        return len(instance.gt_angles)
    if task == "paper_fold":
        return len(instance.folds)
    return len(instance.answer)


def render_cot(instance, spec: RenderSpec = RenderSpec(),
               source=None) -> list[RenderResult]:
    """One frame per state along the ground-truth trajectory; the first
    frame is the initial state."""
    task = instance.task
    frames: list[RenderResult] = []
    if task == "rush_hour":
        for st in instance.gt_states:
            frames.append(_render_rushhour(instance.lot, st, spec))
    elif task == "sliding_puzzle":
        src = source or _default_source()
        board = instance.board
        frames.append(_render_sliding(instance, board, spec, src))
        for mv in instance.gt_moves:
            board = slidepuzzle.apply(board, mv)
            frames.append(_render_sliding(instance, board, spec, src))
    elif task == "hinge_folding":
        chain = instance.chain
        frames.append(_render_hinge_state(instance, chain, spec))
        for i, angle in enumerate(instance.gt_angles):
            chain = hingefold.rotate_hinge(chain, i, angle)
            frames.append(_render_hinge_state(instance, chain, spec))
    elif task == "paper_fold":
        for step in range(len(instance.folds) + 1):
            frames.append(_render_paper_stage(instance, step, spec))
    elif task == "form_board":
        for k in range(len(instance.answer) + 1):
            frames.append(render_state(instance, k, spec))
    else:
        raise InvalidState(f"unknown task {task!r}")
    return frames


def _default_source():
    from ..assets import SyntheticImages

    return SyntheticImages()
