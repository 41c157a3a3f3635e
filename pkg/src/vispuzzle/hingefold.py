"""Hinge folding task: a left-to-right chain of rigid polygons joined by
labeled hinges. Rotating hinge i swings every downstream shape (and hinge
pivot) anticlockwise about the pivot by a multiple of 45 degrees; the goal
silhouette is compared up to translation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

import numpy as np

from . import geom
from .errors import (GenerationFailed, InvalidAngle, InvalidIdentifier,
                     Unsolvable)
from .geom import Point2, Polygon, RigidTransform
from .seeds import stable_seed

ANGLES = (45, 90, 135, 180, 225, 270, 315)
MATCH_IOU = 0.99
AMBIGUITY_BAND = 0.90  # configs with IoU in [band, match) make scoring fragile
HINGE_LABELS = "ABCDEFG"

# Shape library on a half-unit lattice: (name, vertices, congruence class).
# wide/tall and the two triangles are rotations of each other.
SHAPE_LIBRARY = {
    "square": ([(0, 0), (1, 0), (1, 1), (0, 1)], "square"),
    "wide": ([(0, 0), (2, 0), (2, 1), (0, 1)], "domino"),
    "tall": ([(0, 0), (1, 0), (1, 2), (0, 2)], "domino"),
    "tri_l": ([(0, 0), (1, 0), (0, 1)], "tri"),
    "tri_r": ([(0, 0), (1, 0), (1, 1)], "tri"),
}


@dataclass(frozen=True)
class Hinge:
    label: str
    pivot: Point2


@dataclass(frozen=True)
class HingeChain:
    """Current configuration: shape polygons, hinge pivots, and the net
    rotation already applied at each hinge."""

    shapes: tuple[Polygon, ...]
    hinges: tuple[Hinge, ...]
    angles: tuple[int, ...]

    def __post_init__(self):
        if len(self.hinges) != len(self.shapes) - 1:
            raise InvalidIdentifier("need exactly one hinge between adjacent shapes")
        if len(self.angles) != len(self.hinges):
            raise InvalidIdentifier("one net angle per hinge")

    def hinge_index(self, label: str) -> int:
        for i, h in enumerate(self.hinges):
            if h.label == label:
                return i
        raise InvalidIdentifier(f"no hinge {label!r}")


def rotate_hinge(chain: HingeChain, hinge_index: int, angle: int) -> HingeChain:
    """Rotate every shape after the hinge anticlockwise about its pivot.

    Downstream hinge pivots are transformed with their shapes, so later
    rotations compose consistently.
    """
    if not isinstance(hinge_index, int) or not 0 <= hinge_index < len(chain.hinges):
        raise InvalidIdentifier(f"hinge index {hinge_index} out of range")
    if angle % 45 != 0 or not 45 <= angle <= 315:
        raise InvalidAngle(f"angle must be a multiple of 45 in [45, 315], got {angle}")
    pivot = chain.hinges[hinge_index].pivot
    t = RigidTransform.rotation_about(float(angle), pivot)
    shapes = list(chain.shapes)
    for j in range(hinge_index + 1, len(shapes)):
        shapes[j] = Polygon(tuple(t.apply(v) for v in shapes[j].vertices))
    hinges = list(chain.hinges)
    for j in range(hinge_index + 1, len(hinges)):
        hinges[j] = Hinge(hinges[j].label, t.apply(hinges[j].pivot))
    angles = list(chain.angles)
    angles[hinge_index] = (angles[hinge_index] + angle) % 360
    return HingeChain(tuple(shapes), tuple(hinges), tuple(angles))


def apply_assignment(chain: HingeChain, assignment: dict[str, int]) -> HingeChain:
    """Apply per-hinge angles (by label, in chain order); hinges absent from
    the assignment stay unrotated."""
    for i, h in enumerate(chain.hinges):
        if h.label in assignment:
            chain = rotate_hinge(chain, i, assignment[h.label])
    return chain


def matches_target(chain: HingeChain, target: tuple[Polygon, ...]) -> bool:
    """Terminal silhouette check: IoU against the target >= MATCH_IOU after
    centroid alignment."""
    return geom.silhouette_iou(list(chain.shapes), list(target)) >= MATCH_IOU


def chain_has_self_overlap(chain: HingeChain) -> bool:
    shapes = chain.shapes
    for i in range(len(shapes)):
        for j in range(i + 1, len(shapes)):
            if geom.overlap(shapes[i], shapes[j], tol=1e-7):
                return True
    return False


# ---------------------------------------------------------------------------
# Fast enumeration machinery (solver + generation-time ambiguity audit).
# Configurations are handled as raw vertex tuples; silhouettes are compared
# on coarse rasterized masks after centroid alignment.

_MASK_RES = 64


def _rot(angle_deg: float, pivot, pts):
    r = math.radians(angle_deg)
    c, s = math.cos(r), math.sin(r)
    px, py = pivot
    return [(c * (x - px) - s * (y - py) + px, s * (x - px) + c * (y - py) + py)
            for x, y in pts]


def _config_bbox(shapes):
    xs = [x for pts in shapes for x, _ in pts]
    ys = [y for pts in shapes for _, y in pts]
    return min(xs), min(ys), max(xs), max(ys)


def _mask(shapes, res=_MASK_RES):
    x0, y0, x1, y1 = _config_bbox(shapes)
    span = max(x1 - x0, y1 - y0) + 0.2
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    scale = res / span
    ys, xs = np.mgrid[0:res, 0:res]
    wx = (xs + 0.5) / scale + (cx - span / 2)
    wy = (ys + 0.5) / scale + (cy - span / 2)
    mask = np.zeros((res, res), dtype=bool)
    for pts in shapes:
        inside = np.ones((res, res), dtype=bool)
        n = len(pts)
        for i in range(n):
            xa, ya = pts[i]
            xb, yb = pts[(i + 1) % n]
            inside &= (xb - xa) * (wy - ya) - (yb - ya) * (wx - xa) >= 0
        mask |= inside
    return mask


def _mask_iou(ma, mb):
    ia, ja = np.nonzero(ma)
    ib, jb = np.nonzero(mb)
    if len(ia) == 0 or len(ib) == 0:
        return 0.0
    mb = np.roll(np.roll(mb, int(round(ia.mean() - ib.mean())), axis=0),
                 int(round(ja.mean() - jb.mean())), axis=1)
    inter = np.logical_and(ma, mb).sum()
    union = np.logical_or(ma, mb).sum()
    return inter / union


def _enumerate_assignments(chain: HingeChain, target: tuple[Polygon, ...],
                           callback, bbox_slack: float = 0.35):
    """Depth-first sweep over all angle assignments, pruning prefixes whose
    settled shapes already exceed the target's bounding box. The callback
    receives (angles, shapes) per surviving leaf and may return True to stop.
    """
    k = len(chain.hinges)
    tx0, ty0, tx1, ty1 = _config_bbox([p.as_xy() for p in target])
    tw, th = tx1 - tx0, ty1 - ty0
    shapes0 = [p.as_xy() for p in chain.shapes]
    pivots0 = [h.pivot.as_tuple() for h in chain.hinges]

    def prefix_ok(shapes, upto):
        # Settled shapes never move again and the final config must match
        # the target up to translation, so each axis extent binds on its own.
        x0, y0, x1, y1 = _config_bbox(shapes[:upto])
        return (x1 - x0) <= tw + bbox_slack and (y1 - y0) <= th + bbox_slack

    def dfs(h, shapes, pivots, angles):
        if h == k:
            if prefix_ok(shapes, len(shapes)):
                return callback(tuple(angles), shapes)
            return False
        for angle in ANGLES:
            pv = pivots[h]
            ns = shapes[:h + 1] + [_rot(angle, pv, pts) for pts in shapes[h + 1:]]
            npv = pivots[:h + 1] + [_rot(angle, pv, [p])[0] for p in pivots[h + 1:]]
            if not prefix_ok(ns, h + 2):
                continue
            if dfs(h + 1, ns, npv, angles + [angle]):
                return True
        return False

    dfs(0, shapes0, pivots0, [])


def solve(chain: HingeChain, target: tuple[Polygon, ...]) -> dict[str, int]:
    """First angle assignment whose terminal silhouette matches the target.

    Enumerates depth-first with bounding-box pruning; raises Unsolvable when
    the sweep finishes empty-handed.
    """
    if len(chain.hinges) > 5:
        raise InvalidIdentifier("solver supports at most 5 hinges")
    target_mask = _mask([p.as_xy() for p in target])
    found: dict[str, int] = {}

    def check(angles, shapes):
        if _mask_iou(target_mask, _mask(shapes)) < AMBIGUITY_BAND:
            return False
        cfg = apply_assignment(chain, {h.label: a for h, a in zip(chain.hinges, angles)})
        if matches_target(cfg, target):
            found.update({h.label: a for h, a in zip(chain.hinges, angles)})
            return True
        return False

    _enumerate_assignments(chain, target, check)
    if not found:
        raise Unsolvable("no hinge assignment reproduces the target silhouette")
    return found


# ---------------------------------------------------------------------------
# Generation

@dataclass(frozen=True)
class HingeInstance:
    level: int
    seed: int
    chain: HingeChain
    gt_angles: tuple[int, ...]
    target: tuple[Polygon, ...]

    task = "hinge_folding"

    @property
    def instance_id(self) -> str:
        return f"hinge_folding/level_{self.level}/{self.seed}"

    def gt_assignment(self) -> dict[str, int]:
        return {h.label: a for h, a in zip(self.chain.hinges, self.gt_angles)}

    def admissible_set_sizes(self) -> list[int]:
        """Per-hinge count of angles the generator may sample (6 where the
        half-turn exclusion applies, else 7)."""
        sizes = []
        for i in range(len(self.chain.hinges)):
            a, b = self.chain.shapes[i], self.chain.shapes[i + 1]
            sizes.append(6 if _same_class(a, b) else 7)
        return sizes

    def to_doc(self) -> dict:
        return {
            "task": self.task,
            "level": self.level,
            "seed": self.seed,
            "shapes": [p.as_xy() for p in self.chain.shapes],
            "hinges": [{"label": h.label, "pivot": list(h.pivot.as_tuple())}
                       for h in self.chain.hinges],
            "gt_angles": list(self.gt_angles),
            "target": [p.as_xy() for p in self.target],
        }

    @staticmethod
    def from_doc(doc: dict) -> "HingeInstance":
        shapes = tuple(Polygon.from_xy(p) for p in doc["shapes"])
        hinges = tuple(Hinge(h["label"], Point2(*h["pivot"])) for h in doc["hinges"])
        chain = HingeChain(shapes, hinges, (0,) * len(hinges))
        return HingeInstance(doc["level"], doc["seed"], chain,
                             tuple(doc["gt_angles"]),
                             tuple(Polygon.from_xy(p) for p in doc["target"]))


_CLASS_BY_VERTS: dict[tuple, str] = {}


def _shape_class(poly: Polygon) -> str:
    """Congruence class of a library shape, pose-invariant: keyed by sorted
    edge lengths."""
    pts = poly.as_xy()
    edges = sorted(round(math.dist(pts[i], pts[(i + 1) % len(pts)]), 6)
                   for i in range(len(pts)))
    return f"{len(pts)}:{edges}"


def _same_class(a: Polygon, b: Polygon) -> bool:
    return _shape_class(a) == _shape_class(b)


def _build_chain(rng: random.Random, n_shapes: int) -> HingeChain:
    identical = rng.random() < 0.4
    names = list(SHAPE_LIBRARY)
    if identical:
        choice = rng.choice(names)
        variants = [choice] * n_shapes
    else:
        variants = [rng.choice(names) for _ in range(n_shapes)]

    shapes: list[Polygon] = []
    hinges: list[Hinge] = []
    cursor = 0.0
    prev_right_h = 0.0
    for i, name in enumerate(variants):
        pts, _ = SHAPE_LIBRARY[name]
        width = max(x for x, _ in pts)
        poly = Polygon.from_xy([(x + cursor, y) for x, y in pts])
        if i > 0:
            left_h = _edge_height(pts, 0.0)
            shared = min(prev_right_h, left_h)
            if shared > 0 and rng.random() < 0.5:
                pivot = Point2(cursor, shared)
            else:
                pivot = Point2(cursor, 0.0)
            hinges.append(Hinge(HINGE_LABELS[i - 1], pivot))
        prev_right_h = _edge_height(pts, width)
        shapes.append(poly)
        cursor += width
    return HingeChain(tuple(shapes), tuple(hinges), (0,) * len(hinges))


def _edge_height(pts, x: float) -> float:
    ys = [y for px, y in pts if abs(px - x) < 1e-9]
    return max(ys) if len(ys) >= 2 else 0.0


def generate(level: int, seed: int, attempts: int = 2_000) -> HingeInstance:
    """Chain of level+1 shapes with sampled fold angles; rejects configs
    that self-overlap at any step or admit a near-miss silhouette."""
    if not 1 <= level <= 5:
        raise InvalidIdentifier(f"level must be 1..5, got {level}")
    rng = random.Random(stable_seed("hinge_folding", level, seed))
    for _ in range(attempts):
        chain = _build_chain(rng, level + 1)
        angles = []
        ok = True
        cfg = chain
        for i in range(len(chain.hinges)):
            pool = list(ANGLES)
            if _same_class(chain.shapes[i], chain.shapes[i + 1]):
                pool.remove(180)
            angle = rng.choice(pool)
            cfg = rotate_hinge(cfg, i, angle)
            angles.append(angle)
            if chain_has_self_overlap(cfg):
                ok = False
                break
        if not ok:
            continue
        target = cfg.shapes
        if _ambiguous(chain, target):
            continue
        return HingeInstance(level, seed, chain, tuple(angles), target)
    raise GenerationFailed(f"hinge_folding level {level} seed {seed}: "
                           f"no clean chain within {attempts} attempts")


def _ambiguous(chain: HingeChain, target: tuple[Polygon, ...]) -> bool:
    """True if some assignment lands in the near-miss band [AMBIGUITY_BAND,
    MATCH_IOU): visually close to the target yet scored incorrect."""
    target_mask = _mask([p.as_xy() for p in target])
    flag = [False]

    def check(angles, shapes):
        iou = _mask_iou(target_mask, _mask(shapes))
        if iou < AMBIGUITY_BAND - 0.03:
            return False
        cfg = apply_assignment(chain, {h.label: a for h, a in zip(chain.hinges, angles)})
        exact = geom.silhouette_iou(list(cfg.shapes), list(target))
        if AMBIGUITY_BAND <= exact < MATCH_IOU:
            flag[0] = True
            return True
        return False

    _enumerate_assignments(chain, target, check)
    return flag[0]
