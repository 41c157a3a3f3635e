"""Form board task: partition a target silhouette into pairwise-distinct
pieces, pad with area-separated distractors, and verify exact tilings.

Pieces are convex (straight-line cuts of a convex target), compared up to
translation only; answers are label subsets.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import geom
from .errors import DegenerateGeometry, GenerationFailed
from .geom import Polygon
from .seeds import stable_seed

AREA_EPS_FRAC = 0.03   # distractor-vs-answer area gap, fraction of target area
MIN_PIECE_FRAC = 0.10  # smallest piece, fraction of target area
LABELS = "ABCDE"
PIECE_COLORS = {
    "A": (86, 144, 255),
    "B": (255, 160, 64),
    "C": (96, 200, 120),
    "D": (200, 110, 220),
    "E": (250, 210, 80),
}

XY = tuple[float, float]


def _simplify(pts: list[XY]) -> list[XY]:
    """Drop collinear and duplicate vertices."""
    out: list[XY] = []
    n = len(pts)
    for i in range(n):
        p0 = pts[(i - 1) % n]
        p1 = pts[i]
        p2 = pts[(i + 1) % n]
        if math.dist(p0, p1) < 1e-9:
            continue
        cross = ((p1[0] - p0[0]) * (p2[1] - p0[1]) -
                 (p1[1] - p0[1]) * (p2[0] - p0[0]))
        if abs(cross) < 1e-9:
            continue
        out.append(p1)
    return out


def canonical_shape(poly: Polygon, decimals: int = 6) -> tuple:
    """Translation-invariant canonical form: vertex multiset after centroid
    alignment, rounded."""
    pts = _simplify(poly.as_xy())
    cx, cy = geom.centroid(pts)
    return tuple(sorted((round(x - cx, decimals), round(y - cy, decimals))
                        for x, y in pts))


def congruent(a: Polygon, b: Polygon, tol: float = 1e-6) -> bool:
    """Congruence under translation only (no rotation, matching the task's
    no-rotation placement rule)."""
    pa = _simplify(a.as_xy())
    pb = _simplify(b.as_xy())
    if len(pa) != len(pb):
        return False
    ca, cb = geom.centroid(pa), geom.centroid(pb)
    rest = [(x - cb[0], y - cb[1]) for x, y in pb]
    for x, y in pa:
        q = (x - ca[0], y - ca[1])
        hit = next((r for r in rest if math.dist(q, r) <= tol), None)
        if hit is None:
            return False
        rest.remove(hit)
    return True


def _split(poly: Polygon, angle: float, through: XY):
    """Cut a convex polygon with the line through `through` at `angle`;
    returns (negative side, positive side) or None when degenerate."""
    c, s = math.cos(angle), math.sin(angle)
    nx, ny = -s, c  # normal

    def side_val(p):
        return (p[0] - through[0]) * nx + (p[1] - through[1]) * ny

    def clip(keep_positive: bool):
        pts = poly.as_xy()
        out = []
        n = len(pts)
        sign = 1.0 if keep_positive else -1.0
        vals = [sign * side_val(p) for p in pts]
        for i in range(n):
            p, vp = pts[i], vals[i]
            q, vq = pts[(i + 1) % n], vals[(i + 1) % n]
            if vp >= -1e-12:
                out.append(p)
            if (vp > 1e-12 and vq < -1e-12) or (vp < -1e-12 and vq > 1e-12):
                t = vp / (vp - vq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        out = _simplify(out)
        if len(out) < 3 or geom.signed_area(out) < 1e-9:
            return None
        return Polygon.from_xy(out)

    lo = clip(False)
    hi = clip(True)
    if lo is None or hi is None:
        return None
    return lo, hi


def sample_target(rng: random.Random) -> Polygon:
    """Convex target: a rectangle with zero to two corners sliced off."""
    w = rng.uniform(3.2, 4.8)
    h = rng.uniform(2.6, 4.2)
    poly = Polygon.from_xy([(0, 0), (w, 0), (w, h), (0, h)])
    for _ in range(rng.randint(0, 2)):
        pts = poly.as_xy()
        i = rng.randrange(len(pts))
        a, b, c = pts[(i - 1) % len(pts)], pts[i], pts[(i + 1) % len(pts)]
        t1, t2 = rng.uniform(0.25, 0.6), rng.uniform(0.25, 0.6)
        p = (b[0] + t1 * (a[0] - b[0]), b[1] + t1 * (a[1] - b[1]))
        q = (b[0] + t2 * (c[0] - b[0]), b[1] + t2 * (c[1] - b[1]))
        cand = pts[:i] + [p, q] + pts[i + 1:] if i > 0 else [p, q] + pts[1:]
        cand = _simplify(cand)
        if len(cand) >= 3 and geom.signed_area(cand) > 0:
            try:
                poly = Polygon.from_xy(cand)
            except DegenerateGeometry:
                pass
    return poly


def cut(target: Polygon, k: int, seed: int, attempts: int = 3_000) -> list[Polygon]:
    """Partition the target into k pairwise non-congruent convex pieces."""
    if not 1 <= k <= 5:
        raise GenerationFailed(f"piece count must be 1..5, got {k}")
    rng = random.Random(stable_seed("form_board_cut", seed, k))
    total = target.area
    for _ in range(attempts):
        pieces = [target]
        ok = True
        while len(pieces) < k:
            pieces.sort(key=lambda p: -p.area)
            big = pieces[0]
            done = False
            for _ in range(60):
                cx, cy = geom.centroid(big.as_xy())
                bx0, by0, bx1, by1 = geom.bbox(big.as_xy())
                through = (cx + rng.uniform(-0.25, 0.25) * (bx1 - bx0),
                           cy + rng.uniform(-0.25, 0.25) * (by1 - by0))
                res = _split(big, rng.uniform(0, math.pi), through)
                if res is None:
                    continue
                lo, hi = res
                if min(lo.area, hi.area) < MIN_PIECE_FRAC * total:
                    continue
                if min(_bbox_min_side(lo), _bbox_min_side(hi)) < 0.55:
                    continue
                pieces = [lo, hi] + pieces[1:]
                done = True
                break
            if not done:
                ok = False
                break
        if not ok:
            continue
        canons = {canonical_shape(p) for p in pieces}
        if len(canons) != len(pieces):
            continue
        assert abs(sum(p.area for p in pieces) - total) < 1e-9
        return pieces
    raise GenerationFailed(f"could not cut target into {k} distinct pieces")


def _bbox_min_side(poly: Polygon) -> float:
    x0, y0, x1, y1 = geom.bbox(poly.as_xy())
    return min(x1 - x0, y1 - y0)


def make_distractors(answer_pieces: list[Polygon], m: int, seed: int,
                     attempts: int = 4_000) -> list[Polygon]:
    """m decoys built by subdividing (and lightly perturbing) answer pieces;
    every decoy's area differs from every answer piece's by the area gap."""
    if m == 0:
        return []
    # answer pieces partition the target, so their total is the target area
    eps = AREA_EPS_FRAC * sum(p.area for p in answer_pieces)
    rng = random.Random(stable_seed("form_board_distractors", seed, m))
    out: list[Polygon] = []
    for _ in range(attempts):
        if len(out) == m:
            break
        base = rng.choice(answer_pieces)
        res = _split(base, rng.uniform(0, math.pi),
                     geom.centroid(base.as_xy()))
        if res is None:
            continue
        cand = res[rng.randrange(2)]
        cand = _jitter(cand, rng)
        if cand is None or _bbox_min_side(cand) < 0.5:
            continue
        if any(abs(cand.area - p.area) < eps for p in answer_pieces):
            continue
        if any(congruent(cand, p) for p in answer_pieces + out):
            continue
        out.append(cand)
    if len(out) < m:
        raise GenerationFailed(f"could not build {m} distractors")
    return out


def _jitter(poly: Polygon, rng: random.Random, scale: float = 0.06):
    pts = [(x + rng.uniform(-scale, scale), y + rng.uniform(-scale, scale))
           for x, y in poly.as_xy()]
    pts = _simplify(pts)
    if len(pts) < 3 or geom.signed_area(pts) <= 0 or not geom.is_convex(pts):
        return None
    try:
        return Polygon.from_xy(pts)
    except DegenerateGeometry:
        return None


def verify_tiling(target: Polygon, placed: list[tuple[Polygon, XY]]) -> bool:
    """True iff the translated pieces cover the target exactly: no gaps
    (area tolerance 1e-6) and no pairwise overlap (intersection < 1e-9)."""
    from shapely.geometry import Polygon as ShPolygon
    from shapely.ops import unary_union

    if target.area <= 1e-12:
        raise DegenerateGeometry("zero-area target")
    shp = []
    for poly, (dx, dy) in placed:
        shp.append(ShPolygon([(x + dx, y + dy) for x, y in poly.as_xy()]))
    for i in range(len(shp)):
        for j in range(i + 1, len(shp)):
            if shp[i].intersection(shp[j]).area >= 1e-9:
                return False
    union = unary_union(shp)
    tgt = ShPolygon(target.as_xy())
    return union.symmetric_difference(tgt).area < 1e-6


# ---------------------------------------------------------------------------
# Instance assembly

@dataclass(frozen=True)
class Piece:
    label: str
    color: tuple[int, int, int]
    shape: Polygon            # centroid at the origin
    placement: XY | None      # target-frame translation for answer pieces


@dataclass(frozen=True)
class FormBoardInstance:
    level: int
    seed: int
    target: Polygon
    pieces: tuple[Piece, ...]
    answer: frozenset[str]

    task = "form_board"

    @property
    def instance_id(self) -> str:
        return f"form_board/level_{self.level}/{self.seed}"

    def answer_pieces(self) -> list[Piece]:
        return [p for p in self.pieces if p.label in self.answer]

    def to_doc(self) -> dict:
        return {
            "task": self.task,
            "level": self.level,
            "seed": self.seed,
            "target": self.target.as_xy(),
            "pieces": [{
                "label": p.label,
                "color": list(p.color),
                "vertices": p.shape.as_xy(),
                "placement": list(p.placement) if p.placement else None,
            } for p in self.pieces],
            "answer": sorted(self.answer),
        }

    @staticmethod
    def from_doc(doc: dict) -> "FormBoardInstance":
        pieces = tuple(
            Piece(p["label"], tuple(p["color"]), Polygon.from_xy(p["vertices"]),
                  tuple(p["placement"]) if p["placement"] else None)
            for p in doc["pieces"]
        )
        return FormBoardInstance(doc["level"], doc["seed"],
                                 Polygon.from_xy(doc["target"]),
                                 pieces, frozenset(doc["answer"]))


def _centered(poly: Polygon) -> tuple[Polygon, XY]:
    cx, cy = geom.centroid(poly.as_xy())
    return poly.translated(-cx, -cy), (cx, cy)


def _unique_subset_sum(areas: dict[str, float], answer: frozenset[str],
                       target_area: float, half_eps: float) -> bool:
    labels = sorted(areas)
    n = len(labels)
    for mask in range(1, 2 ** n):
        subset = frozenset(labels[i] for i in range(n) if mask >> i & 1)
        if subset == answer:
            continue
        if abs(sum(areas[l] for l in subset) - target_area) < half_eps:
            return False
    return True


def generate(level: int, seed: int, attempts: int = 300) -> FormBoardInstance:
    """Five labeled pieces of which `level` tile the target; answer subsets
    are unique under the area budget, making label scoring sound."""
    if not 1 <= level <= 5:
        raise GenerationFailed(f"level must be 1..5, got {level}")
    rng = random.Random(stable_seed("form_board", level, seed))
    for attempt in range(attempts):
        target = sample_target(rng)
        sub_seed = stable_seed(seed, level, attempt)
        try:
            answers = cut(target, level, sub_seed)
            decoys = make_distractors(answers, 5 - level, sub_seed)
        except GenerationFailed:
            continue

        entries = [(poly, True) for poly in answers] + [(poly, False) for poly in decoys]
        rng.shuffle(entries)
        pieces = []
        answer_labels = set()
        for label, (poly, is_answer) in zip(LABELS, entries):
            shape, centroid = _centered(poly)
            placement = centroid if is_answer else None
            pieces.append(Piece(label, PIECE_COLORS[label], shape, placement))
            if is_answer:
                answer_labels.add(label)

        areas = {p.label: p.shape.area for p in pieces}
        eps = AREA_EPS_FRAC * target.area
        if not _unique_subset_sum(areas, frozenset(answer_labels),
                                  target.area, eps / 2):
            continue

        inst = FormBoardInstance(level, seed, target, tuple(pieces),
                                 frozenset(answer_labels))
        placed = [(p.shape, p.placement) for p in inst.answer_pieces()]
        if not verify_tiling(target, placed):
            continue
        return inst
    raise GenerationFailed(f"form_board level {level} seed {seed}: "
                           f"no instance within {attempts} attempts")
