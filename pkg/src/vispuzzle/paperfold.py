"""Paper fold task: fold a unit square along horizontal, vertical, or
diagonal lines, punch one hole through every covering layer, and unfold
step by step.

A layer maps current folded coordinates back to original paper coordinates
through a composition of reflections; its domain is a convex polygon in the
folded frame.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import GenerationFailed, InvalidFold, InvalidPunch
from .seeds import stable_seed

FAMILIES = ("horizontal", "vertical", "main_diagonal", "anti_diagonal")
DELTA = 0.10          # minimum distractor displacement (fraction of side)
PUNCH_MARGIN = 0.05   # keep holes away from creases and borders
HOLE_TOL = 1e-6

XY = tuple[float, float]
Affine = tuple[float, float, float, float, float, float]  # a,b,tx,c,d,ty

_IDENTITY: Affine = (1.0, 0.0, 0.0, 0.0, 1.0, 0.0)


def _apply(t: Affine, p: XY) -> XY:
    a, b, tx, c, d, ty = t
    return (a * p[0] + b * p[1] + tx, c * p[0] + d * p[1] + ty)


def _compose(outer: Affine, inner: Affine) -> Affine:
    a1, b1, tx1, c1, d1, ty1 = outer
    a2, b2, tx2, c2, d2, ty2 = inner
    return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, a1 * tx2 + b1 * ty2 + tx1,
            c1 * a2 + d1 * c2, c1 * b2 + d1 * d2, c1 * tx2 + d1 * ty2 + ty1)


@dataclass(frozen=True)
class Fold:
    """Fold line v = c for the family's coordinate v; the moving side
    ("positive" or "negative" sign of v - c) flips onto the other."""

    family: str
    c: float
    moving: str

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidFold(f"unknown fold family {self.family!r}")
        if self.moving not in ("positive", "negative"):
            raise InvalidFold(f"moving side must be positive/negative")

    def coord(self, p: XY) -> float:
        x, y = p
        if self.family == "vertical":
            return x
        if self.family == "horizontal":
            return y
        if self.family == "main_diagonal":
            return y - x
        return y + x

    def on_moving_side(self, p: XY) -> bool:
        v = self.coord(p) - self.c
        return v > 0 if self.moving == "positive" else v < 0

    def reflection(self) -> Affine:
        c = self.c
        if self.family == "vertical":
            return (-1.0, 0.0, 2 * c, 0.0, 1.0, 0.0)
        if self.family == "horizontal":
            return (1.0, 0.0, 0.0, 0.0, -1.0, 2 * c)
        if self.family == "main_diagonal":
            return (0.0, 1.0, -c, 1.0, 0.0, c)
        return (0.0, -1.0, c, -1.0, 0.0, c)

    def reflect(self, p: XY) -> XY:
        return _apply(self.reflection(), p)


@dataclass(frozen=True)
class Layer:
    domain: tuple[XY, ...]   # convex polygon in the folded frame
    to_paper: Affine         # folded frame -> original paper coordinates

    def covers(self, p: XY, tol: float = 1e-9) -> bool:
        pts = self.domain
        n = len(pts)
        for i in range(n):
            x0, y0 = pts[i]
            x1, y1 = pts[(i + 1) % n]
            if (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0) < -tol:
                return False
        return True


@dataclass(frozen=True)
class LayerStack:
    layers: tuple[Layer, ...]
    folds: tuple[Fold, ...]


@dataclass(frozen=True)
class HolePattern:
    holes: tuple[XY, ...]

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(sorted(self.holes)))

    def __len__(self) -> int:
        return len(self.holes)

    def matches(self, other: "HolePattern", tol: float = 1e-6) -> bool:
        if len(self) != len(other):
            return False
        return all(math.dist(a, b) <= tol
                   for a, b in zip(self.holes, other.holes))


def initial_stack() -> LayerStack:
    square = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))
    return LayerStack((Layer(square, _IDENTITY),), ())


def _clip(pts, fold: Fold, keep_positive: bool, tol: float = 1e-12):
    """Half-plane clip of a convex polygon against the fold line."""
    sign = 1.0 if keep_positive else -1.0
    out = []
    n = len(pts)
    vals = [sign * (fold.coord(p) - fold.c) for p in pts]
    for i in range(n):
        p, vp = pts[i], vals[i]
        q, vq = pts[(i + 1) % n], vals[(i + 1) % n]
        if vp >= -tol:
            out.append(p)
        if (vp > tol and vq < -tol) or (vp < -tol and vq > tol):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    # drop degenerate slivers
    if len(out) < 3 or abs(_area(out)) < 1e-12:
        return None
    return tuple(out)


def _area(pts) -> float:
    acc = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return acc / 2.0


def fold(stack: LayerStack, f: Fold) -> LayerStack:
    """Fold the moving side over: moving pieces are reflected and their
    transforms composed with the fold reflection."""
    moving_positive = f.moving == "positive"
    refl = f.reflection()
    new_layers: list[Layer] = []
    moved_any = False
    kept_any = False
    for layer in stack.layers:
        kept = _clip(layer.domain, f, keep_positive=not moving_positive)
        moving = _clip(layer.domain, f, keep_positive=moving_positive)
        if kept is not None:
            kept_any = True
            new_layers.append(Layer(kept, layer.to_paper))
        if moving is not None:
            moved_any = True
            reflected = tuple(_apply(refl, p) for p in moving)
            if _area(reflected) < 0:
                reflected = tuple(reversed(reflected))
            new_layers.append(Layer(reflected, _compose(layer.to_paper, refl)))
    if not moved_any or not kept_any:
        raise InvalidFold("fold line does not cut the current extent")
    return LayerStack(tuple(new_layers), stack.folds + (f,))


def fold_all(folds) -> LayerStack:
    stack = initial_stack()
    for f in folds:
        stack = fold(stack, f)
    return stack


def _dedupe(points, tol: float = HOLE_TOL) -> tuple[XY, ...]:
    out: list[XY] = []
    for p in points:
        if all(math.dist(p, q) > tol for q in out):
            out.append(p)
    return tuple(out)


def punch(stack: LayerStack, p: XY) -> HolePattern:
    """One hole through every layer covering p, mapped back to the paper."""
    covering = [layer for layer in stack.layers if layer.covers(p)]
    if not covering:
        raise InvalidPunch(f"punch point {p} lies outside the folded paper")
    return HolePattern(_dedupe(_apply(layer.to_paper, p) for layer in covering))


def unfold_trace(stack: LayerStack, pattern: HolePattern) -> list[HolePattern]:
    """Partial hole patterns while undoing folds one at a time; the last
    element is the fully unfolded pattern.

    Walking backward, a hole h before fold j existed at h (if the pre-fold
    paper covered it) and/or at reflect_j(h) on the then-moving side.
    """
    stages = [initial_stack()]
    for f in stack.folds:
        stages.append(fold(stages[-1], f))

    punch_pts = _punch_points(stack, pattern)
    holes = punch_pts
    trace: list[HolePattern] = []
    for j in range(len(stack.folds), 0, -1):
        f = stack.folds[j - 1]
        prev = stages[j - 1]
        out = []
        for h in holes:
            if any(layer.covers(h) for layer in prev.layers):
                out.append(h)
            r = f.reflect(h)
            if any(layer.covers(r) for layer in prev.layers):
                out.append(r)
        holes = _dedupe(out)
        trace.append(HolePattern(holes))
    return trace


def _punch_points(stack: LayerStack, pattern: HolePattern) -> tuple[XY, ...]:
    """Recover the folded-frame punch location(s) from an original-frame
    pattern (inverse of the layer maps; reflections are involutions so the
    inverse equals the transpose composition applied in reverse)."""
    candidates = []
    for layer in stack.layers:
        a, b, tx, c, d, ty = layer.to_paper
        # orthogonal with det +-1: inverse linear part is the transpose
        for h in pattern.holes:
            x, y = h[0] - tx, h[1] - ty
            q = (a * x + c * y, b * x + d * y)
            if layer.covers(q) and _apply(layer.to_paper, q) in pattern.holes:
                candidates.append(q)
    return _dedupe(candidates)


# ---------------------------------------------------------------------------
# Generation

@dataclass(frozen=True)
class PaperFoldInstance:
    level: int
    seed: int
    folds: tuple[Fold, ...]
    punch_point: XY
    options: dict[str, HolePattern]
    answer_label: str

    task = "paper_fold"

    @property
    def instance_id(self) -> str:
        return f"paper_fold/level_{self.level}/{self.seed}"

    @property
    def gt_pattern(self) -> HolePattern:
        return self.options[self.answer_label]

    def to_doc(self) -> dict:
        return {
            "task": self.task,
            "level": self.level,
            "seed": self.seed,
            "folds": [{"family": f.family, "c": f.c, "moving": f.moving}
                      for f in self.folds],
            "punch": list(self.punch_point),
            "options": {k: [list(h) for h in v.holes]
                        for k, v in sorted(self.options.items())},
            "answer_label": self.answer_label,
        }

    @staticmethod
    def from_doc(doc: dict) -> "PaperFoldInstance":
        folds = tuple(Fold(f["family"], f["c"], f["moving"]) for f in doc["folds"])
        options = {k: HolePattern(tuple(tuple(h) for h in v))
                   for k, v in doc["options"].items()}
        return PaperFoldInstance(doc["level"], doc["seed"], folds,
                                 tuple(doc["punch"]), options, doc["answer_label"])


def _sample_fold(rng: random.Random, stack: LayerStack) -> Fold | None:
    pts = [p for layer in stack.layers for p in layer.domain]
    family = rng.choice(FAMILIES)
    probe = Fold(family, 0.0, "positive")
    vals = [probe.coord(p) for p in pts]
    lo, hi = min(vals), max(vals)
    if hi - lo < 0.25:
        return None
    c = rng.uniform(lo + 0.3 * (hi - lo), hi - 0.3 * (hi - lo))
    # snap to a half-unit lattice when close, for cleaner renders
    snapped = round(c * 4) / 4
    if lo + 0.2 * (hi - lo) < snapped < hi - 0.2 * (hi - lo):
        c = snapped
    moving = rng.choice(("positive", "negative"))
    return Fold(family, c, moving)


def _punch_candidates(stack: LayerStack, rng: random.Random,
                      margin: float = PUNCH_MARGIN, tries: int = 300):
    edges = []
    for layer in stack.layers:
        pts = layer.domain
        for i in range(len(pts)):
            edges.append((pts[i], pts[(i + 1) % len(pts)]))
    all_pts = [p for layer in stack.layers for p in layer.domain]
    x0 = min(p[0] for p in all_pts)
    x1 = max(p[0] for p in all_pts)
    y0 = min(p[1] for p in all_pts)
    y1 = max(p[1] for p in all_pts)
    for _ in range(tries):
        p = (rng.uniform(x0, x1), rng.uniform(y0, y1))
        if not any(layer.covers(p) for layer in stack.layers):
            continue
        if all(_seg_dist(p, a, b) >= margin for a, b in edges):
            return p
    return None


def _seg_dist(p: XY, a: XY, b: XY) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    ln2 = dx * dx + dy * dy
    if ln2 < 1e-18:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / ln2))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def _perturb_pattern(gt: HolePattern, rng: random.Random) -> HolePattern | None:
    """One candidate distractor: globally similar, but off by at least one
    hole beyond DELTA (or off by one in count)."""
    holes = list(gt.holes)
    op = rng.choice(("jitter", "drop", "add", "mirror"))
    if op == "drop" and len(holes) >= 2:
        holes.pop(rng.randrange(len(holes)))
    elif op == "add":
        for _ in range(20):
            p = (rng.uniform(0.08, 0.92), rng.uniform(0.08, 0.92))
            if all(math.dist(p, h) >= DELTA for h in holes):
                holes.append(p)
                break
        else:
            return None
    elif op == "mirror":
        i = rng.randrange(len(holes))
        x, y = holes[i]
        axis = rng.choice(("v", "h", "d", "a"))
        moved = {"v": (1 - x, y), "h": (x, 1 - y), "d": (y, x),
                 "a": (1 - y, 1 - x)}[axis]
        holes[i] = moved
    else:
        i = rng.randrange(len(holes))
        x, y = holes[i]
        ang = rng.uniform(0, 2 * math.pi)
        r = rng.uniform(DELTA + 0.02, 2.2 * DELTA)
        holes[i] = (x + r * math.cos(ang), y + r * math.sin(ang))

    if not all(0.02 <= hx <= 0.98 and 0.02 <= hy <= 0.98 for hx, hy in holes):
        return None
    deduped = _dedupe(holes, tol=0.04)
    if len(deduped) != len(holes):
        return None
    return HolePattern(tuple(holes))


def _valid_distractor(cand: HolePattern, gt: HolePattern) -> bool:
    if len(cand) != len(gt):
        return abs(len(cand) - len(gt)) == 1
    # same count: at least one hole farther than DELTA from every gt hole
    return any(all(math.dist(h, g) > DELTA for g in gt.holes)
               for h in cand.holes)


def make_options(gt: HolePattern, seed: int,
                 attempts: int = 4_000) -> tuple[dict[str, HolePattern], str]:
    """Five labeled patterns, one equal to gt; answer label uniform."""
    rng = random.Random(stable_seed("paper_fold_options", seed))
    distractors: list[HolePattern] = []
    for _ in range(attempts):
        if len(distractors) == 4:
            break
        cand = _perturb_pattern(gt, rng)
        if cand is None or not _valid_distractor(cand, gt):
            continue
        if any(cand.matches(d, tol=0.05) for d in distractors):
            continue
        distractors.append(cand)
    if len(distractors) < 4:
        raise GenerationFailed("could not build four spaced distractors")
    answer_pos = rng.randrange(5)
    patterns = distractors[:answer_pos] + [gt] + distractors[answer_pos:]
    labels = "ABCDE"
    return dict(zip(labels, patterns)), labels[answer_pos]


def generate(level: int, seed: int, attempts: int = 400) -> PaperFoldInstance:
    """`level` folds, one punch, five options; every fold keeps both sides
    substantial so renders stay legible."""
    if not 1 <= level <= 5:
        raise InvalidFold(f"level must be 1..5, got {level}")
    rng = random.Random(stable_seed("paper_fold", level, seed))
    for _ in range(attempts):
        stack = initial_stack()
        ok = True
        for _ in range(level):
            f = None
            for _ in range(40):
                cand = _sample_fold(rng, stack)
                if cand is None:
                    continue
                try:
                    nxt = fold(stack, cand)
                except InvalidFold:
                    continue
                areas = sorted(abs(_area(l.domain)) for l in nxt.layers)
                if areas[0] < 0.02:
                    continue
                f, stack = cand, nxt
                break
            if f is None:
                ok = False
                break
        if not ok:
            continue
        p = _punch_candidates(stack, rng)
        if p is None:
            continue
        pattern = punch(stack, p)
        try:
            options, answer = make_options(pattern, stable_seed(level, seed))
        except GenerationFailed:
            continue
        return PaperFoldInstance(level, seed, stack.folds, p, options, answer)
    raise GenerationFailed(f"paper_fold level {level} seed {seed}: "
                           f"no instance within {attempts} attempts")
