"""Independent brute-force oracles used to freeze expected values.

These deliberately avoid the analytic code paths they check: overlap is
probed by point sampling, slides by scan + bisection over the overlap
predicate, silhouette IoU by rasterization, and hole patterns by tracking
a dense cloud of paper points through every fold.
"""

from __future__ import annotations

import math
import random

import numpy as np


def point_in_convex(p, pts, strict=True):
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        cross = (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0)
        if strict and cross <= 1e-12:
            return False
        if not strict and cross < -1e-12:
            return False
    return True


def sampled_overlap(pts_a, pts_b, samples=10_000, seed=0):
    """Overlap oracle: sample points in the bbox intersection and test
    strict membership in both convex polygons."""
    rng = random.Random(seed)
    ax0 = max(min(p[0] for p in pts_a), min(p[0] for p in pts_b))
    ax1 = min(max(p[0] for p in pts_a), max(p[0] for p in pts_b))
    ay0 = max(min(p[1] for p in pts_a), min(p[1] for p in pts_b))
    ay1 = min(max(p[1] for p in pts_a), max(p[1] for p in pts_b))
    if ax0 >= ax1 or ay0 >= ay1:
        return False
    for _ in range(samples):
        p = (rng.uniform(ax0, ax1), rng.uniform(ay0, ay1))
        if point_in_convex(p, pts_a) and point_in_convex(p, pts_b):
            return True
    return False


def bisect_slide(valid_at, upper, coarse_steps=400, bisections=60):
    """Largest d in [0, upper] with valid_at(t) for the whole prefix [0, d].

    Scans coarsely for the first invalid sample, then bisects the bracket.
    """
    step = upper / coarse_steps
    first_bad = None
    for i in range(1, coarse_steps + 1):
        if not valid_at(i * step):
            first_bad = i * step
            break
    if first_bad is None:
        return upper
    lo, hi = first_bad - step, first_bad
    for _ in range(bisections):
        mid = (lo + hi) / 2.0
        if valid_at(mid):
            lo = mid
        else:
            hi = mid
    return lo


def raster_mask(polys, x0, y0, x1, y1, res):
    """Binary coverage mask of a union of convex polygons on a res x res grid."""
    xs = np.linspace(x0, x1, res, endpoint=False) + (x1 - x0) / (2 * res)
    ys = np.linspace(y0, y1, res, endpoint=False) + (y1 - y0) / (2 * res)
    gx, gy = np.meshgrid(xs, ys)
    mask = np.zeros((res, res), dtype=bool)
    for pts in polys:
        inside = np.ones((res, res), dtype=bool)
        n = len(pts)
        for i in range(n):
            xa, ya = pts[i]
            xb, yb = pts[(i + 1) % n]
            inside &= (xb - xa) * (gy - ya) - (yb - ya) * (gx - xa) >= 0
        mask |= inside
    return mask


def raster_iou(polys_a, polys_b, res=2048):
    """Silhouette IoU oracle: rasterize both unions after aligning the
    centroids of the unions (estimated from the masks themselves)."""
    all_pts = [p for poly in list(polys_a) + list(polys_b) for p in poly]
    x0 = min(p[0] for p in all_pts) - 1.0
    x1 = max(p[0] for p in all_pts) + 1.0
    y0 = min(p[1] for p in all_pts) - 1.0
    y1 = max(p[1] for p in all_pts) + 1.0
    side = max(x1 - x0, y1 - y0)
    x1, y1 = x0 + side, y0 + side

    ma = raster_mask(polys_a, x0, y0, x1, y1, res)
    mb = raster_mask(polys_b, x0, y0, x1, y1, res)
    ia, ja = np.nonzero(ma)
    ib, jb = np.nonzero(mb)
    di = int(round(ia.mean() - ib.mean()))
    dj = int(round(ja.mean() - jb.mean()))
    mb = np.roll(np.roll(mb, di, axis=0), dj, axis=1)
    inter = np.logical_and(ma, mb).sum()
    union = np.logical_or(ma, mb).sum()
    return inter / union


def track_fold_points(folds, punch, n_points=10_000, seed=0, hole_radius=0.02):
    """Paper-fold oracle: push a dense cloud of paper points through every
    fold and report which original points land within hole_radius of the
    punch. Returns a set of original-coordinate cluster centers.
    """
    rng = random.Random(seed)
    pts = [(rng.random(), rng.random()) for _ in range(n_points)]
    folded = list(pts)
    for family, c, keep_negative in folds:
        out = []
        for x, y in folded:
            v = _fold_coord(family, x, y)
            moving = (v > c) if keep_negative else (v < c)
            if moving:
                x, y = _fold_reflect(family, c, x, y)
            out.append((x, y))
        folded = out
    px, py = punch
    hits = [orig for orig, (fx, fy) in zip(pts, folded)
            if math.hypot(fx - px, fy - py) <= hole_radius]
    return cluster(hits, 2.5 * hole_radius)


def _fold_coord(family, x, y):
    if family == "vertical":
        return x
    if family == "horizontal":
        return y
    if family == "main_diagonal":
        return y - x
    return y + x  # anti_diagonal


def _fold_reflect(family, c, x, y):
    if family == "vertical":
        return (2 * c - x, y)
    if family == "horizontal":
        return (x, 2 * c - y)
    if family == "main_diagonal":
        return (y - c, x + c)
    return (c - y, c - x)  # anti_diagonal


def cluster(points, radius):
    """Greedy clustering; returns cluster means as a list of (x, y)."""
    centers = []
    groups = []
    for p in points:
        placed = False
        for i, c in enumerate(centers):
            if math.hypot(p[0] - c[0], p[1] - c[1]) <= radius:
                groups[i].append(p)
                centers[i] = (sum(q[0] for q in groups[i]) / len(groups[i]),
                              sum(q[1] for q in groups[i]) / len(groups[i]))
                placed = True
                break
        if not placed:
            centers.append(p)
            groups.append([p])
    return centers
