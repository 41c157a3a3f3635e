"""2D primitives shared by every task: points, oriented rectangles, simple
polygons, rigid transforms, reflections, overlap tests, and swept contact
distances for slide-to-contact motion.

All overlap semantics are strict-interior: shapes touching along a boundary
(zero-area intersection) do not count as overlapping. The contact tolerance
is CONTACT_TOL lot units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import DegenerateGeometry, InvalidState

CONTACT_TOL = 1e-9

XY = tuple[float, float]


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegenerateGeometry(f"non-finite point ({self.x}, {self.y})")

    def as_tuple(self) -> XY:
        return (self.x, self.y)


@dataclass(frozen=True)
class OrientedRect:
    """Rectangle with `length` along its heading and `width` across it.

    heading is in degrees, normalized to [-180, 180).
    """

    center: Point2
    length: float
    width: float
    heading: float

    def __post_init__(self):
        if self.length <= 0 or self.width <= 0:
            raise DegenerateGeometry("rectangle sides must be positive")
        object.__setattr__(self, "heading", norm_heading(self.heading))

    @property
    def forward(self) -> XY:
        h = math.radians(self.heading)
        return (math.cos(h), math.sin(h))

    def corners(self) -> tuple[XY, XY, XY, XY]:
        ux, uy = self.forward
        vx, vy = -uy, ux
        hl, hw = self.length / 2.0, self.width / 2.0
        cx, cy = self.center.x, self.center.y
        return (
            (cx + ux * hl + vx * hw, cy + uy * hl + vy * hw),
            (cx - ux * hl + vx * hw, cy - uy * hl + vy * hw),
            (cx - ux * hl - vx * hw, cy - uy * hl - vy * hw),
            (cx + ux * hl - vx * hw, cy + uy * hl - vy * hw),
        )

    def translated(self, dx: float, dy: float) -> "OrientedRect":
        return OrientedRect(Point2(self.center.x + dx, self.center.y + dy),
                            self.length, self.width, self.heading)

    def scaled(self, factor: float) -> "OrientedRect":
        return OrientedRect(self.center, self.length * factor,
                            self.width * factor, self.heading)

    @property
    def area(self) -> float:
        return self.length * self.width


@dataclass(frozen=True)
class Polygon:
    """Simple polygon, counter-clockwise, signed area > 0."""

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise DegenerateGeometry("polygon needs at least 3 vertices")
        pts = [v.as_tuple() for v in self.vertices]
        if signed_area(pts) <= CONTACT_TOL:
            raise DegenerateGeometry("polygon must be counter-clockwise with positive area")
        if _self_intersects(pts):
            raise DegenerateGeometry("polygon is self-intersecting")

    @staticmethod
    def from_xy(pts: Iterable[XY]) -> "Polygon":
        return Polygon(tuple(Point2(x, y) for x, y in pts))

    def as_xy(self) -> list[XY]:
        return [v.as_tuple() for v in self.vertices]

    @property
    def area(self) -> float:
        return signed_area(self.as_xy())

    def translated(self, dx: float, dy: float) -> "Polygon":
        return Polygon.from_xy([(x + dx, y + dy) for x, y in self.as_xy()])


@dataclass(frozen=True)
class RigidTransform:
    """Rotation (degrees, about the origin) followed by a translation."""

    rotation: float
    translation: XY

    def apply(self, p: Point2) -> Point2:
        r = math.radians(self.rotation)
        c, s = math.cos(r), math.sin(r)
        return Point2(c * p.x - s * p.y + self.translation[0],
                      s * p.x + c * p.y + self.translation[1])

    def compose(self, inner: "RigidTransform") -> "RigidTransform":
        """self ∘ inner: apply `inner` first, then `self`."""
        r = math.radians(self.rotation)
        c, s = math.cos(r), math.sin(r)
        tx, ty = inner.translation
        return RigidTransform(
            self.rotation + inner.rotation,
            (c * tx - s * ty + self.translation[0],
             s * tx + c * ty + self.translation[1]),
        )

    def inverse(self) -> "RigidTransform":
        r = math.radians(self.rotation)
        c, s = math.cos(r), math.sin(r)
        tx, ty = self.translation
        return RigidTransform(-self.rotation, (-(c * tx + s * ty), -(-s * tx + c * ty)))

    @staticmethod
    def rotation_about(angle_deg: float, pivot: Point2) -> "RigidTransform":
        """Rotation by angle_deg (anticlockwise) about an arbitrary pivot."""
        r = math.radians(angle_deg)
        c, s = math.cos(r), math.sin(r)
        tx = pivot.x - (c * pivot.x - s * pivot.y)
        ty = pivot.y - (s * pivot.x + c * pivot.y)
        return RigidTransform(angle_deg, (tx, ty))


@dataclass(frozen=True)
class Line2:
    point: Point2
    direction: XY

    def __post_init__(self):
        n = math.hypot(*self.direction)
        if abs(n - 1.0) > 1e-9:
            if n < 1e-12:
                raise DegenerateGeometry("line direction is zero")
            object.__setattr__(self, "direction", (self.direction[0] / n, self.direction[1] / n))


Shape = Union[OrientedRect, Polygon]


def norm_heading(deg: float) -> float:
    """Normalize an angle in degrees to [-180, 180)."""
    d = math.fmod(deg + 180.0, 360.0)
    if d < 0:
        d += 360.0
    return d - 180.0


def signed_area(pts: Sequence[XY]) -> float:
    acc = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return acc / 2.0


def centroid(pts: Sequence[XY]) -> XY:
    """Area-weighted centroid of a simple polygon."""
    a = 0.0
    cx = 0.0
    cy = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        cross = x0 * y1 - x1 * y0
        a += cross
        cx += (x0 + x1) * cross
        cy += (y0 + y1) * cross
    if abs(a) < 1e-15:
        raise DegenerateGeometry("zero-area polygon has no centroid")
    a /= 2.0
    return (cx / (6.0 * a), cy / (6.0 * a))


def bbox(pts: Sequence[XY]) -> tuple[float, float, float, float]:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (min(xs), min(ys), max(xs), max(ys))


def shape_points(shape: Shape) -> list[XY]:
    if isinstance(shape, OrientedRect):
        return list(shape.corners())
    return shape.as_xy()


def _segments_properly_intersect(a: XY, b: XY, c: XY, d: XY) -> bool:
    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return (o1 * o2 < 0) and (o3 * o4 < 0)


def _self_intersects(pts: Sequence[XY]) -> bool:
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            c, d = pts[j], pts[(j + 1) % n]
            if _segments_properly_intersect(a, b, c, d):
                return True
    return False


def is_convex(pts: Sequence[XY], tol: float = 1e-12) -> bool:
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        x2, y2 = pts[(i + 2) % n]
        if (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1) < -tol:
            return False
    return True


def triangulate(pts: Sequence[XY]) -> list[tuple[XY, XY, XY]]:
    """Ear-clipping triangulation of a CCW simple polygon."""
    pts = list(pts)
    if len(pts) < 3:
        raise DegenerateGeometry("cannot triangulate fewer than 3 vertices")
    tris: list[tuple[XY, XY, XY]] = []
    idx = list(range(len(pts)))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def point_in_tri(p, a, b, c):
        d1 = cross(a, b, p)
        d2 = cross(b, c, p)
        d3 = cross(c, a, p)
        return d1 > 1e-12 and d2 > 1e-12 and d3 > 1e-12

    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 10000:
            raise DegenerateGeometry("ear clipping failed to converge")
        n = len(idx)
        clipped = False
        for k in range(n):
            i0, i1, i2 = idx[(k - 1) % n], idx[k], idx[(k + 1) % n]
            a, b, c = pts[i0], pts[i1], pts[i2]
            if cross(a, b, c) <= 1e-12:
                continue
            if any(point_in_tri(pts[j], a, b, c) for j in idx if j not in (i0, i1, i2)):
                continue
            tris.append((a, b, c))
            idx.pop(k)
            clipped = True
            break
        if not clipped:
            raise DegenerateGeometry("no ear found; polygon may be degenerate")
    tris.append((pts[idx[0]], pts[idx[1]], pts[idx[2]]))
    return tris


def _convex_pieces(shape: Shape) -> list[list[XY]]:
    pts = shape_points(shape)
    if isinstance(shape, OrientedRect) or is_convex(pts):
        return [pts]
    return [list(t) for t in triangulate(pts)]


def _axes(pts: Sequence[XY]) -> list[XY]:
    out = []
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        ex, ey = x1 - x0, y1 - y0
        ln = math.hypot(ex, ey)
        if ln < 1e-15:
            continue
        out.append((-ey / ln, ex / ln))
    return out


def _project(pts: Sequence[XY], axis: XY) -> tuple[float, float]:
    ax, ay = axis
    dots = [p[0] * ax + p[1] * ay for p in pts]
    return min(dots), max(dots)


def _convex_overlap(a: Sequence[XY], b: Sequence[XY], tol: float) -> bool:
    for axis in _axes(a) + _axes(b):
        mina, maxa = _project(a, axis)
        minb, maxb = _project(b, axis)
        if min(maxa, maxb) - max(mina, minb) <= tol:
            return False
    return True


def overlap(a: Shape, b: Shape, tol: float = CONTACT_TOL) -> bool:
    """True iff the interiors of a and b intersect.

    Touching boundaries (penetration depth <= tol) is not overlap.
    """
    for shape in (a, b):
        pts = shape_points(shape)
        if abs(signed_area(pts)) <= tol:
            raise DegenerateGeometry("zero-area shape in overlap test")
    for pa in _convex_pieces(a):
        for pb in _convex_pieces(b):
            if _convex_overlap(pa, pb, tol):
                return True
    return False


def swept_interval(mover_pts: Sequence[XY], axis: XY, other_pts: Sequence[XY],
                   tol: float = CONTACT_TOL):
    """Displacement interval (enter, exit) along `axis` where the translated
    mover's interior intersects `other`, or None if they never overlap.
    """
    enter = -math.inf
    exit_ = math.inf
    for a in _axes(mover_pts) + _axes(other_pts):
        s = axis[0] * a[0] + axis[1] * a[1]
        minp, maxp = _project(mover_pts, a)
        minq, maxq = _project(other_pts, a)
        if abs(s) < 1e-12:
            if min(maxp, maxq) - max(minp, minq) <= tol:
                return None
            continue
        lo = (minq - maxp + tol) / s
        hi = (maxq - minp - tol) / s
        if s < 0:
            lo, hi = hi, lo
        enter = max(enter, lo)
        exit_ = min(exit_, hi)
        if enter >= exit_:
            return None
    return (enter, exit_)


def swept_contact(mover: Shape, axis: XY, other: Shape,
                  tol: float = CONTACT_TOL):
    """Smallest displacement >= 0 along `axis` at which mover first touches
    `other`, or None if sliding forever never makes contact.

    Backs the entry distance off by 1e-12 so the terminal state stays
    strictly on the non-overlapping side under floating-point rounding.
    """
    mover_pieces = _convex_pieces(mover)
    other_pieces = _convex_pieces(other)
    best = None
    for mp in mover_pieces:
        for op in other_pieces:
            iv = swept_interval(mp, axis, op, tol)
            if iv is None:
                continue
            enter, exit_ = iv
            if exit_ <= 0:
                continue  # overlap lies entirely behind the mover
            d = max(enter - 1e-12, 0.0)
            if best is None or d < best:
                best = d
    return best


def wall_limit(pts: Sequence[XY], axis: XY,
               bounds: tuple[float, float, float, float]) -> float:
    """Largest displacement along `axis` keeping all points inside bounds."""
    x0, y0, x1, y1 = bounds
    ax, ay = axis
    limit = math.inf
    for px, py in pts:
        if ax > 1e-12:
            limit = min(limit, (x1 - px) / ax)
        elif ax < -1e-12:
            limit = min(limit, (x0 - px) / ax)
        if ay > 1e-12:
            limit = min(limit, (y1 - py) / ay)
        elif ay < -1e-12:
            limit = min(limit, (y0 - py) / ay)
    return limit


def inside_bounds(pts: Sequence[XY], bounds: tuple[float, float, float, float],
                  tol: float = CONTACT_TOL) -> bool:
    x0, y0, x1, y1 = bounds
    return all(x0 - tol <= px <= x1 + tol and y0 - tol <= py <= y1 + tol
               for px, py in pts)


def max_slide(mover: OrientedRect, axis: XY, others: Sequence[Shape],
              bounds: tuple[float, float, float, float] | None = None) -> float:
    """Largest displacement d >= 0 along the unit vector `axis` such that the
    mover, translated by t*axis for every t in [0, d], overlaps nothing and
    stays inside bounds. Touching at d is permitted.
    """
    pts = mover.corners()
    if bounds is not None and not inside_bounds(pts, bounds):
        raise InvalidState("mover starts outside bounds")
    for other in others:
        if overlap(mover, other):
            raise InvalidState("mover starts in an overlapping position")
    d = math.inf if bounds is None else max(wall_limit(pts, axis, bounds), 0.0)
    for other in others:
        c = swept_contact(mover, axis, other)
        if c is not None and c < d:
            d = c
    if d is math.inf:
        raise InvalidState("unbounded slide: no obstacle or bounds in the way")
    return max(d, 0.0)


def reflect(p: Point2, line: Line2) -> Point2:
    """Mirror image of p across the line. Involution within 1e-9."""
    dx, dy = line.direction
    vx, vy = p.x - line.point.x, p.y - line.point.y
    dot = vx * dx + vy * dy
    return Point2(line.point.x + 2.0 * dot * dx - vx,
                  line.point.y + 2.0 * dot * dy - vy)


def _shapely_union(polys: Sequence[Polygon]):
    from shapely.geometry import Polygon as ShPolygon
    from shapely.ops import unary_union

    return unary_union([ShPolygon(p.as_xy()) for p in polys])


def silhouette_iou(a: Sequence[Polygon], b: Sequence[Polygon]) -> float:
    """Intersection-over-union of two silhouettes after aligning the
    centroids of their unions (translation only, no rotation search).
    """
    if not a or not b:
        raise DegenerateGeometry("empty silhouette")
    from shapely import affinity

    ua = _shapely_union(a)
    ub = _shapely_union(b)
    if ua.area <= CONTACT_TOL or ub.area <= CONTACT_TOL:
        raise DegenerateGeometry("zero-area silhouette")
    ca, cb = ua.centroid, ub.centroid
    ub = affinity.translate(ub, xoff=ca.x - cb.x, yoff=ca.y - cb.y)
    inter = ua.intersection(ub).area
    union = ua.union(ub).area
    return inter / union
