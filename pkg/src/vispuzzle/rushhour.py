"""Rush Hour task: continuous-geometry lots, slide-to-contact moves, BFS
minimal solver, difficulty-stratified generator, and lossless textual state
transcription.

Vehicles are oriented rectangles that slide along their own axis until first
contact. The exit is an opening in the boundary that only the red car may
pass through; once the red car has fully left the lot it is parked outside
and no longer moves.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import geom
from .errors import (GenerationFailed, InvalidIdentifier, InvalidState,
                     SearchBudgetExceeded)
from .geom import OrientedRect, Point2
from .seeds import stable_seed

STATE_CAP = 2_000_000
OFFSET_QUANTUM = 1e-4
INFLATION_FACTOR = 1.05
FORWARD = "forward"
BACKWARD = "backward"
EDGES = ("top", "bottom", "left", "right")


@dataclass(frozen=True)
class Vehicle:
    label: str
    body: OrientedRect

    @property
    def forward(self) -> geom.XY:
        return self.body.forward


@dataclass(frozen=True)
class Obstacle:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise InvalidState("obstacle corners must be ordered")

    def rect(self) -> OrientedRect:
        return OrientedRect(Point2((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2),
                            self.x1 - self.x0, self.y1 - self.y0, 0.0)


@dataclass(frozen=True)
class Exit:
    edge: str
    lo: float
    hi: float

    def __post_init__(self):
        if self.edge not in EDGES:
            raise InvalidState(f"unknown exit edge {self.edge!r}")
        if not self.lo < self.hi:
            raise InvalidState("exit interval is empty")


@dataclass(frozen=True)
class Lot:
    size: tuple[float, float]
    exit: Exit
    vehicles: tuple[Vehicle, ...]
    obstacles: tuple[Obstacle, ...] = ()

    def __post_init__(self):
        labels = [v.label for v in self.vehicles]
        if labels.count("R") != 1:
            raise InvalidState("lot must contain exactly one red car 'R'")
        if len(set(labels)) != len(labels):
            raise InvalidState("vehicle labels must be unique")
        w, h = self.size
        edge_len = w if self.exit.edge in ("top", "bottom") else h
        if not (0 <= self.exit.lo and self.exit.hi <= edge_len):
            raise InvalidState("exit interval must lie on its edge")
        red = self.vehicle("R")
        if self.exit.hi - self.exit.lo < red.body.width - 1e-9:
            raise InvalidState("exit must be at least as wide as the red car")

    def vehicle(self, label: str) -> Vehicle:
        for v in self.vehicles:
            if v.label == label:
                return v
        raise InvalidIdentifier(f"no vehicle {label!r} in lot")

    def labels(self) -> list[str]:
        return [v.label for v in self.vehicles]


@dataclass(frozen=True)
class RushAction:
    label: str
    direction: str

    def __post_init__(self):
        if self.direction not in (FORWARD, BACKWARD):
            raise InvalidState(f"bad direction {self.direction!r}")

    def __str__(self) -> str:
        return f"{self.label} {self.direction}"


@dataclass(frozen=True)
class RushState:
    """Signed displacement of each vehicle along its own axis, in lot order."""

    offsets: tuple[float, ...]

    def key(self) -> tuple[int, ...]:
        return tuple(round(o / OFFSET_QUANTUM) for o in self.offsets)

    def to_dict(self, lot: Lot) -> dict[str, float]:
        return {v.label: o for v, o in zip(lot.vehicles, self.offsets)}


def initial_state(lot: Lot) -> RushState:
    return RushState((0.0,) * len(lot.vehicles))


class _SlideEngine:
    """Precomputed projection tables for fast slide-to-contact queries.

    For every ordered vehicle pair and every separating axis, static
    projections and per-offset slopes are cached so a slide distance is a
    handful of float operations.
    """

    def __init__(self, lot: Lot):
        self.lot = lot
        self.n = len(lot.vehicles)
        self.red = lot.labels().index("R")
        self.units = [v.forward for v in lot.vehicles]
        self.corners0 = [v.body.corners() for v in lot.vehicles]
        self.half_len = [v.body.length / 2 for v in lot.vehicles]
        w, h = lot.size
        self.bounds = (0.0, 0.0, w, h)

        # Per-vehicle extreme corner coordinates at offset 0.
        self.ext0 = []
        for pts in self.corners0:
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            self.ext0.append((min(xs), max(xs), min(ys), max(ys)))

        # Pair tables: for mover i vs other j (vehicle or obstacle), a list
        # of (s_mover, s_other, minP0, maxP0, minQ0, maxQ0) per axis.
        obstacle_rects = [o.rect() for o in lot.obstacles]
        self.obs_pts = [r.corners() for r in obstacle_rects]
        self.pair_axes: dict[tuple[int, int], list] = {}
        self.obs_axes: dict[tuple[int, int], list] = {}
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                self.pair_axes[(i, j)] = self._build_axes(
                    self.corners0[i], self.units[i],
                    self.corners0[j], self.units[j])
            for k, pts in enumerate(self.obs_pts):
                self.obs_axes[(i, k)] = self._build_axes(
                    self.corners0[i], self.units[i], pts, (0.0, 0.0))

    @staticmethod
    def _build_axes(pts_i, unit_i, pts_j, unit_j):
        axes = []
        seen = set()
        for pts in (pts_i, pts_j):
            n = len(pts)
            for a in range(n):
                x0, y0 = pts[a]
                x1, y1 = pts[(a + 1) % n]
                ex, ey = x1 - x0, y1 - y0
                ln = math.hypot(ex, ey)
                if ln < 1e-15:
                    continue
                ax, ay = -ey / ln, ex / ln
                key = (round(ax, 9), round(ay, 9))
                nkey = (-key[0], -key[1])
                if key in seen or nkey in seen:
                    continue
                seen.add(key)
                dots_i = [p[0] * ax + p[1] * ay for p in pts_i]
                dots_j = [p[0] * ax + p[1] * ay for p in pts_j]
                axes.append((unit_i[0] * ax + unit_i[1] * ay,
                             unit_j[0] * ax + unit_j[1] * ay,
                             min(dots_i), max(dots_i),
                             min(dots_j), max(dots_j)))
        return axes

    def _pair_entry(self, table, si, sj, sign):
        """Entry displacement of mover (at offset si, moving sign*unit) into
        the other shape (at offset sj), or None."""
        enter = -math.inf
        exit_ = math.inf
        tol = geom.CONTACT_TOL
        for s_i, s_j, minp0, maxp0, minq0, maxq0 in table:
            minp = minp0 + si * s_i
            maxp = maxp0 + si * s_i
            minq = minq0 + sj * s_j
            maxq = maxq0 + sj * s_j
            s = sign * s_i
            if -1e-12 < s < 1e-12:
                if min(maxp, maxq) - max(minp, minq) <= tol:
                    return None
                continue
            lo = (minq - maxp + tol) / s
            hi = (maxq - minp - tol) / s
            if s < 0:
                lo, hi = hi, lo
            if lo > enter:
                enter = lo
            if hi < exit_:
                exit_ = hi
            if enter >= exit_:
                return None
        if exit_ <= 0:
            return None
        return max(enter - 1e-12, 0.0)

    def _outside(self, i: int, offset: float) -> bool:
        """True if vehicle i at this offset lies fully outside the lot."""
        ux, uy = self.units[i]
        minx0, maxx0, miny0, maxy0 = self.ext0[i]
        x0, y0, x1, y1 = self.bounds
        return (maxx0 + offset * ux <= x0 + 1e-9 or
                minx0 + offset * ux >= x1 - 1e-9 or
                maxy0 + offset * uy <= y0 + 1e-9 or
                miny0 + offset * uy >= y1 - 1e-9)

    def _wall_limit(self, i: int, offset: float, sign: float) -> float:
        """Displacement until a boundary stops vehicle i, honoring the open
        exit for the red car (whose limit is then the fully-outside point)."""
        ux, uy = self.units[i]
        ux, uy = sign * ux, sign * uy
        minx0, maxx0, miny0, maxy0 = self.ext0[i]
        minx = minx0 + offset * self.units[i][0]
        maxx = maxx0 + offset * self.units[i][0]
        miny = miny0 + offset * self.units[i][1]
        maxy = maxy0 + offset * self.units[i][1]
        x0, y0, x1, y1 = self.bounds
        ex = self.lot.exit
        limit = math.inf
        walls = (
            ("right", ux > 1e-12, lambda: (x1 - maxx) / ux, lambda: (x1 - minx) / ux, miny, maxy, uy),
            ("left", ux < -1e-12, lambda: (x0 - minx) / ux, lambda: (x0 - maxx) / ux, miny, maxy, uy),
            ("top", uy > 1e-12, lambda: (y1 - maxy) / uy, lambda: (y1 - miny) / uy, minx, maxx, ux),
            ("bottom", uy < -1e-12, lambda: (y0 - miny) / uy, lambda: (y0 - maxy) / uy, minx, maxx, ux),
        )
        for edge, active, t_hit, t_full, pmin, pmax, pslope in walls:
            if not active:
                continue
            t = t_hit()
            if i == self.red and ex.edge == edge:
                tf = t_full()
                # Projection of the car onto the edge coordinate at both the
                # start and the end of the crossing window.
                ok = True
                for tc in (t, tf):
                    lo = pmin + tc * pslope
                    hi = pmax + tc * pslope
                    if lo < ex.lo - 1e-9 or hi > ex.hi + 1e-9:
                        ok = False
                        break
                if ok:
                    t = tf
            if t < limit:
                limit = t
        return limit

    def slide(self, offsets: tuple[float, ...], i: int, sign: float) -> float:
        """Slide-to-contact displacement for vehicle i from `offsets`."""
        si = offsets[i]
        if i == self.red and self._outside(i, si):
            return 0.0  # parked outside; the red car does not re-enter
        d = self._wall_limit(i, si, sign)
        for j in range(self.n):
            if j == i:
                continue
            if j == self.red and self._outside(j, offsets[j]):
                continue
            e = self._pair_entry(self.pair_axes[(i, j)], si, offsets[j], sign)
            if e is not None and e < d:
                d = e
        for k in range(len(self.obs_pts)):
            e = self._pair_entry(self.obs_axes[(i, k)], si, 0.0, sign)
            if e is not None and e < d:
                d = e
        if d is math.inf or d < 0:
            return 0.0
        return d

    def apply(self, offsets: tuple[float, ...], i: int, direction: str) -> tuple[float, ...]:
        sign = 1.0 if direction == FORWARD else -1.0
        d = self.slide(offsets, i, sign)
        if d == 0.0:
            return offsets
        out = list(offsets)
        out[i] = offsets[i] + sign * d
        return tuple(out)

    def is_solved(self, offsets: tuple[float, ...]) -> bool:
        i = self.red
        ux, uy = self.units[i]
        cx = self.lot.vehicles[i].body.center.x + offsets[i] * ux
        cy = self.lot.vehicles[i].body.center.y + offsets[i] * uy
        w, h = self.lot.size
        ex = self.lot.exit
        if ex.edge == "bottom":
            return cy < 0 and ex.lo <= cx <= ex.hi
        if ex.edge == "top":
            return cy > h and ex.lo <= cx <= ex.hi
        if ex.edge == "left":
            return cx < 0 and ex.lo <= cy <= ex.hi
        return cx > w and ex.lo <= cy <= ex.hi


@lru_cache(maxsize=128)
def _engine(lot: Lot) -> _SlideEngine:
    return _SlideEngine(lot)


def vehicle_rect(lot: Lot, state: RushState, label: str) -> OrientedRect:
    """Body of a vehicle at its current offset."""
    idx = lot.labels().index(label)
    v = lot.vehicles[idx]
    ux, uy = v.forward
    off = state.offsets[idx]
    return v.body.translated(ux * off, uy * off)


def validate_lot(lot: Lot, margin: float = 0.0) -> bool:
    """True iff no pair of vehicles/obstacles overlaps and everything is in
    bounds. margin scales vehicles up before testing."""
    w, h = lot.size
    rects = [v.body.scaled(1.0 + margin) if margin else v.body for v in lot.vehicles]
    shapes = rects + [o.rect() for o in lot.obstacles]
    for i, a in enumerate(shapes):
        if not geom.inside_bounds(a.corners(), (0, 0, w, h)):
            return False
        for b in shapes[i + 1:]:
            if geom.overlap(a, b):
                return False
    return True


def apply(lot: Lot, state: RushState, action: RushAction) -> RushState:
    """Slide the addressed vehicle to first contact; zero-length moves are
    legal no-ops."""
    labels = lot.labels()
    if action.label not in labels:
        raise InvalidIdentifier(f"no vehicle {action.label!r} in lot")
    eng = _engine(lot)
    return RushState(eng.apply(state.offsets, labels.index(action.label), action.direction))


def is_solved(lot: Lot, state: RushState) -> bool:
    """True iff the red car's center has crossed the boundary through the
    exit interval."""
    return _engine(lot).is_solved(state.offsets)


def solve_bfs(lot: Lot, max_depth: int | None = None,
              state_cap: int = STATE_CAP) -> list[RushAction] | None:
    """Shortest action sequence reaching the goal, or None if unreachable.

    Deterministic: vehicles expanded in label order, forward before backward.
    """
    eng = _engine(lot)
    order = sorted(range(eng.n), key=lambda i: lot.vehicles[i].label)
    start = initial_state(lot).offsets
    if eng.is_solved(start):
        return []
    start_key = RushState(start).key()
    parents: dict[tuple, tuple] = {start_key: None}
    queue = deque([(start, start_key, 0)])
    while queue:
        offsets, key, depth = queue.popleft()
        if max_depth is not None and depth >= max_depth:
            continue
        for i in order:
            for direction in (FORWARD, BACKWARD):
                nxt = eng.apply(offsets, i, direction)
                nkey = RushState(nxt).key()
                if nkey in parents:
                    continue
                parents[nkey] = (key, lot.vehicles[i].label, direction)
                if len(parents) > state_cap:
                    raise SearchBudgetExceeded(f"BFS exceeded {state_cap} states")
                if eng.is_solved(nxt):
                    actions: list[RushAction] = []
                    cur = nkey
                    while parents[cur] is not None:
                        pkey, label, dd = parents[cur]
                        actions.append(RushAction(label, dd))
                        cur = pkey
                    actions.reverse()
                    return actions
                queue.append((nxt, nkey, depth + 1))
    return None


def replay(lot: Lot, actions: list[RushAction]) -> list[RushState]:
    """States visited by an action sequence, starting at the initial state."""
    states = [initial_state(lot)]
    for a in actions:
        states.append(apply(lot, states[-1], a))
    return states


def inflation_check(lot: Lot, solution: list[RushAction],
                    factor: float = INFLATION_FACTOR) -> bool:
    """Replay a solution with every vehicle scaled by `factor`; False when
    the enlarged cars no longer reach the goal (a visually ambiguous fit)."""
    try:
        scaled = Lot(
            size=lot.size,
            exit=lot.exit,
            vehicles=tuple(Vehicle(v.label, v.body.scaled(factor)) for v in lot.vehicles),
            obstacles=lot.obstacles,
        )
    except InvalidState:
        return False  # e.g. the enlarged red car no longer fits the exit
    if not validate_lot(scaled):
        return False
    state = initial_state(scaled)
    for a in solution:
        state = apply(scaled, state, a)
    return is_solved(scaled, state)


# ---------------------------------------------------------------------------
# Generation

LOT_SIZE = (10.0, 10.0)
TOTAL_VEHICLES = {1: 2, 2: 4, 3: 5, 4: 6, 5: 7}
PRIMARY_BLOCKERS = {1: (0,), 2: (1,), 3: (1, 2), 4: (2,), 5: (2,)}
HEADING_DELTAS = (0.0, 15.0, -15.0, 30.0, -30.0, 45.0, -45.0)
PLACEMENT_MARGIN = 0.06  # pre-inflation clearance between parked cars

_EDGE_AXIS = {
    # exit edge -> (heading pointing toward the exit, edge coordinate axis)
    "bottom": (-90.0, 0),
    "top": (90.0, 0),
    "left": (-180.0, 1),
    "right": (0.0, 1),
}


@dataclass(frozen=True)
class RushHourInstance:
    level: int
    seed: int
    lot: Lot
    gt_actions: tuple[RushAction, ...]
    gt_states: tuple[RushState, ...]

    task = "rush_hour"

    @property
    def instance_id(self) -> str:
        return f"rush_hour/level_{self.level}/{self.seed}"

    def to_doc(self) -> dict:
        return {
            "task": self.task,
            "level": self.level,
            "seed": self.seed,
            "lot": lot_to_doc(self.lot),
            "gt_actions": [str(a) for a in self.gt_actions],
            "gt_states": [list(s.offsets) for s in self.gt_states],
            "transcript": transcribe(self.lot),
        }

    @staticmethod
    def from_doc(doc: dict) -> "RushHourInstance":
        lot = lot_from_doc(doc["lot"])
        actions = tuple(parse_action(s) for s in doc["gt_actions"])
        states = tuple(RushState(tuple(o)) for o in doc["gt_states"])
        return RushHourInstance(doc["level"], doc["seed"], lot, actions, states)


def parse_action(text: str) -> RushAction:
    label, direction = text.split()
    return RushAction(label, direction)


def lot_to_doc(lot: Lot) -> dict:
    return {
        "size": list(lot.size),
        "exit": {"edge": lot.exit.edge, "lo": lot.exit.lo, "hi": lot.exit.hi},
        "vehicles": [
            {"label": v.label,
             "center": [v.body.center.x, v.body.center.y],
             "length": v.body.length,
             "width": v.body.width,
             "heading": v.body.heading}
            for v in lot.vehicles
        ],
        "obstacles": [[o.x0, o.y0, o.x1, o.y1] for o in lot.obstacles],
    }


def lot_from_doc(doc: dict) -> Lot:
    vehicles = tuple(
        Vehicle(v["label"],
                OrientedRect(Point2(*v["center"]), v["length"], v["width"], v["heading"]))
        for v in doc["vehicles"]
    )
    obstacles = tuple(Obstacle(*o) for o in doc["obstacles"])
    return Lot(tuple(doc["size"]), Exit(doc["exit"]["edge"], doc["exit"]["lo"], doc["exit"]["hi"]),
               vehicles, obstacles)


def _sample_lot(rng: random.Random, level: int) -> Lot | None:
    w, h = LOT_SIZE
    edge = rng.choice(EDGES)
    toward, coord_axis = _EDGE_AXIS[edge]
    edge_len = w if coord_axis == 0 else h

    red_len = rng.uniform(1.7, 1.95)
    red_wid = rng.uniform(0.85, 0.95)
    exit_width = red_wid * rng.uniform(1.15, 1.45)
    exit_center = rng.uniform(1.2 + exit_width / 2, edge_len - 1.2 - exit_width / 2)
    lo, hi = exit_center - exit_width / 2, exit_center + exit_width / 2

    # Red car sits on the opposite side, its axis crossing the exit.
    slack = (exit_width - red_wid) / 2
    lateral = exit_center + rng.uniform(-0.8 * slack, 0.8 * slack)
    depth = rng.uniform(red_len / 2 + 0.3, red_len / 2 + 1.6)
    if edge == "bottom":
        center = (lateral, h - depth)
    elif edge == "top":
        center = (lateral, depth)
    elif edge == "left":
        center = (w - depth, lateral)
    else:
        center = (depth, lateral)
    heading = toward if rng.random() < 0.5 else geom.norm_heading(toward + 180.0)
    red = Vehicle("R", OrientedRect(Point2(*center), red_len, red_wid, heading))

    vehicles = [red]
    ux, uy = math.cos(math.radians(toward)), math.sin(math.radians(toward))
    perp_base = geom.norm_heading(toward + 90.0)

    n_primary = rng.choice(PRIMARY_BLOCKERS[level])
    total = max(TOTAL_VEHICLES[level] + rng.choice((-1, 0, 1)), n_primary + 1)
    labels = iter("ABCDEFGHJKLMNP")

    def place(rect: OrientedRect) -> bool:
        if not geom.inside_bounds(rect.corners(), (0.12, 0.12, w - 0.12, h - 0.12)):
            return False
        big = rect.scaled(1.0 + PLACEMENT_MARGIN)
        for v in vehicles:
            if geom.overlap(big, v.body.scaled(1.0 + PLACEMENT_MARGIN)):
                return False
        return True

    # Primary blockers across the red car's corridor.
    red_front = red_len / 2
    span = h if coord_axis == 0 else w  # lot extent along the red car's axis
    path_len = (span - depth) - red_front  # red's nose to the exit edge
    primaries: list[Vehicle] = []
    for k in range(n_primary):
        ok = False
        for _ in range(40):
            frac = rng.uniform(0.2, 0.8) if n_primary == 1 else (
                (k + rng.uniform(0.25, 0.95)) / (n_primary + 0.2))
            dist = red_front + frac * path_len
            cx = red.body.center.x + ux * dist + -uy * rng.uniform(-0.4, 0.4)
            cy = red.body.center.y + uy * dist + ux * rng.uniform(-0.4, 0.4)
            hdg = geom.norm_heading(perp_base + rng.choice(HEADING_DELTAS) +
                                    (180.0 if rng.random() < 0.5 else 0.0))
            rect = OrientedRect(Point2(cx, cy), rng.uniform(1.75, 2.1),
                                rng.uniform(0.85, 0.95), hdg)
            if place(rect):
                v = Vehicle(next(labels), rect)
                vehicles.append(v)
                primaries.append(v)
                ok = True
                break
        if not ok:
            return None

    # Extra cars, biased toward blocking the primary blockers.
    while len(vehicles) < total:
        placed = False
        for _ in range(60):
            if primaries and rng.random() < 0.6:
                p = rng.choice(primaries)
                px, py = p.forward
                sgn = rng.choice((-1.0, 1.0))
                dist = rng.uniform(p.body.length / 2 + 0.9, p.body.length / 2 + 3.0)
                cx = p.body.center.x + sgn * px * dist + -py * rng.uniform(-0.6, 0.6)
                cy = p.body.center.y + sgn * py * dist + px * rng.uniform(-0.6, 0.6)
            else:
                cx = rng.uniform(1.0, w - 1.0)
                cy = rng.uniform(1.0, h - 1.0)
            hdg = geom.norm_heading(
                rng.choice((perp_base, toward)) + rng.choice(HEADING_DELTAS) +
                (180.0 if rng.random() < 0.5 else 0.0))
            rect = OrientedRect(Point2(cx, cy), rng.uniform(1.75, 2.1),
                                rng.uniform(0.85, 0.95), hdg)
            if place(rect):
                vehicles.append(Vehicle(next(labels), rect))
                placed = True
                break
        if not placed:
            return None

    obstacles: list[Obstacle] = []
    if rng.random() < 0.5:
        for _ in range(40):
            ow = rng.uniform(0.8, 2.0)
            oh = rng.uniform(0.6, 1.2)
            ox = rng.uniform(0.3, w - 0.3 - ow)
            oy = rng.uniform(0.3, h - 0.3 - oh)
            cand = Obstacle(ox, oy, ox + ow, oy + oh)
            rect = cand.rect()
            if all(not geom.overlap(rect.scaled(1.0 + PLACEMENT_MARGIN),
                                    v.body.scaled(1.0 + PLACEMENT_MARGIN))
                   for v in vehicles):
                obstacles.append(cand)
                break

    try:
        lot = Lot((w, h), Exit(edge, lo, hi), tuple(vehicles), tuple(obstacles))
    except InvalidState:
        return None
    if not validate_lot(lot, margin=PLACEMENT_MARGIN):
        return None
    return lot


def generate(level: int, seed: int, attempts: int = 10_000) -> RushHourInstance:
    """Emit an instance whose BFS-minimal solution length equals `level`,
    surviving the enlarged-vehicle ambiguity re-check."""
    if level not in TOTAL_VEHICLES:
        raise InvalidState(f"level must be 1..5, got {level}")
    rng = random.Random(stable_seed("rush_hour", level, seed))
    for _ in range(attempts):
        lot = _sample_lot(rng, level)
        if lot is None:
            continue
        try:
            sol = solve_bfs(lot, max_depth=level, state_cap=400_000)
        except SearchBudgetExceeded:
            continue
        if sol is None or len(sol) != level:
            continue
        if not inflation_check(lot, sol, INFLATION_FACTOR):
            continue
        states = replay(lot, sol)
        return RushHourInstance(level, seed, lot, tuple(sol), tuple(states))
    raise GenerationFailed(f"rush_hour level {level} seed {seed}: no instance "
                           f"within {attempts} attempts")


# ---------------------------------------------------------------------------
# Transcription

def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _fmt_size(x: float) -> str:
    return f"{x:g}"


_EDGE_DESC = {
    "bottom": ("bottom", "y=0", "x"),
    "top": ("top", "y={h}", "x"),
    "left": ("left", "x=0", "y"),
    "right": ("right", "x={w}", "y"),
}


def transcribe(lot: Lot) -> str:
    """Deterministic plain-text state specification of a lot: size, exit,
    per-vehicle pose and motion axes (2-decimal display), obstacles."""
    w, h = lot.size
    lines = [f"The parking lot has a size of {_fmt_size(w)} × {_fmt_size(h)}."]
    lines.append("")

    name, plane, coord = _EDGE_DESC[lot.exit.edge]
    plane = plane.format(w=_fmt_size(w), h=_fmt_size(h))
    lines.append(f"There is an exit on the {name} ({plane}) edge, "
                 f"from {coord}={_fmt(lot.exit.lo)} to {coord}={_fmt(lot.exit.hi)}.")
    lines.append("")

    ordered = sorted(lot.vehicles, key=lambda v: (v.label != "R", v.label))
    for v in ordered:
        fx, fy = v.forward
        kind = "a red car" if v.label == "R" else "a car"
        lines.append(
            f"There is {kind} ({v.label}) at center ({_fmt(v.body.center.x)}, "
            f"{_fmt(v.body.center.y)}) with length {_fmt(v.body.length)} and "
            f"width {_fmt(v.body.width)}, rotated by {v.body.heading:.1f}°, "
            f"i.e. the car can move forwards along the ({_fmt(fx)}, {_fmt(fy)}) "
            f"axis and backwards along ({_fmt(-fx)}, {_fmt(-fy)})."
        )

    if lot.obstacles:
        lines.append("")
        for o in lot.obstacles:
            lines.append(
                f"There is a static, immovable object at "
                f"(({_fmt(o.x0)}, {_fmt(o.y0)}), ({_fmt(o.x1)}, {_fmt(o.y1)}))."
            )
    return "\n".join(lines)
