"""Sliding puzzle task: scramble-by-valid-moves generation over a tiled
image, exact shortest-path solving, and blank-tile move simulation.

Cells are indexed row-major with row 0 at the top; a move names the
direction the blank travels.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .errors import GenerationFailed, InvalidMove, MissingAsset
from .seeds import stable_seed

MOVES = ("up", "down", "left", "right")
_DELTA = {"up": (-1, 0), "down": (1, 0), "left": (0, -1), "right": (0, 1)}
_INVERSE = {"up": "down", "down": "up", "left": "right", "right": "left"}


@dataclass(frozen=True)
class Board:
    """perm maps grid cell -> original tile index; blank is the cell that
    currently holds the blank tile."""

    n: int
    perm: tuple[int, ...]
    blank: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidMove("grid side must be >= 2")
        if sorted(self.perm) != list(range(self.n * self.n)):
            raise InvalidMove("perm must be a permutation of 0..n^2-1")
        if not 0 <= self.blank < self.n * self.n:
            raise InvalidMove("blank cell out of range")

    @property
    def blank_tile(self) -> int:
        return self.perm[self.blank]

    def is_solved(self) -> bool:
        return all(t == i for i, t in enumerate(self.perm))


def solved_board(n: int, blank_cell: int) -> Board:
    return Board(n, tuple(range(n * n)), blank_cell)


def inverse(move: str) -> str:
    return _INVERSE[move]


def apply(board: Board, move: str) -> Board:
    """Swap the blank with the adjacent tile in the given direction."""
    if move not in _DELTA:
        raise InvalidMove(f"unknown move {move!r}")
    n = board.n
    r, c = divmod(board.blank, n)
    dr, dc = _DELTA[move]
    nr, nc = r + dr, c + dc
    if not (0 <= nr < n and 0 <= nc < n):
        raise InvalidMove(f"move {move} pushes the blank out of the grid")
    target = nr * n + nc
    perm = list(board.perm)
    perm[board.blank], perm[target] = perm[target], perm[board.blank]
    return Board(n, tuple(perm), target)


def legal_moves(board: Board) -> list[str]:
    n = board.n
    r, c = divmod(board.blank, n)
    out = []
    for m in MOVES:
        dr, dc = _DELTA[m]
        if 0 <= r + dr < n and 0 <= c + dc < n:
            out.append(m)
    return out


def _bfs(start: Board) -> list[str]:
    """Plain breadth-first search; fixed up/down/left/right expansion order."""
    if start.is_solved():
        return []
    seen = {start.perm: None}
    queue = deque([start])
    while queue:
        b = queue.popleft()
        for m in MOVES:
            try:
                nxt = apply(b, m)
            except InvalidMove:
                continue
            if nxt.perm in seen:
                continue
            seen[nxt.perm] = (b.perm, m)
            if nxt.is_solved():
                path = []
                cur = nxt.perm
                while seen[cur] is not None:
                    prev, move = seen[cur]
                    path.append(move)
                    cur = prev
                path.reverse()
                return path
            queue.append(nxt)
    raise InvalidMove("board is not reachable from the solved state")


def _bidirectional_bfs(start: Board) -> list[str]:
    if start.is_solved():
        return []
    goal = solved_board(start.n, start.blank_tile)
    fwd = {start.perm: []}
    bwd = {goal.perm: []}
    f_front = [start]
    b_front = [goal]
    while f_front and b_front:
        # Expand the smaller frontier; forward stores moves of the blank,
        # backward stores moves from the goal (inverted on meet).
        expand_fwd = len(f_front) <= len(b_front)
        frontier, seen, other = ((f_front, fwd, bwd) if expand_fwd
                                 else (b_front, bwd, fwd))
        nxt_front = []
        for b in frontier:
            path = seen[b.perm]
            for m in MOVES:
                try:
                    nb = apply(b, m)
                except InvalidMove:
                    continue
                if nb.perm in seen:
                    continue
                seen[nb.perm] = path + [m]
                if nb.perm in other:
                    if expand_fwd:
                        f_path, b_path = seen[nb.perm], other[nb.perm]
                    else:
                        f_path, b_path = other[nb.perm], seen[nb.perm]
                    return f_path + [inverse(m) for m in reversed(b_path)]
                nxt_front.append(nb)
        frontier[:] = nxt_front
    raise InvalidMove("board is not reachable from the solved state")


def _manhattan(board: Board) -> int:
    n = board.n
    total = 0
    blank_tile = board.blank_tile
    for cell, tile in enumerate(board.perm):
        if tile == blank_tile:
            continue
        r, c = divmod(cell, n)
        hr, hc = divmod(tile, n)
        total += abs(r - hr) + abs(c - hc)
    return total


def _ida_star(start: Board) -> list[str]:
    bound = _manhattan(start)
    path: list[str] = []

    def search(board: Board, g: int, bound: int, last: str | None):
        h = _manhattan(board)
        f = g + h
        if f > bound:
            return f
        if board.is_solved():
            return True
        minimum = float("inf")
        for m in MOVES:
            if last is not None and m == _INVERSE[last]:
                continue
            try:
                nxt = apply(board, m)
            except InvalidMove:
                continue
            path.append(m)
            res = search(nxt, g + 1, bound, m)
            if res is True:
                return True
            path.pop()
            if res < minimum:
                minimum = res
        return minimum

    while True:
        res = search(start, 0, bound, None)
        if res is True:
            return list(path)
        if res == float("inf"):
            raise InvalidMove("board is not reachable from the solved state")
        bound = res


def solve(board: Board) -> list[str]:
    """Shortest move sequence restoring the identity permutation."""
    if board.n == 3:
        return _bidirectional_bfs(board)
    if board.n < 3:
        return _bfs(board)
    return _ida_star(board)


@dataclass(frozen=True)
class SlidingInstance:
    level: int
    seed: int
    image_id: str
    board: Board
    gt_moves: tuple[str, ...]

    task = "sliding_puzzle"

    @property
    def instance_id(self) -> str:
        return f"sliding_puzzle/level_{self.level}/{self.seed}"

    def to_doc(self) -> dict:
        return {
            "task": self.task,
            "level": self.level,
            "seed": self.seed,
            "n": self.board.n,
            "image_id": self.image_id,
            "blank_cell": self.board.blank,
            "perm": list(self.board.perm),
            "gt_moves": list(self.gt_moves),
        }

    @staticmethod
    def from_doc(doc: dict) -> "SlidingInstance":
        board = Board(doc["n"], tuple(doc["perm"]), doc["blank_cell"])
        return SlidingInstance(doc["level"], doc["seed"], doc["image_id"],
                               board, tuple(doc["gt_moves"]))


def scramble(n: int, blank_home: int, steps: int, rng: random.Random) -> Board:
    """Apply `steps` random valid moves with no immediate backtracking."""
    board = solved_board(n, blank_home)
    last = None
    for _ in range(steps):
        options = [m for m in legal_moves(board)
                   if last is None or m != _INVERSE[last]]
        move = rng.choice(options)
        board = apply(board, move)
        last = move
    return board


def generate(level: int, seed: int, image_id: str, n: int = 3,
             source=None, attempts: int = 10_000) -> SlidingInstance:
    """Board whose exact shortest solution has `level` moves; the blank's
    home cell is sampled uniformly rather than pinned to a corner."""
    if source is not None and not source.has(image_id):
        raise MissingAsset(f"image {image_id!r} not found")
    rng = random.Random(stable_seed("sliding_puzzle", level, seed, image_id, n))
    blank_home = rng.randrange(n * n)
    for _ in range(attempts):
        board = scramble(n, blank_home, level, rng)
        moves = solve(board)
        if len(moves) == level:
            return SlidingInstance(level, seed, image_id, board, tuple(moves))
    raise GenerationFailed(f"sliding_puzzle level {level} seed {seed}: no board "
                           f"of depth {level} within {attempts} attempts")
