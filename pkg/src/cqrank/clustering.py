"""Collaborative clustering game: board, drag actions, exact quality.

A shared board holds equal-sized groups of colored dots that players drag
around.  Community quality is exact here, not heuristic: tight same-color
clusters far away from the other colors score high.  That makes the game
a measuring stick for the rating engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from random import Random
from statistics import fmean
from typing import Mapping

#: The four game colors, in board order.
COLORS = ("white", "light_gray", "dark_gray", "black")

Position = tuple[float, float]


class DragError(ValueError):
    """Base class for rejected drag actions."""


class UnknownDotError(DragError):
    pass


class DotLockedError(DragError):
    pass


class OutOfBoundsError(DragError):
    pass


@dataclass(frozen=True, slots=True)
class Dot:
    id: int
    color: str
    position: Position


@dataclass(frozen=True, slots=True)
class DragAction:
    player: str
    dot_id: int
    target: Position


@dataclass(frozen=True)
class Board:
    """Value snapshot of the shared board.

    ``locks`` maps a dot id to the player currently dragging it; a drag by
    anyone else is rejected until the dot is dropped.  ``apply_drag``
    models drag-and-drop as one atomic acquire-move-release, so boards it
    produces carry no locks of their own.
    """

    dots: tuple[Dot, ...]
    bounds: tuple[float, float] = (100.0, 100.0)
    locks: Mapping[int, str] = field(default_factory=dict)

    def apply(self, action: DragAction) -> "Board":
        return apply_drag(self, action)

    def dot_by_id(self, dot_id: int) -> Dot:
        for dot in self.dots:
            if dot.id == dot_id:
                return dot
        raise UnknownDotError(f"no dot with id {dot_id}")

    def color_groups(self) -> dict[str, list[Dot]]:
        groups: dict[str, list[Dot]] = {}
        for dot in self.dots:
            groups.setdefault(dot.color, []).append(dot)
        return groups

    def in_bounds(self, position: Position) -> bool:
        x, y = position
        width, height = self.bounds
        return 0 <= x <= width and 0 <= y <= height

    def validate_game_board(self) -> None:
        """Check the standard-game invariants (four equal color groups, all in bounds)."""
        groups = self.color_groups()
        counts = {color: len(groups.get(color, [])) for color in COLORS}
        if len(set(counts.values())) != 1 or 0 in counts.values():
            raise ValueError(f"game boards need equal nonempty color groups, got {counts}")
        ids = [dot.id for dot in self.dots]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate dot ids")
        for dot in self.dots:
            if not self.in_bounds(dot.position):
                raise ValueError(f"dot {dot.id} at {dot.position} is outside {self.bounds}")


def centroid(dots: list[Dot]) -> Position:
    """Component-wise mean position of a nonempty dot list."""
    if not dots:
        raise ValueError("centroid of an empty dot list is undefined")
    return (
        fmean(dot.position[0] for dot in dots),
        fmean(dot.position[1] for dot in dots),
    )


def clustering_quality(board: Board) -> float:
    """Exact board quality: -(mean spread within colors) + (mean distance between colors).

    The between-color term runs over ordered color pairs, so each
    unordered pair contributes twice.  Both terms are means, making the
    value invariant under translation and degree-1 homogeneous in scale.
    """
    groups = board.color_groups()
    if not groups:
        raise ValueError("cannot score a board with no dots")
    dist = math.dist
    fsum = math.fsum  # correctly-rounded sums: dot order within a color cannot matter
    positions = {color: [dot.position for dot in dots] for color, dots in groups.items()}

    spread = 0.0
    for pts in positions.values():
        n = len(pts)
        center = (fsum(p[0] for p in pts) / n, fsum(p[1] for p in pts) / n)
        spread += fsum(dist(p, center) for p in pts) / n

    separation = 0.0
    colors = list(positions)
    for i, c1 in enumerate(colors):
        pts1 = positions[c1]
        for c2 in colors[i + 1:]:
            pts2 = positions[c2]
            total = fsum(dist(p1, p2) for p1 in pts1 for p2 in pts2)
            # ordered pairs: (c1,c2) and (c2,c1) contribute the same mean
            separation += 2.0 * total / (len(pts1) * len(pts2))

    return -spread + separation


def apply_drag(board: Board, action: DragAction) -> Board:
    """Move one dot atomically; everything else on the board is untouched."""
    holder = board.locks.get(action.dot_id)
    if holder is not None and holder != action.player:
        raise DotLockedError(
            f"dot {action.dot_id} is being dragged by {holder!r}, not {action.player!r}"
        )
    if not board.in_bounds(action.target):
        raise OutOfBoundsError(f"target {action.target} is outside bounds {board.bounds}")
    moved = None
    dots = []
    for dot in board.dots:
        if dot.id == action.dot_id:
            moved = Dot(id=dot.id, color=dot.color, position=action.target)
            dots.append(moved)
        else:
            dots.append(dot)
    if moved is None:
        raise UnknownDotError(f"no dot with id {action.dot_id}")
    return Board(dots=tuple(dots), bounds=board.bounds, locks=board.locks)


def make_board(
    dots_per_color: int = 8,
    bounds: tuple[float, float] = (100.0, 100.0),
    rng: Random | None = None,
) -> Board:
    """Standard game board: four equal color groups, uniform random positions."""
    if dots_per_color < 1:
        raise ValueError("dots_per_color must be at least 1")
    rng = rng or Random(0)
    width, height = bounds
    dots = []
    next_id = 0
    for color in COLORS:
        for _ in range(dots_per_color):
            dots.append(
                Dot(
                    id=next_id,
                    color=color,
                    position=(rng.uniform(0, width), rng.uniform(0, height)),
                )
            )
            next_id += 1
    board = Board(dots=tuple(dots), bounds=bounds)
    board.validate_game_board()
    return board
