"""Scripted agents for the clustering game and the session runner.

The four behaviour classes:

* ``F`` plays fair for the whole session;
* ``f`` starts disruptive and turns fair at ``switch_at``;
* ``d`` starts fair and turns disruptive at ``switch_at``;
* ``D`` is disruptive throughout.

A fair move drags a random dot toward its own color's centroid; a
disruptive move drags it toward the centroid of some other color.  Both
cover between 50% and 100% of the distance.  Everything is driven by
seeded RNGs, so a session is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .clustering import (
    Board,
    DotLockedError,
    DragAction,
    centroid,
    clustering_quality,
    make_board,
)
from .core import CqrParams, Delta
from .domains import QualityDomain
from .engine import RankingEntry, RatingEngine
from .eventlog import EventRecord

PLAYER_CLASSES = ("F", "f", "d", "D")

#: Give up on a turn after this many lock rejections and record a zero delta.
MAX_DRAG_RETRIES = 3


@dataclass(frozen=True, slots=True)
class AgentPolicy:
    player: str
    player_class: str
    switch_at: int = 11
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.player_class not in PLAYER_CLASSES:
            raise ValueError(f"player_class must be one of {PLAYER_CLASSES}, got {self.player_class!r}")
        if self.switch_at < 1:
            raise ValueError("switch_at must be at least 1")

    def is_fair_at(self, step_index: int) -> bool:
        if self.player_class == "F":
            return True
        if self.player_class == "D":
            return False
        if self.player_class == "f":
            return step_index >= self.switch_at
        return step_index < self.switch_at  # class d


def _clamp(value: float, low: float, high: float) -> float:
    return low if value < low else high if value > high else value


def agent_step(policy: AgentPolicy, board: Board, step_index: int, rng: Random) -> DragAction:
    """Pick the next drag for this policy; deterministic given the RNG state."""
    dot = rng.choice(board.dots)
    groups = board.color_groups()
    if policy.is_fair_at(step_index):
        target_group = groups[dot.color]
    else:
        other_colors = [c for c in groups if c != dot.color]
        # degenerate single-color board: nothing foreign to aim at
        target_group = groups[rng.choice(other_colors)] if other_colors else groups[dot.color]
    cx, cy = centroid(target_group)
    px, py = dot.position
    alpha = rng.uniform(0.5, 1.0)
    width, height = board.bounds
    target = (
        _clamp(px + alpha * (cx - px), 0.0, width),
        _clamp(py + alpha * (cy - py), 0.0, height),
    )
    return DragAction(player=policy.player, dot_id=dot.id, target=target)


def make_default_policies(
    players_per_class: int = 5,
    switch_at: int = 11,
    seed: int = 0,
) -> list[AgentPolicy]:
    """Session roster F1..Fn, f1..fn, d1..dn, D1..Dn with derived per-player seeds."""
    master = Random(seed)
    policies = []
    for player_class in PLAYER_CLASSES:
        for i in range(1, players_per_class + 1):
            policies.append(
                AgentPolicy(
                    player=f"{player_class}{i}",
                    player_class=player_class,
                    switch_at=switch_at,
                    rng_seed=master.getrandbits(32),
                )
            )
    return policies


@dataclass
class SessionResult:
    events: list[EventRecord]
    rankings: dict[str, list[RankingEntry]]
    final_board: Board
    final_quality: float


def run_session(
    policies: list[AgentPolicy],
    actions_per_player: int,
    board: Board,
    engine: RatingEngine,
    domains: list[QualityDomain] | None = None,
) -> SessionResult:
    """Round-robin play: every round, each player takes one action.

    Each action's delta is the quality change it causes over ``domains``
    (the exact clustering scorer by default) and is recorded into the
    engine.  A turn that keeps hitting locked dots is skipped after
    :data:`MAX_DRAG_RETRIES` attempts and recorded as a zero delta.
    """
    if len({p.player for p in policies}) != len(policies):
        raise ValueError("duplicate player in policies")
    if domains is None:
        domains = [QualityDomain(id="clustering", quality=clustering_quality)]
    rngs = {p.player: Random(p.rng_seed) for p in policies}
    seqs = {p.player: 0 for p in policies}
    events: list[EventRecord] = []
    # cache the current total quality: one fresh evaluation per action,
    # identical to recomputing both sides from scratch
    quality_now = sum(domain.quality(board) for domain in domains)

    for round_index in range(1, actions_per_player + 1):
        for policy in policies:
            rng = rngs[policy.player]
            delta_value = 0.0
            for _ in range(MAX_DRAG_RETRIES):
                action = agent_step(policy, board, round_index, rng)
                try:
                    after = board.apply(action)
                except DotLockedError:
                    continue
                quality_after = sum(domain.quality(after) for domain in domains)
                delta_value = quality_after - quality_now
                board = after
                quality_now = quality_after
                break
            seqs[policy.player] += 1
            seq = seqs[policy.player]
            engine.record(policy.player, Delta(value=delta_value, seq=seq))
            events.append(EventRecord(seq=seq, player=policy.player, delta=delta_value))

    rankings = {
        params.name: engine.ranking(params.name) for params in engine.parameterizations
    }
    return SessionResult(
        events=events,
        rankings=rankings,
        final_board=board,
        final_quality=quality_now,
    )


def run_default_session(
    parameterizations: list[CqrParams],
    seed: int = 0,
    *,
    players_per_class: int = 5,
    switch_at: int = 11,
    actions_per_player: int = 20,
    dots_per_color: int = 8,
    bounds: tuple[float, float] = (100.0, 100.0),
) -> SessionResult:
    """One fully seeded standard session: board layout and every policy derive from ``seed``."""
    master = Random(seed)
    board = make_board(dots_per_color, bounds, rng=Random(master.getrandbits(32)))
    policies = make_default_policies(players_per_class, switch_at, seed=master.getrandbits(32))
    engine = RatingEngine(parameterizations)
    return run_session(policies, actions_per_player, board, engine)
