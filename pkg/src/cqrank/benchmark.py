"""Resource benchmark: the engine must stay small no matter how long it runs.

Feeds a random delta stream through the engine and reports retained
ledger entries and per-event work.  Retention above ``3*window + 2``
entries for any finite-window ledger is a bug, not a report line, so the
run fails loudly on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .core import CqrParams, Delta, is_unbounded
from .engine import RatingEngine

#: Ledger mutations per event per parameterization (run registers, append, evict).
MAX_OPS_PER_EVENT = 4


class RetentionBoundError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchReport:
    players: int
    events: int
    retained: dict[str, dict[str, int]]
    max_retained: dict[str, int]
    total_retained: int
    work_per_event: float


def retention_bound(params: CqrParams) -> float:
    """Allowed retained entries for one ledger: 3*window + 2 (unbounded ledgers keep none)."""
    return 0 if is_unbounded(params.window) else 3 * int(params.window) + 2


def bench(
    players: int,
    events: int,
    parameterizations: list[CqrParams],
    rng: Random | None = None,
) -> BenchReport:
    """Stream ``events`` random integer deltas over ``players`` players and measure."""
    if players < 1 or events < 1:
        raise ValueError("players and events must both be at least 1")
    rng = rng or Random(0)
    engine = RatingEngine(parameterizations)
    names = [f"p{i:03d}" for i in range(players)]
    seqs = [0] * players
    for _ in range(events):
        idx = rng.randrange(players)
        seqs[idx] += 1
        engine.record(names[idx], Delta(value=rng.randint(-60, 60), seq=seqs[idx]))

    retained: dict[str, dict[str, int]] = {}
    max_retained: dict[str, int] = {}
    total = 0
    for params in parameterizations:
        per_player = {name: engine.retained_entries(name, params.name) for name in names}
        retained[params.name] = per_player
        worst = max(per_player.values())
        max_retained[params.name] = worst
        total += sum(per_player.values())
        if worst > retention_bound(params):
            raise RetentionBoundError(
                f"{params.name}: {worst} retained entries exceeds {retention_bound(params)}"
            )

    work_per_event = engine.update_ops / events
    if work_per_event > MAX_OPS_PER_EVENT * len(parameterizations):
        raise RetentionBoundError(
            f"per-event work {work_per_event:.2f} exceeds "
            f"{MAX_OPS_PER_EVENT * len(parameterizations)}"
        )
    return BenchReport(
        players=players,
        events=events,
        retained=retained,
        max_retained=max_retained,
        total_retained=total,
        work_per_event=work_per_event,
    )
