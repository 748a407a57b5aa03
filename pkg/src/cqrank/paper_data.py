"""Embedded 20-player experiment dataset used by the golden tests.

Ships inside the package (``data/paper_tables.json``) so reproduction
runs need no network or external files.  The published tables contain two
known defects, recorded in the dataset's errata block: the unbounded
column's printed ranking violates its own descending order at ranks
13-14, and its printed evaluation score does not match a recomputation
from the published ranking and class values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import CqrParams, Delta, bound_from_json
from .eventlog import EventRecord


@dataclass(frozen=True)
class PlayerRow:
    id: str
    player_class: str
    deltas: tuple[int, ...]
    cqr: dict[str, int]


@dataclass(frozen=True)
class PaperDataset:
    players: tuple[PlayerRow, ...]
    parameterizations: tuple[CqrParams, ...]
    rankings_published: dict[str, tuple[tuple[str, int], ...]]
    class_values: dict[str, tuple[int, int, int, int]]
    scores_published: dict[str, int]
    errata: tuple[dict, ...]

    def classes(self) -> dict[str, str]:
        return {p.id: p.player_class for p in self.players}

    def histories(self) -> dict[str, tuple[int, ...]]:
        return {p.id: p.deltas for p in self.players}

    def deltas_of(self, player_id: str) -> list[Delta]:
        row = next(p for p in self.players if p.id == player_id)
        return [Delta(value=v, seq=i) for i, v in enumerate(row.deltas, start=1)]

    def expected_ranking(self, parameterization: str) -> tuple[tuple[str, int], ...]:
        """Published ranking with descending order restored.

        A stable sort on value alone: out-of-order adjacent rows are
        fixed, while tied rows keep their printed relative order.
        """
        published = self.rankings_published[parameterization]
        return tuple(sorted(published, key=lambda row: -row[1]))

    def to_event_records(self) -> list[EventRecord]:
        """The whole dataset as one replayable event log, action by action."""
        records = []
        rounds = max(len(p.deltas) for p in self.players)
        for i in range(rounds):
            for player in self.players:
                if i < len(player.deltas):
                    records.append(
                        EventRecord(seq=i + 1, player=player.id, delta=player.deltas[i])
                    )
        return records


@lru_cache(maxsize=1)
def load_paper_dataset() -> PaperDataset:
    raw = json.loads(
        resources.files("cqrank").joinpath("data/paper_tables.json").read_text("utf-8")
    )
    players = tuple(
        PlayerRow(
            id=p["id"],
            player_class=p["class"],
            deltas=tuple(p["deltas"]),
            cqr=dict(p["cqr"]),
        )
        for p in raw["players"]
    )
    parameterizations = tuple(
        CqrParams(
            window=bound_from_json(p["window"]),
            magnitude_threshold=p["magnitude_threshold"],
            run_length=bound_from_json(p["run_length"]),
            name=p["name"],
        )
        for p in raw["parameterizations"]
    )
    return PaperDataset(
        players=players,
        parameterizations=parameterizations,
        rankings_published={
            name: tuple((pid, value) for pid, value in rows)
            for name, rows in raw["rankings"].items()
        },
        class_values={cls: tuple(vals) for cls, vals in raw["class_values"].items()},
        scores_published=dict(raw["scores"]),
        errata=tuple(raw["errata"]),
    )
