"""Line-delimited event log: one JSON record per line, append-only friendly.

A record carries a per-player sequence number and exactly one payload:
either a measured quality delta, or a domain-specific action object.
Unknown fields are ignored on parse so logs can grow extra metadata
without breaking old readers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable


class LogParseError(ValueError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True, slots=True)
class EventRecord:
    seq: int
    player: str
    delta: float | None = None
    action: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if (self.delta is None) == (self.action is None):
            raise ValueError("exactly one of delta/action must be set")


def serialize_record(record: EventRecord) -> str:
    payload: dict[str, Any] = {"seq": record.seq, "player": record.player}
    if record.delta is not None:
        payload["delta"] = record.delta
    else:
        payload["action"] = record.action
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def serialize_event_log(records: Iterable[EventRecord]) -> str:
    """Full log text; numbers keep full precision, so parsing it back is lossless."""
    return "".join(serialize_record(r) + "\n" for r in records)


def parse_event_log(lines: Iterable[str]) -> list[EventRecord]:
    """Parse a stream of log lines; blank lines are skipped.

    Raises :class:`LogParseError` (with the offending line number) for
    malformed records and for per-player sequence regressions.
    """
    records: list[EventRecord] = []
    last_seq: dict[str, int] = {}
    for line_number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LogParseError(line_number, f"invalid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise LogParseError(line_number, "record must be a JSON object")
        seq = raw.get("seq")
        if isinstance(seq, bool) or not isinstance(seq, int):
            raise LogParseError(line_number, f"seq must be an integer, got {seq!r}")
        player = raw.get("player")
        if not isinstance(player, str) or not player:
            raise LogParseError(line_number, f"player must be a nonempty string, got {player!r}")
        has_delta = "delta" in raw
        has_action = "action" in raw
        if has_delta == has_action:
            raise LogParseError(line_number, "record needs exactly one of delta/action")
        if has_delta:
            delta = raw["delta"]
            if isinstance(delta, bool) or not isinstance(delta, (int, float)):
                raise LogParseError(line_number, f"delta must be a number, got {delta!r}")
            record = EventRecord(seq=seq, player=player, delta=delta)
        else:
            action = raw["action"]
            if not isinstance(action, dict):
                raise LogParseError(line_number, f"action must be an object, got {action!r}")
            record = EventRecord(seq=seq, player=player, action=action)
        previous = last_seq.get(player)
        if previous is not None and seq <= previous:
            raise LogParseError(
                line_number, f"seq regression for player {player!r}: {seq} after {previous}"
            )
        last_seq[player] = seq
        records.append(record)
    return records
