"""Threshold and percentile alert rules over a ranking.

Ratings are only meaningful relative to other players, so rules come in
two flavours: an absolute rating floor, and a bottom-of-the-distribution
fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine import RankingEntry


@dataclass(frozen=True, slots=True)
class AbsoluteBelow:
    """Flag every player whose rating is strictly below ``threshold``."""

    threshold: float


@dataclass(frozen=True, slots=True)
class PercentileBottom:
    """Flag the lowest-ranked ``floor(fraction * N)`` players."""

    fraction: float

    def __post_init__(self) -> None:
        if not 0 < self.fraction < 1:
            raise ValueError(f"fraction must be strictly between 0 and 1, got {self.fraction!r}")


AlertKind = AbsoluteBelow | PercentileBottom


@dataclass(frozen=True, slots=True)
class AlertRule:
    kind: AlertKind
    parameterization: str


@dataclass(frozen=True, slots=True)
class Alert:
    player: str
    rule: AlertRule


def check_alerts(ranking: list[RankingEntry], rules: list[AlertRule]) -> list[Alert]:
    """Evaluate every rule against a ranking; alerts come out in rank order."""
    alerts: list[Alert] = []
    for rule in rules:
        kind = rule.kind
        if isinstance(kind, AbsoluteBelow):
            flagged = [e for e in ranking if e.cqr < kind.threshold]
        else:
            count = math.floor(kind.fraction * len(ranking))
            flagged = ranking[len(ranking) - count:] if count else []
        alerts.extend(Alert(player=e.player, rule=rule) for e in flagged)
    return alerts
