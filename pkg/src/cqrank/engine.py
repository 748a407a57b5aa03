"""Streaming per-player rating engine.

Keeps one :class:`DeltaLedger` per (player, parameterization).  A record
is amortized O(1) work per parameterization; the retained state per
finite-window ledger never exceeds ``3 * window`` delta entries plus the
two sign-run registers, no matter how long the stream runs.

The trick that keeps memory bounded: the sign-run filter can only ever
resurrect entries of one sign class (plus zeros), so retaining the most
recent ``window`` entries *per sign class* is enough to answer any
current-rating query exactly.  Unbounded windows degenerate to running
sums and retain no entries at all.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass

from .core import (
    CqrParams,
    Delta,
    bound_from_json,
    bound_to_json,
    is_unbounded,
)

_POSITIVE = 1
_NEGATIVE = -1
_NO_RUN = 0

_SIGN_NAMES = {_POSITIVE: "positive", _NEGATIVE: "negative", _NO_RUN: "none"}
_SIGN_VALUES = {v: k for k, v in _SIGN_NAMES.items()}


class OutOfOrderError(ValueError):
    """A delta arrived with a sequence number not above the player's last."""

    def __init__(self, player: str, seq: int, last_seq: int):
        super().__init__(
            f"out-of-order delta for player {player!r}: seq {seq} after seq {last_seq}"
        )
        self.player = player
        self.seq = seq
        self.last_seq = last_seq


class UnknownParameterizationError(ValueError):
    def __init__(self, name: str, known: list[str]):
        super().__init__(f"unknown parameterization {name!r}; configured: {known}")
        self.name = name


@dataclass(frozen=True, slots=True)
class RankingEntry:
    player: str
    cqr: float
    rank: int


class DeltaLedger:
    """Bounded per-player state for one parameterization.

    Finite window: one deque of (seq, value) per sign class, each capped
    at ``window`` entries.  Unbounded window: running sums only.
    """

    __slots__ = (
        "params",
        "positive",
        "negative",
        "zero",
        "run_sign",
        "run_count",
        "total_recorded",
        "sum_all",
        "sum_positive",
        "sum_negative",
    )

    def __init__(self, params: CqrParams):
        self.params = params
        cap = None if is_unbounded(params.window) else int(params.window)
        if cap is None:
            self.positive = self.negative = self.zero = None
        else:
            self.positive = deque(maxlen=cap)
            self.negative = deque(maxlen=cap)
            self.zero = deque(maxlen=cap)
        self.run_sign = _NO_RUN
        self.run_count = 0
        self.total_recorded = 0
        # start at int 0 so all-integer streams keep exact integer sums
        self.sum_all = 0
        self.sum_positive = 0
        self.sum_negative = 0

    def record(self, delta: Delta) -> int:
        """Fold one delta into the ledger; returns the mutation count (for benches)."""
        self.total_recorded += 1
        value = delta.value
        if abs(value) < self.params.magnitude_threshold:
            return 1  # filtered out: the rating's history never sees it
        ops = 2
        if value > 0:
            if self.run_sign == _POSITIVE:
                if self.run_count < self.params.run_length:
                    self.run_count += 1
            else:
                self.run_sign = _POSITIVE
                self.run_count = 1
        elif value < 0:
            if self.run_sign == _NEGATIVE:
                if self.run_count < self.params.run_length:
                    self.run_count += 1
            else:
                self.run_sign = _NEGATIVE
                self.run_count = 1
        else:
            self.run_sign = _NO_RUN
            self.run_count = 0
        if self.positive is None:
            self.sum_all += value
            if value > 0:
                self.sum_positive += value
            elif value < 0:
                self.sum_negative += value
        else:
            bucket = self.positive if value > 0 else self.negative if value < 0 else self.zero
            if len(bucket) == bucket.maxlen:
                ops += 1  # eviction
            bucket.append((delta.seq, value))
        return ops

    def _run_active(self) -> bool:
        return (
            self.run_sign != _NO_RUN
            and not is_unbounded(self.params.run_length)
            and self.run_count >= self.params.run_length
        )

    def cqr(self) -> float:
        if self.positive is None:
            if self._run_active():
                return self.sum_positive if self.run_sign == _POSITIVE else self.sum_negative
            return self.sum_all
        if self._run_active():
            survivor = self.positive if self.run_sign == _POSITIVE else self.negative
            entries = sorted([*survivor, *self.zero])
        else:
            entries = sorted([*self.positive, *self.negative, *self.zero])
        window = int(self.params.window)
        return sum(value for _, value in entries[-window:])

    @property
    def retained_entries(self) -> int:
        if self.positive is None:
            return 0
        return len(self.positive) + len(self.negative) + len(self.zero)

    def state_dict(self) -> dict:
        return {
            "positive": [] if self.positive is None else [list(e) for e in self.positive],
            "negative": [] if self.negative is None else [list(e) for e in self.negative],
            "zero": [] if self.zero is None else [list(e) for e in self.zero],
            "run_sign": _SIGN_NAMES[self.run_sign],
            "run_count": self.run_count,
            "total_recorded": self.total_recorded,
            "sum_all": self.sum_all,
            "sum_positive": self.sum_positive,
            "sum_negative": self.sum_negative,
        }

    @classmethod
    def from_state_dict(cls, params: CqrParams, state: dict) -> "DeltaLedger":
        ledger = cls(params)
        if ledger.positive is not None:
            for key, bucket in (("positive", ledger.positive),
                                ("negative", ledger.negative),
                                ("zero", ledger.zero)):
                bucket.extend((int(seq), value) for seq, value in state[key])
        ledger.run_sign = _SIGN_VALUES[state["run_sign"]]
        ledger.run_count = int(state["run_count"])
        ledger.total_recorded = int(state["total_recorded"])
        ledger.sum_all = state["sum_all"]
        ledger.sum_positive = state["sum_positive"]
        ledger.sum_negative = state["sum_negative"]
        return ledger


class _PlayerState:
    __slots__ = ("last_seq", "ledgers", "lock")

    def __init__(self, ledgers: dict[str, DeltaLedger]):
        self.last_seq: int | None = None
        self.ledgers = ledgers
        self.lock = threading.Lock()


class RatingEngine:
    """Runs any number of parameterizations online over the same delta stream.

    Writes for one player must arrive in seq order (they are rejected
    otherwise); writes for distinct players are independent.  Rating and
    ranking reads see, per player, the state after some prefix of that
    player's recorded deltas.
    """

    def __init__(self, parameterizations: list[CqrParams]):
        if not parameterizations:
            raise ValueError("at least one parameterization is required")
        self._params: dict[str, CqrParams] = {}
        for p in parameterizations:
            if p.name in self._params:
                raise ValueError(f"duplicate parameterization name {p.name!r}")
            self._params[p.name] = p
        self._players: dict[str, _PlayerState] = {}
        self._registry_lock = threading.Lock()
        self.update_ops = 0

    @property
    def parameterizations(self) -> list[CqrParams]:
        return list(self._params.values())

    def players(self) -> list[str]:
        return sorted(self._players)

    def _require_params(self, name: str) -> CqrParams:
        try:
            return self._params[name]
        except KeyError:
            raise UnknownParameterizationError(name, sorted(self._params)) from None

    def _player_state(self, player: str) -> _PlayerState:
        state = self._players.get(player)
        if state is None:
            with self._registry_lock:
                state = self._players.get(player)
                if state is None:
                    state = _PlayerState(
                        {name: DeltaLedger(p) for name, p in self._params.items()}
                    )
                    self._players[player] = state
        return state

    def record(self, player: str, delta: Delta) -> None:
        """Fold one delta into every parameterization's ledger for ``player``."""
        state = self._player_state(player)
        with state.lock:
            if state.last_seq is not None and delta.seq <= state.last_seq:
                raise OutOfOrderError(player, delta.seq, state.last_seq)
            state.last_seq = delta.seq
            ops = 0
            for ledger in state.ledgers.values():
                ops += ledger.record(delta)
            self.update_ops += ops

    def cqr(self, player: str, parameterization: str) -> float:
        """Current rating; players with no recorded history rate 0."""
        self._require_params(parameterization)
        state = self._players.get(player)
        if state is None:
            return 0
        with state.lock:
            return state.ledgers[parameterization].cqr()

    def ranking(self, parameterization: str) -> list[RankingEntry]:
        """All known players, best first; ties broken by player id ascending."""
        self._require_params(parameterization)
        scored = []
        for player, state in sorted(self._players.items()):
            with state.lock:
                scored.append((player, state.ledgers[parameterization].cqr()))
        scored.sort(key=lambda pc: (-pc[1], pc[0]))
        return [
            RankingEntry(player=player, cqr=value, rank=i)
            for i, (player, value) in enumerate(scored, start=1)
        ]

    def retained_entries(self, player: str, parameterization: str) -> int:
        self._require_params(parameterization)
        state = self._players.get(player)
        if state is None:
            return 0
        with state.lock:
            return state.ledgers[parameterization].retained_entries

    def state_dict(self) -> dict:
        """JSON-ready snapshot of the full engine state."""
        players = {}
        for player, state in sorted(self._players.items()):
            with state.lock:
                players[player] = {
                    "last_seq": state.last_seq,
                    "ledgers": {name: led.state_dict() for name, led in state.ledgers.items()},
                }
        return {
            "version": 1,
            "parameterizations": [
                {
                    "name": p.name,
                    "window": bound_to_json(p.window),
                    "magnitude_threshold": p.magnitude_threshold,
                    "run_length": bound_to_json(p.run_length),
                }
                for p in self._params.values()
            ],
            "players": players,
        }

    @classmethod
    def from_state_dict(cls, state: dict) -> "RatingEngine":
        params = [
            CqrParams(
                window=bound_from_json(p["window"]),
                magnitude_threshold=p["magnitude_threshold"],
                run_length=bound_from_json(p["run_length"]),
                name=p["name"],
            )
            for p in state["parameterizations"]
        ]
        engine = cls(params)
        for player, pstate in state["players"].items():
            ledgers = {
                name: DeltaLedger.from_state_dict(engine._params[name], led)
                for name, led in pstate["ledgers"].items()
            }
            if set(ledgers) != set(engine._params):
                raise ValueError(f"snapshot ledgers for {player!r} do not match parameterizations")
            restored = _PlayerState(ledgers)
            restored.last_seq = pstate["last_seq"]
            engine._players[player] = restored
        return engine
