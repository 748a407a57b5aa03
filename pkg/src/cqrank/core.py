"""Contribution quality rating (CQR) expression family.

A player's rating is computed from the stream of signed quality deltas
their actions caused, shaped by three parameters:

* ``magnitude_threshold`` -- deltas smaller than this (in absolute value)
  are dropped, so noise cannot mask significant actions;
* ``run_length`` -- once the latest ``run_length`` surviving deltas share
  a strict sign, all opposite-sign history is discarded, which makes the
  rating react quickly to behaviour changes;
* ``window`` -- only the last ``window`` surviving deltas are summed.

``cqr_batch`` is the reference implementation over a full history; the
streaming engine in :mod:`cqrank.engine` must agree with it exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

#: Marker for "no limit" on the window or run length.
UNBOUNDED = math.inf


def is_unbounded(bound: float) -> bool:
    return math.isinf(bound)


def bound_to_json(bound: float) -> float | str:
    """Encode a window/run-length bound for JSON ("inf" for UNBOUNDED)."""
    return "inf" if is_unbounded(bound) else bound


def bound_from_json(raw: object) -> float:
    """Decode a bound produced by :func:`bound_to_json`."""
    if raw == "inf":
        return UNBOUNDED
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ValueError(f"expected an integer or the string 'inf', got {raw!r}")
    if isinstance(raw, float):
        if is_unbounded(raw):
            return UNBOUNDED
        if not raw.is_integer():
            raise ValueError(f"bounds must be whole numbers, got {raw!r}")
        raw = int(raw)
    return raw


@dataclass(frozen=True, slots=True)
class Delta:
    """One signed community-quality change caused by one player action.

    ``seq`` is the per-player action sequence number; it must strictly
    increase within a player's history.
    """

    value: float
    seq: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError(f"delta value must be finite, got {self.value!r}")


def deltas_from_values(values: list[float]) -> list[Delta]:
    """Wrap raw numbers as Deltas with sequence numbers 1..n."""
    return [Delta(value=v, seq=i) for i, v in enumerate(values, start=1)]


def _fmt_bound(v: float) -> str:
    if is_unbounded(v):
        return "∞"
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return str(v)


@dataclass(frozen=True, slots=True)
class CqrParams:
    """One parameterization (window, magnitude_threshold, run_length) of the rating.

    ``window`` and ``run_length`` are positive integers or UNBOUNDED;
    an unbounded run_length is only meaningful with an unbounded window.
    """

    window: float
    magnitude_threshold: float
    run_length: float
    name: str = field(default="")

    def __post_init__(self) -> None:
        for label, bound in (("window", self.window), ("run_length", self.run_length)):
            ok = is_unbounded(bound) or (isinstance(bound, int) and bound >= 1)
            if not ok:
                raise ValueError(f"{label} must be a positive integer or UNBOUNDED, got {bound!r}")
        if not (math.isfinite(self.magnitude_threshold) and self.magnitude_threshold >= 0):
            raise ValueError(f"magnitude_threshold must be a nonnegative real, got {self.magnitude_threshold!r}")
        if is_unbounded(self.run_length) and not is_unbounded(self.window):
            raise ValueError("an UNBOUNDED run_length requires an UNBOUNDED window")
        if self.run_length > self.window:
            raise ValueError(f"run_length {self.run_length} exceeds window {self.window}")
        if not self.name:
            object.__setattr__(self, "name", self.default_name())

    def default_name(self) -> str:
        return "({},{},{})".format(
            _fmt_bound(self.window),
            _fmt_bound(self.magnitude_threshold),
            _fmt_bound(self.run_length),
        )


def magnitude_filter(deltas: list[Delta], threshold: float) -> list[Delta]:
    """Drop every delta with ``|value| < threshold``; order and seq are kept."""
    if threshold == 0:
        return list(deltas)
    return [d for d in deltas if abs(d.value) >= threshold]


def sign_run_filter(deltas: list[Delta], run_length: float) -> list[Delta]:
    """Discard opposite-sign history once the latest deltas form a sign run.

    If the last ``run_length`` entries are all strictly positive, every
    strictly negative entry is removed from the whole list (and
    symmetrically for a negative run).  Zeros are sign-neutral: they break
    runs and are never removed.  With fewer than ``run_length`` entries, a
    mixed-sign tail, or an UNBOUNDED run_length, the list is returned
    unchanged (a run spanning the whole list has nothing to remove).
    """
    if is_unbounded(run_length) or len(deltas) < run_length:
        return list(deltas)
    tail = deltas[-int(run_length):]
    if all(d.value > 0 for d in tail):
        return [d for d in deltas if d.value >= 0]
    if all(d.value < 0 for d in tail):
        return [d for d in deltas if d.value <= 0]
    return list(deltas)


def windowed_sum(deltas: list[Delta], window: float) -> float:
    """Sum of the last ``window`` values (everything when UNBOUNDED)."""
    if is_unbounded(window):
        return sum(d.value for d in deltas)
    return sum(d.value for d in deltas[-int(window):])


def cqr_batch(params: CqrParams, deltas: list[Delta]) -> float:
    """Reference rating over a full history.

    Pipeline: magnitude filter over the full history, then sign-run
    removal over the full filtered history, then the last-``window`` sum.
    """
    kept = magnitude_filter(deltas, params.magnitude_threshold)
    kept = sign_run_filter(kept, params.run_length)
    return windowed_sum(kept, params.window)
