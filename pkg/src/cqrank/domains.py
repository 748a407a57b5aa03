"""Community quality domains and the delta-of-action computation.

A community is a set of quality domains, each with its own heuristic
quality function; domains may overlap.  The delta of an action is the sum
over domains of the quality change the action caused.  Two ready-made
heuristics live here: a discussion-forum scorer and a recommendation-site
scorer; the clustering-game scorer lives in :mod:`cqrank.clustering`.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import fmean, pvariance
from typing import Any, Callable, Protocol

from .core import Delta


class CommunityState(Protocol):
    """A state snapshot that can apply an action and yield the successor."""

    def apply(self, action: Any) -> "CommunityState": ...


@dataclass(frozen=True, slots=True)
class QualityDomain:
    id: str
    quality: Callable[[Any], float]


def delta_of_action(
    state: CommunityState,
    action: Any,
    domains: list[QualityDomain],
    *,
    seq: int = 1,
) -> Delta:
    """Quality change the action causes, summed over all (possibly overlapping) domains.

    Raises whatever ``state.apply`` raises when the action is inapplicable
    (a locked dot, for example).
    """
    after = state.apply(action)
    value = sum(domain.quality(after) - domain.quality(state) for domain in domains)
    return Delta(value=value, seq=seq)


# --- discussion forum -------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Post:
    """Shape of one forum post; counts are inputs, no text analysis here."""

    length: int
    capital_chars: int
    forbidden_words: int

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise ValueError("post length must be positive")
        if not 0 <= self.capital_chars <= self.length:
            raise ValueError("capital_chars must be between 0 and length")
        if self.forbidden_words < 0:
            raise ValueError("forbidden_words must be nonnegative")


@dataclass(frozen=True, slots=True)
class ForumState:
    posts: tuple[Post, ...] = ()

    def apply(self, action: Post) -> "ForumState":
        return ForumState(posts=self.posts + (action,))


def forum_quality(state: ForumState) -> float:
    """Mean per-post score: long posts rate high, shouty or sweary posts low.

    Each post scores ``length / ((capitals+1)/length * (forbidden+1))``.
    The +1 smoothing keeps clean posts finite (and high); it preserves the
    ordering among offending posts.
    """
    if not state.posts:
        raise ValueError("forum quality is undefined for an empty post collection")
    return fmean(
        p.length / ((p.capital_chars + 1) / p.length * (p.forbidden_words + 1))
        for p in state.posts
    )


# --- recommendation site ----------------------------------------------------

@dataclass(frozen=True, slots=True)
class RatingTable:
    """Per-item rating multisets for one sub-community of users."""

    ratings: tuple[tuple[str, tuple[float, ...]], ...] = ()

    @classmethod
    def from_dict(cls, table: dict[str, list[float]]) -> "RatingTable":
        return cls(ratings=tuple((item, tuple(vals)) for item, vals in table.items()))

    def apply(self, action: tuple[str, float]) -> "RatingTable":
        """Add one (item, rating); a new item is created on first rating."""
        item, value = action
        out = []
        found = False
        for name, vals in self.ratings:
            if name == item:
                out.append((name, vals + (value,)))
                found = True
            else:
                out.append((name, vals))
        if not found:
            out.append((item, (value,)))
        return RatingTable(ratings=tuple(out))


def recsys_quality(state: RatingTable, orientation: int = -1) -> float:
    """Mean per-item rating variance, signed by ``orientation``.

    The default orientation -1 makes outlying ratings lower the quality.
    Population variance is used so single-rating items are well defined.
    """
    if orientation not in (-1, 1):
        raise ValueError(f"orientation must be +1 or -1, got {orientation!r}")
    if not state.ratings:
        raise ValueError("rating table has no items")
    for item, vals in state.ratings:
        if not vals:
            raise ValueError(f"item {item!r} has no ratings")
    return orientation * fmean(pvariance(vals) for _, vals in state.ratings)
