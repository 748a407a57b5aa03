"""Declarative run configuration (one JSON file) plus defaults.

Unbounded windows and run lengths are written as the string ``"inf"``.
Command-line flags override file values, which override the built-in
defaults.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .alerts import AbsoluteBelow, AlertRule, PercentileBottom
from .core import CqrParams, bound_from_json
from .evaluation import ClassValueMatrix
from .paper_data import load_paper_dataset


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SimulatorSettings:
    players_per_class: int = 5
    switch_at: int = 11
    actions_per_player: int = 20
    dots_per_color: int = 8
    bounds: tuple[float, float] = (100.0, 100.0)
    seed: int = 0


@dataclass
class RunConfig:
    parameterizations: list[CqrParams]
    alert_rules: list[AlertRule] = field(default_factory=list)
    class_values: ClassValueMatrix = field(default_factory=ClassValueMatrix.default)
    player_classes: dict[str, str] = field(default_factory=dict)
    simulator: SimulatorSettings = field(default_factory=SimulatorSettings)
    output: str = "table"


def default_config() -> RunConfig:
    """The four published parameterizations, no alerts, standard simulator."""
    return RunConfig(parameterizations=list(load_paper_dataset().parameterizations))


def _parse_params(raw: Any, index: int) -> CqrParams:
    if not isinstance(raw, dict):
        raise ConfigError(f"parameterizations[{index}] must be an object")

    def pick(long_key: str, short_key: str) -> Any:
        if long_key in raw:
            return raw[long_key]
        if short_key in raw:
            return raw[short_key]
        raise ConfigError(f"parameterizations[{index}] is missing {long_key!r} (alias {short_key!r})")

    try:
        return CqrParams(
            window=bound_from_json(pick("window", "T")),
            magnitude_threshold=pick("magnitude_threshold", "x"),
            run_length=bound_from_json(pick("run_length", "k")),
            name=raw.get("name", ""),
        )
    except ValueError as exc:
        raise ConfigError(f"parameterizations[{index}]: {exc}") from None


def _parse_alert(raw: Any, index: int, known: set[str]) -> AlertRule:
    if not isinstance(raw, dict):
        raise ConfigError(f"alerts[{index}] must be an object")
    kind = raw.get("kind")
    try:
        if kind == "absolute_below":
            rule_kind = AbsoluteBelow(threshold=raw["threshold"])
        elif kind == "percentile_bottom":
            rule_kind = PercentileBottom(fraction=raw["fraction"])
        else:
            raise ConfigError(
                f"alerts[{index}]: kind must be absolute_below or percentile_bottom, got {kind!r}"
            )
    except KeyError as exc:
        raise ConfigError(f"alerts[{index}] is missing {exc.args[0]!r}") from None
    except ValueError as exc:
        raise ConfigError(f"alerts[{index}]: {exc}") from None
    parameterization = raw.get("parameterization")
    if parameterization not in known:
        raise ConfigError(
            f"alerts[{index}] references undeclared parameterization {parameterization!r}"
        )
    return AlertRule(kind=rule_kind, parameterization=parameterization)


def config_from_dict(raw: dict[str, Any]) -> RunConfig:
    config = default_config()
    if "parameterizations" in raw:
        rows = raw["parameterizations"]
        if not isinstance(rows, list) or not rows:
            raise ConfigError("parameterizations must be a nonempty list")
        config.parameterizations = [_parse_params(r, i) for i, r in enumerate(rows)]
    names = {p.name for p in config.parameterizations}
    if len(names) != len(config.parameterizations):
        raise ConfigError("parameterization names must be unique")
    if "alerts" in raw:
        config.alert_rules = [
            _parse_alert(r, i, names) for i, r in enumerate(raw["alerts"])
        ]
    if "class_values" in raw:
        try:
            config.class_values = ClassValueMatrix.from_dict(raw["class_values"])
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"class_values: {exc}") from None
    if "player_classes" in raw:
        config.player_classes = dict(raw["player_classes"])
    if "simulator" in raw:
        sim = raw["simulator"]
        if not isinstance(sim, dict):
            raise ConfigError("simulator must be an object")
        defaults = SimulatorSettings()
        try:
            config.simulator = SimulatorSettings(
                players_per_class=sim.get("players_per_class", defaults.players_per_class),
                switch_at=sim.get("switch_at", defaults.switch_at),
                actions_per_player=sim.get("actions_per_player", defaults.actions_per_player),
                dots_per_color=sim.get("dots_per_color", defaults.dots_per_color),
                bounds=tuple(sim.get("bounds", defaults.bounds)),
                seed=sim.get("seed", defaults.seed),
            )
        except TypeError as exc:
            raise ConfigError(f"simulator: {exc}") from None
    if "output" in raw:
        if raw["output"] not in ("table", "structured"):
            raise ConfigError(f"output must be 'table' or 'structured', got {raw['output']!r}")
        config.output = raw["output"]
    return config


def load_config(path: str | Path) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text("utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return config_from_dict(raw)
