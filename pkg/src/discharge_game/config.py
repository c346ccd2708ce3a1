"""Run-configuration documents: a strict JSON schema for one simulation run.

Schema (all unknown keys are rejected):

    {
      "preset": "Condition1",          # or "params": {"I_J": 20, ...}
      "initial": [0.5, 0.5, 0.5],      # optional
      "integrator": {"dt": 0.01, ...}, # optional, IntegratorConfig fields
      "outputs": [{"kind": "csv", "path": "run.csv"}, ...]  # >= 1 sink
    }

"preset" and "params" are mutually exclusive. Output kinds: "csv" writes
the trajectory table, "json" the stability report, "svg" the trajectory
chart.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

from .dynamics import IntegratorConfig
from .experiments import preset as load_preset
from .experiments import PRESET_NAMES
from .model import PARAM_FIELDS, REQUIRED_PARAM_FIELDS, ModelParams, StrategyState

OUTPUT_KINDS = ("csv", "json", "svg")


class ConfigError(ValueError):
    """Base class for configuration-document problems."""


class ConfigSyntaxError(ConfigError):
    """The document is not well-formed JSON."""


class ConfigMissingFieldError(ConfigError):
    """A required key is absent."""


class ConfigValueError(ConfigError):
    """A value is out of range or of the wrong shape."""


class ConfigUnknownKeyError(ConfigError):
    """An unrecognized key was supplied."""


@dataclass(frozen=True)
class OutputSink:
    kind: str
    path: str

    def __post_init__(self) -> None:
        if self.kind not in OUTPUT_KINDS:
            raise ConfigValueError(f"output kind must be one of {OUTPUT_KINDS}, got {self.kind!r}")
        if not isinstance(self.path, str) or not self.path:
            raise ConfigValueError(f"output path must be a non-empty string, got {self.path!r}")


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    initial: StrategyState
    integrator: IntegratorConfig
    outputs: tuple[OutputSink, ...]
    preset: Optional[str] = None  # retained so serialization round-trips

    def __post_init__(self) -> None:
        if len(self.outputs) == 0:
            raise ConfigValueError("run config needs at least one output sink")


def _require_mapping(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigValueError(f"{where} must be a JSON object, got {type(value).__name__}")
    return value


def _reject_unknown(mapping: dict, allowed: tuple[str, ...], where: str) -> None:
    unknown = [k for k in mapping if k not in allowed]
    if unknown:
        raise ConfigUnknownKeyError(f"unknown key(s) in {where}: {', '.join(map(repr, unknown))}")


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigValueError(f"{where} must be a number, got {value!r}")
    return float(value)


def _parse_params(raw: Any) -> ModelParams:
    mapping = _require_mapping(raw, '"params"')
    _reject_unknown(mapping, PARAM_FIELDS, '"params"')
    missing = [name for name in REQUIRED_PARAM_FIELDS if name not in mapping]
    if missing:
        raise ConfigMissingFieldError(f'"params" is missing {", ".join(missing)}')
    values = {name: _number(value, f'"params.{name}"') for name, value in mapping.items()}
    try:
        return ModelParams(**values)
    except ValueError as exc:
        raise ConfigValueError(str(exc)) from None


def _parse_initial(raw: Any) -> StrategyState:
    if not isinstance(raw, (list, tuple)) or len(raw) != 3:
        raise ConfigValueError(f'"initial" must be a list of three numbers, got {raw!r}')
    coords = [_number(v, '"initial"') for v in raw]
    try:
        return StrategyState(*coords)
    except ValueError as exc:
        raise ConfigValueError(str(exc)) from None


_INTEGRATOR_KEYS = (
    "dt",
    "t_max",
    "convergence_eps",
    "convergence_window",
    "threshold",
    "stop_on_convergence",
)


def _parse_integrator(raw: Any) -> IntegratorConfig:
    mapping = _require_mapping(raw, '"integrator"')
    _reject_unknown(mapping, _INTEGRATOR_KEYS, '"integrator"')
    kwargs: dict[str, Any] = {}
    for key, value in mapping.items():
        if key == "convergence_window":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigValueError(f'"integrator.convergence_window" must be an integer, got {value!r}')
            kwargs[key] = value
        elif key == "stop_on_convergence":
            if not isinstance(value, bool):
                raise ConfigValueError(f'"integrator.stop_on_convergence" must be a boolean, got {value!r}')
            kwargs[key] = value
        else:
            kwargs[key] = _number(value, f'"integrator.{key}"')
    try:
        return IntegratorConfig(**kwargs)
    except ValueError as exc:
        raise ConfigValueError(str(exc)) from None


def _parse_outputs(raw: Any) -> tuple[OutputSink, ...]:
    if not isinstance(raw, list) or len(raw) == 0:
        raise ConfigValueError('"outputs" must be a non-empty list of {kind, path} objects')
    sinks = []
    for i, entry in enumerate(raw):
        mapping = _require_mapping(entry, f'"outputs[{i}]"')
        _reject_unknown(mapping, ("kind", "path"), f'"outputs[{i}]"')
        for field in ("kind", "path"):
            if field not in mapping:
                raise ConfigMissingFieldError(f'"outputs[{i}]" is missing {field!r}')
        sinks.append(OutputSink(mapping["kind"], mapping["path"]))
    return tuple(sinks)


_TOP_KEYS = ("preset", "params", "initial", "integrator", "outputs")


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a run-configuration document."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSyntaxError(f"config is not valid JSON: {exc}") from None
    mapping = _require_mapping(document, "config document")
    _reject_unknown(mapping, _TOP_KEYS, "config document")

    has_preset = "preset" in mapping
    has_params = "params" in mapping
    if has_preset and has_params:
        raise ConfigValueError('"preset" and "params" are mutually exclusive')
    if not has_preset and not has_params:
        raise ConfigMissingFieldError('config needs either "preset" or "params"')

    preset_name: Optional[str] = None
    if has_preset:
        raw_name = mapping["preset"]
        if not isinstance(raw_name, str):
            raise ConfigValueError(f'"preset" must be a string, got {raw_name!r}')
        if raw_name not in PRESET_NAMES:
            raise ConfigValueError(
                f'unknown preset {raw_name!r}; known presets: {", ".join(PRESET_NAMES)}'
            )
        preset_name = raw_name
        scenario = load_preset(raw_name)
        params, initial = scenario.params, scenario.initial
    else:
        params = _parse_params(mapping["params"])
        initial = StrategyState(0.5, 0.5, 0.5)

    if "initial" in mapping:
        initial = _parse_initial(mapping["initial"])
    integrator = _parse_integrator(mapping.get("integrator", {}))
    if "outputs" not in mapping:
        raise ConfigMissingFieldError('config is missing "outputs"')
    outputs = _parse_outputs(mapping["outputs"])
    return RunConfig(params, initial, integrator, outputs, preset_name)


def serialize_config(config: RunConfig) -> str:
    """Canonical JSON for a RunConfig; parse_config round-trips it."""
    document: dict[str, Any] = {}
    if config.preset is not None:
        document["preset"] = config.preset
    else:
        document["params"] = config.params.as_dict()
    document["initial"] = list(config.initial.as_tuple())
    document["integrator"] = {
        "dt": config.integrator.dt,
        "t_max": config.integrator.t_max,
        "convergence_eps": config.integrator.convergence_eps,
        "convergence_window": config.integrator.convergence_window,
        "threshold": config.integrator.threshold,
        "stop_on_convergence": config.integrator.stop_on_convergence,
    }
    document["outputs"] = [{"kind": sink.kind, "path": sink.path} for sink in config.outputs]
    return json.dumps(document, indent=2) + "\n"
