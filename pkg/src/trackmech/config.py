"""Sectioned ``key = value`` run configuration.

Example::

    [terrain]
    preset = paper-soft-soil
    kp_override = 1.7

    [chassis]
    preset = paper-chassis

    [state]
    m = 300 kg
    v = 1.5 m/s
    i = 0.2
    theta = 30 deg

Numbers may carry a unit suffix matching the field's dimension (m, mm, cm,
kg, s, deg, kPa, m/s); they are converted to canonical units on parsing.
Sweep ranges are written ``lo : hi : step``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, fields, replace
from typing import Optional

from . import chassis as chassis_mod
from . import terrain as terrain_mod
from .chassis import DEFAULT_PITCH_BAND, TrackGeometry
from .errors import ConfigError, TrackmechError
from .mission import fire_tests_for, get_extinguisher
from .resistance import COMPACTION_MODES, BEKKER_CLASSIC, VehicleOperatingState
from .sweep import DEFAULT_MAX_POINTS, OBJECTIVES, SWEEP_VARS
from .terrain import TerrainParams

UNITS = {
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3},
    "mass": {"kg": 1.0},
    "time": {"s": 1.0},
    "angle": {"deg": 1.0},
    "pressure": {"kPa": 1.0},
    "speed": {"m/s": 1.0},
    "number": {},
}

# section -> key -> kind; kinds are UNITS dimensions, "text", "int", "bool",
# or "range:<dimension>"
SCHEMA = {
    "terrain": {
        "preset": "text", "n": "number", "k_c": "number", "k_phi": "number",
        "c": "pressure", "phi": "angle", "gamma": "number", "K": "length",
        "mu_t": "number", "f_r": "number", "kp_override": "number",
    },
    "chassis": {
        "preset": "text", "b": "length", "l": "length", "B": "length",
        "P": "length", "RD": "length", "RS": "length", "D": "length",
        "delta": "number", "rdp_min": "number", "rdp_max": "number",
    },
    "state": {
        "m": "mass", "v": "speed", "i": "number", "theta": "angle", "g": "number",
    },
    "mission": {
        "fire_test": "text", "extinguisher": "text",
        "robot_reach": "length", "robot_max_height": "length",
    },
    "sweep": {
        "b": "range:length", "l": "range:length", "B": "range:length",
        "v": "range:speed", "m": "range:mass", "i": "range:number",
        "objective": "text", "max_points": "int", "workers": "int",
        "dump": "text", "refine": "text",
        "check_steering": "bool", "check_slope": "bool",
    },
    "output": {
        "format": "text", "path": "text", "verbose": "bool", "compaction_mode": "text",
    },
}

REQUIRED_KEYS = {
    "terrain": ("n", "k_c", "k_phi", "c", "phi", "gamma", "K"),
    "chassis": ("b", "l", "B", "P", "RD"),
    "state": ("m", "v", "i"),
    "mission": ("extinguisher",),
    "sweep": (),
    "output": (),
}

SUBCOMMAND_SECTIONS = {
    "evaluate": ("terrain", "chassis", "state"),
    "check": ("terrain", "chassis", "state", "mission"),
    "sweep": ("terrain", "chassis", "state", "sweep"),
    "table3": (),
}

_NUMBER = re.compile(r"^([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z/]+)?$")
_BOOL = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


@dataclass(frozen=True)
class MissionConfig:
    extinguisher: str
    fire_test: str = "B"
    robot_reach: Optional[float] = None
    robot_max_height: Optional[float] = None


@dataclass(frozen=True)
class SweepConfig:
    ranges: tuple = ()  # ((name, (lo, hi, step)), ...) in SWEEP_VARS order
    objective: str = "max_acceleration"
    max_points: int = DEFAULT_MAX_POINTS
    workers: int = 1
    dump: Optional[str] = None
    refine: Optional[str] = None
    check_steering: bool = True
    check_slope: bool = True


@dataclass(frozen=True)
class OutputOptions:
    format: str = "text"
    path: Optional[str] = None
    verbose: bool = False
    compaction_mode: str = BEKKER_CLASSIC


@dataclass(frozen=True)
class RunConfig:
    terrain: Optional[TerrainParams] = None
    chassis: Optional[TrackGeometry] = None
    state: Optional[VehicleOperatingState] = None
    mission: Optional[MissionConfig] = None
    sweep: Optional[SweepConfig] = None
    output: OutputOptions = OutputOptions()
    pitch_band: tuple = DEFAULT_PITCH_BAND
    defaults_applied: tuple = field(default=(), compare=False)


def _number(raw, kind, where):
    m = _NUMBER.match(raw.strip())
    if not m:
        raise ConfigError(f"{where}: expected a number, got {raw!r}")
    value = float(m.group(1))
    suffix = m.group(2)
    if suffix is None:
        return value
    allowed = UNITS[kind]
    if suffix not in allowed:
        expected = ", ".join(allowed) if allowed else "no unit"
        raise ConfigError(f"{where}: unit-suffix mismatch, {suffix!r} given, expected {expected}")
    return value * allowed[suffix]


def _convert(raw, kind, where):
    if kind == "text":
        if not raw:
            raise ConfigError(f"{where}: empty value")
        return raw
    if kind == "bool":
        try:
            return _BOOL[raw.lower()]
        except KeyError:
            raise ConfigError(f"{where}: expected true/false, got {raw!r}") from None
    if kind == "int":
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{where}: expected an integer, got {raw!r}") from None
    if kind.startswith("range:"):
        parts = raw.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{where}: expected 'lo : hi : step', got {raw!r}")
        dim = kind.split(":", 1)[1]
        return tuple(_number(p, dim, where) for p in parts)
    return _number(raw, kind, where)


def tokenize(text):
    """Split config text into ``{section: {key: (raw, lineno)}}``."""
    sections = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ConfigError(f"line {lineno}: malformed section header {stripped!r}")
            name = stripped[1:-1].strip()
            if name not in SCHEMA:
                raise ConfigError(f"line {lineno}: unknown section [{name}]")
            if name in sections:
                raise ConfigError(f"line {lineno}: duplicate section [{name}]")
            sections[name] = {}
            current = name
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        if current is None:
            raise ConfigError(f"line {lineno}: key outside of any section")
        key, raw = (s.strip() for s in stripped.split("=", 1))
        if key not in SCHEMA[current]:
            raise ConfigError(f"line {lineno}: unknown key {key!r} in [{current}]")
        if key in sections[current]:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} in [{current}]")
        sections[current][key] = (raw, lineno)
    return sections


def _values(sections, name):
    out, lines = {}, {}
    for key, (raw, lineno) in sections.get(name, {}).items():
        out[key] = _convert(raw, SCHEMA[name][key], f"line {lineno}: {name}.{key}")
        lines[key] = lineno
    return out, lines


def _build(section, factory, values, lines):
    try:
        return factory(**values)
    except TrackmechError as exc:
        msg = str(exc)
        for key, lineno in lines.items():
            if f"{section}.{key} " in msg:
                raise ConfigError(f"line {lineno}: {msg}") from None
        raise ConfigError(msg) from None


def _with_preset(section, values, presets):
    name = values.pop("preset", None)
    if name is None:
        missing = [k for k in REQUIRED_KEYS[section] if k not in values]
        if missing:
            raise ConfigError(f"[{section}] missing required key(s): {', '.join(missing)}")
        return values
    try:
        base = presets[name]
    except KeyError:
        raise ConfigError(f"[{section}] unknown preset {name!r}; known: {', '.join(presets)}") from None
    merged = {f.name: getattr(base, f.name) for f in fields(base)}
    merged.update(values)
    return merged


def parse_config(text, subcommand="evaluate"):
    """Parse and validate config text for ``subcommand``."""
    sections = tokenize(text)
    needed = SUBCOMMAND_SECTIONS.get(subcommand, ())
    missing = [s for s in needed if s not in sections]
    if missing:
        raise ConfigError(f"missing section(s) for {subcommand}: {', '.join('[' + s + ']' for s in missing)}")

    defaults = []
    cfg = {}

    if "terrain" in sections:
        values, lines = _values(sections, "terrain")
        values = _with_preset("terrain", values, terrain_mod.PRESETS)
        cfg["terrain"] = _build("terrain", TerrainParams, values, lines)

    if "chassis" in sections:
        values, lines = _values(sections, "chassis")
        band = (values.pop("rdp_min", DEFAULT_PITCH_BAND[0]), values.pop("rdp_max", DEFAULT_PITCH_BAND[1]))
        if not band[0] <= band[1]:
            raise ConfigError(f"[chassis] rdp_min {band[0]} exceeds rdp_max {band[1]}")
        cfg["pitch_band"] = band
        values = _with_preset("chassis", values, chassis_mod.PRESETS)
        cfg["chassis"] = _build("chassis", TrackGeometry, values, lines)

    if "state" in sections:
        values, lines = _values(sections, "state")
        missing = [k for k in REQUIRED_KEYS["state"] if k not in values]
        if missing:
            raise ConfigError(f"[state] missing required key(s): {', '.join(missing)}")
        for key, default in (("theta", 0.0), ("g", 9.81)):
            if key not in values:
                defaults.append(f"state.{key} = {default!r}")
        cfg["state"] = _build("state", VehicleOperatingState, values, lines)

    if "mission" in sections:
        values, lines = _values(sections, "mission")
        if "extinguisher" not in values:
            raise ConfigError("[mission] missing required key(s): extinguisher")
        get_extinguisher(values["extinguisher"])
        if "fire_test" not in values:
            defaults.append("mission.fire_test = 'B'")
        values["fire_test"] = "".join(t.test_class for t in fire_tests_for(values.get("fire_test", "B")))
        for key in ("robot_reach", "robot_max_height"):
            if key in values and not values[key] > 0:
                raise ConfigError(f"line {lines[key]}: mission.{key} must be > 0, got {values[key]}")
        cfg["mission"] = MissionConfig(**values)

    if "sweep" in sections:
        values, lines = _values(sections, "sweep")
        ranges = tuple((k, values.pop(k)) for k in SWEEP_VARS if k in values)
        if not ranges:
            raise ConfigError("[sweep] needs at least one range (b, l, B, v, m or i)")
        for name, (lo, hi, step) in ranges:
            if not step > 0 or hi < lo:
                raise ConfigError(f"line {lines[name]}: sweep.{name} needs lo <= hi and step > 0")
        if values.get("objective", "max_acceleration") not in OBJECTIVES:
            raise ConfigError(f"line {lines['objective']}: sweep.objective must be one of {', '.join(OBJECTIVES)}")
        if "refine" in values and values["refine"] not in dict(ranges):
            raise ConfigError(f"line {lines['refine']}: sweep.refine must name a swept variable")
        cfg["sweep"] = SweepConfig(ranges=ranges, **values)

    values, lines = _values(sections, "output")
    if values.get("format", "text") not in ("text", "csv"):
        raise ConfigError(f"line {lines['format']}: output.format must be text or csv")
    if values.get("compaction_mode", BEKKER_CLASSIC) not in COMPACTION_MODES:
        raise ConfigError(
            f"line {lines['compaction_mode']}: output.compaction_mode must be one of {', '.join(COMPACTION_MODES)}"
        )
    cfg["output"] = OutputOptions(**values)

    return RunConfig(defaults_applied=tuple(defaults), **cfg)


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return " : ".join(_fmt(float(v)) for v in value)
    return str(value)


def _emit(lines, section, items):
    lines.append(f"[{section}]")
    for key, value in items:
        if value is not None:
            lines.append(f"{key} = {_fmt(value)}")
    lines.append("")


def to_text(cfg):
    """Canonical form: presets expanded, canonical units, no suffixes."""
    lines = []
    if cfg.terrain is not None:
        _emit(lines, "terrain", [(f.name, getattr(cfg.terrain, f.name)) for f in fields(cfg.terrain)])
    if cfg.chassis is not None:
        items = [(f.name, getattr(cfg.chassis, f.name)) for f in fields(cfg.chassis)]
        items += [("rdp_min", float(cfg.pitch_band[0])), ("rdp_max", float(cfg.pitch_band[1]))]
        _emit(lines, "chassis", items)
    if cfg.state is not None:
        _emit(lines, "state", [(f.name, getattr(cfg.state, f.name)) for f in fields(cfg.state)])
    if cfg.mission is not None:
        _emit(lines, "mission", [(f.name, getattr(cfg.mission, f.name)) for f in fields(cfg.mission)])
    if cfg.sweep is not None:
        items = list(cfg.sweep.ranges)
        items += [(f.name, getattr(cfg.sweep, f.name)) for f in fields(cfg.sweep) if f.name != "ranges"]
        _emit(lines, "sweep", items)
    _emit(lines, "output", [(f.name, getattr(cfg.output, f.name)) for f in fields(cfg.output)])
    return "\n".join(lines)


def with_overrides(cfg, compaction_mode=None, kp=None, fmt=None, output=None, verbose=None):
    """Apply command-line flags on top of a parsed config."""
    out = cfg.output
    if compaction_mode is not None:
        out = replace(out, compaction_mode=compaction_mode)
    if fmt is not None:
        out = replace(out, format=fmt)
    if output is not None:
        out = replace(out, path=output)
    if verbose:
        out = replace(out, verbose=True)
    terrain = cfg.terrain
    if kp is not None and terrain is not None:
        terrain = replace(terrain, kp_override=kp)
    return replace(cfg, output=out, terrain=terrain)
