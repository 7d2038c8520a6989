"""Flat key:value configuration, compatible with a scalar-only config.yaml.

The file format is one `key: value` pair per line, `#` comments, no
nesting. Parsing is done by hand rather than through a YAML library so
compass keywords survive untouched (YAML 1.1 would read `no` or `off` as
booleans). Wind keywords name the direction the air moves TOWARD: with
`wind: E` the fire drifts east.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .dynamics import FireParams
from .grid import GridKind
from .metrics import CostCoefficients


class ConfigError(ValueError):
    """A config key failed to parse or violated a model constraint."""


_S = 1.0 / math.sqrt(2.0)

WIND_KEYWORDS: dict[str, tuple[float, float]] = {
    "none": (0.0, 0.0),
    "E": (1.0, 0.0),
    "NE": (_S, _S),
    "N": (0.0, 1.0),
    "NW": (-_S, _S),
    "W": (-1.0, 0.0),
    "SW": (-_S, -_S),
    "S": (0.0, -1.0),
    "SE": (_S, -_S),
}

OUTPUT_MODES = ("none", "ascii", "png")
AGENT_MODES = ("Haksar", "user")


@dataclass(frozen=True)
class Config:
    """One validated simulation setup. Defaults follow the reference runs:
    a 42x42 grid, no wind, no agents, run until the fire is out."""

    grid: GridKind = GridKind.RECTANGULAR
    n: int = 42
    agents: int = 0
    tau: int = 0
    alpha0: float = 0.7
    alpha_wind: float = 1.0
    beta: float = 0.6
    zeta: float = 1.0
    wind: str = "none"
    agent_mode: str = "Haksar"
    logfile: bool = False
    gui: bool = False
    seed: int = 0
    c_healthy: float = 1.0
    c_ext: float = 1.0
    c_time: float = 0.0
    output: str = "none"

    def fire_params(self) -> FireParams:
        return FireParams(self.alpha0, self.alpha_wind, self.beta, self.zeta)

    def wind_vector(self) -> tuple[float, float]:
        return WIND_KEYWORDS[self.wind]

    def cost_coeffs(self) -> CostCoefficients:
        return CostCoefficients(self.c_healthy, self.c_ext, self.c_time)


def _parse_bool(key: str, raw: str) -> bool:
    lowered = raw.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"key '{key}': expected a boolean, got {raw!r}")


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"key '{key}': expected an integer, got {raw!r}") from None


def _parse_float(key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"key '{key}': expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"key '{key}': expected a finite number, got {raw!r}")
    return value


def _parse_grid(key: str, raw: str) -> GridKind:
    try:
        return GridKind(raw.lower())
    except ValueError:
        raise ConfigError(
            f"key '{key}': expected rectangular or hexagonal, got {raw!r}"
        ) from None


def _parse_agent_mode(key: str, raw: str) -> str:
    for mode in AGENT_MODES:
        if raw.lower() == mode.lower():
            return mode
    raise ConfigError(f"key '{key}': expected one of {AGENT_MODES}, got {raw!r}")


def _parse_wind(key: str, raw: str) -> str:
    for keyword in WIND_KEYWORDS:
        if raw.lower() == keyword.lower():
            return keyword
    raise ConfigError(
        f"key '{key}': expected a compass keyword {tuple(WIND_KEYWORDS)}, got {raw!r}"
    )


def _parse_output(key: str, raw: str) -> str:
    if raw.lower() in OUTPUT_MODES:
        return raw.lower()
    raise ConfigError(f"key '{key}': expected one of {OUTPUT_MODES}, got {raw!r}")


# config-file key -> (Config field, parser)
_SCHEMA = {
    "grid": ("grid", _parse_grid),
    "n": ("n", _parse_int),
    "agents": ("agents", _parse_int),
    "tau": ("tau", _parse_int),
    "alpha0": ("alpha0", _parse_float),
    "alpha_wind": ("alpha_wind", _parse_float),
    "beta": ("beta", _parse_float),
    "zeta": ("zeta", _parse_float),
    "wind": ("wind", _parse_wind),
    "agent_mode": ("agent_mode", _parse_agent_mode),
    "logfile": ("logfile", _parse_bool),
    "GUI": ("gui", _parse_bool),
    "seed": ("seed", _parse_int),
    "c_healthy": ("c_healthy", _parse_float),
    "c_ext": ("c_ext", _parse_float),
    "c_time": ("c_time", _parse_float),
    "output": ("output", _parse_output),
}

_FIELD_TO_KEY = {field: key for key, (field, _) in _SCHEMA.items()}


def validate_config(cfg: Config) -> Config:
    """Check cross-field constraints; returns cfg unchanged on success."""
    if cfg.n < 1:
        raise ConfigError(f"key 'n': grid size must be >= 1, got {cfg.n}")
    if cfg.agents < 0:
        raise ConfigError(f"key 'agents': must be >= 0, got {cfg.agents}")
    if cfg.tau < 0:
        raise ConfigError(f"key 'tau': must be >= 0, got {cfg.tau}")
    if cfg.seed < 0:
        raise ConfigError(f"key 'seed': must be >= 0, got {cfg.seed}")
    try:
        cfg.fire_params()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def parse_config(text: str) -> Config:
    """Parse flat key:value config text into a validated Config."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ConfigError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, raw = (part.strip() for part in line.split(":", 1))
        if key not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        if not raw:
            raise ConfigError(f"line {lineno}: key {key!r} has no value")
        field_name, parser = _SCHEMA[key]
        values[field_name] = parser(key, raw)
    return validate_config(Config(**values))


def _format_value(value) -> str:
    if isinstance(value, GridKind):
        return value.value
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def serialize_config(cfg: Config) -> str:
    """Render cfg as config-file text; parse_config round-trips it."""
    lines = []
    for f in fields(Config):
        key = _FIELD_TO_KEY[f.name]
        lines.append(f"{key}: {_format_value(getattr(cfg, f.name))}")
    return "\n".join(lines) + "\n"


def config_snapshot(cfg: Config) -> dict[str, str]:
    """Config as an ordered key -> printable value mapping (for log headers)."""
    return {
        _FIELD_TO_KEY[f.name]: _format_value(getattr(cfg, f.name))
        for f in fields(Config)
    }


def map_slider_params(l: int, p: int, e: int) -> tuple[float, float, float]:
    """Map the 0..10 control levels to (alpha0, beta, zeta)."""
    for name, value in (("l", l), ("p", p), ("e", e)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"slider {name} must be an integer, got {value!r}")
        if not 0 <= value <= 10:
            raise ValueError(f"slider {name} must be in [0, 10], got {value}")
    return (1.0 - l / 10.0, p / 10.0, e / 10.0)
