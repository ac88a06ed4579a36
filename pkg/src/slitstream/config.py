"""Flat key = value run configuration.

Every key has a default; a config file overrides defaults and CLI flags
override the file. All lengths are dimensionless (k*r units), so the
slit separation key `kd` is the single physics knob. Parse errors carry
file and line so misconfigurations are easy to locate.
"""

from __future__ import annotations

from dataclasses import dataclass, fields


class ConfigError(ValueError):
    """Invalid configuration key, value, or combination."""


def _parse_float_list(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(part) for part in text.split(","))


@dataclass
class RunConfig:
    """Run parameters shared by the CLI subcommands (k*r units throughout)."""

    # physics
    kd: float = 20.0
    exclusion_radius: float = 1.0
    # field grid
    x_min: float = 1.0
    x_max: float = 100.0
    y_min: float = -50.0
    y_max: float = 50.0
    nx: int = 100
    ny: int = 101
    # streamline seeding
    seed_x0: float = 1.0
    seed_y_min: float = -13.0
    seed_y_max: float = 13.0
    n_seeds: int = 41
    seed_spacing: str = "flux"  # flux | uniform
    seeds: tuple[float, ...] = ()  # explicit seed heights override the spacing spec
    direction: str = "downstream"
    # integration
    rel_tol: float = 1e-8
    abs_tol: float = 1e-8
    r_stop: float = 500.0
    max_arc_length: float = 4000.0
    min_current: float = 1e-9
    max_steps: int = 500_000
    record_interval: float = 0.1
    # numerics
    fd_step: float = 0.0  # 0 = automatic per-operation default
    density_floor: float = 1e-12
    # radial validation
    k_over_kappa: tuple[float, ...] = (0.90, 0.95, 0.99)
    nonlinear_coeff: float = 0.0
    r_start: float = 10.0
    r_end: float = 200.0
    radial_samples: int = 512
    # outputs and reproducibility
    out: str = ""
    svg: str = ""
    jobs: int = 1
    seed: int = 12345
    k_scale: float = 1.0  # axis labeling only
    validate_points: int = 1000


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_LIST_KEYS = {"seeds", "k_over_kappa"}
_STR_KEYS = {"seed_spacing", "direction", "out", "svg"}
_INT_KEYS = {"nx", "ny", "n_seeds", "max_steps", "jobs", "seed",
             "radial_samples", "validate_points"}


def _convert(key: str, raw: str, where: str):
    if key not in _FIELD_TYPES:
        raise ConfigError(f"{where}: unknown key {key!r}")
    try:
        if key in _LIST_KEYS:
            return _parse_float_list(raw)
        if key in _STR_KEYS:
            return raw.strip()
        if key in _INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {key}: {exc}") from exc


def parse_config_file(path: str) -> dict:
    """Read `key = value` lines; '#' starts a comment, blanks are skipped."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, raw = (part.strip() for part in stripped.split("=", 1))
            values[key] = _convert(key, raw, f"{path}:{lineno}")
    return values


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.kd <= 0:
        raise ConfigError("kd must be positive")
    if cfg.exclusion_radius <= 0:
        raise ConfigError("exclusion_radius must be positive")
    if cfg.nx < 2 or cfg.ny < 2:
        raise ConfigError("nx and ny must be at least 2")
    if cfg.x_min >= cfg.x_max or cfg.y_min >= cfg.y_max:
        raise ConfigError("grid needs x_min < x_max and y_min < y_max")
    if cfg.seed_spacing not in ("flux", "uniform"):
        raise ConfigError(f"seed_spacing must be flux or uniform, got {cfg.seed_spacing!r}")
    if cfg.direction not in ("downstream", "upstream"):
        raise ConfigError(f"direction must be downstream or upstream, got {cfg.direction!r}")
    if cfg.n_seeds < 0:
        raise ConfigError("n_seeds must be non-negative")
    if cfg.seed_y_min >= cfg.seed_y_max:
        raise ConfigError("seed line needs seed_y_min < seed_y_max")
    for name in ("rel_tol", "abs_tol", "r_stop", "max_arc_length", "min_current",
                 "record_interval", "k_scale"):
        if getattr(cfg, name) <= 0:
            raise ConfigError(f"{name} must be positive")
    if cfg.fd_step < 0:
        raise ConfigError("fd_step must be non-negative (0 = automatic)")
    if cfg.max_steps <= 0 or cfg.jobs <= 0:
        raise ConfigError("max_steps and jobs must be positive")
    if not cfg.k_over_kappa:
        raise ConfigError("k_over_kappa sweep must not be empty")
    for q in cfg.k_over_kappa:
        if not 0.0 < q <= 1.0:
            raise ConfigError(f"k_over_kappa values must lie in (0, 1], got {q}")
    if cfg.r_start <= 0 or cfg.r_end < cfg.r_start:
        raise ConfigError("radial range needs 0 < r_start <= r_end")
    if cfg.radial_samples < 1 or cfg.validate_points < 1:
        raise ConfigError("radial_samples and validate_points must be positive")
    return cfg


def build_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Defaults, then config file, then overrides; validated as a whole."""
    values = {}
    if path is not None:
        values.update(parse_config_file(path))
    for key, raw in (overrides or {}).items():
        if raw is None:
            continue
        values[key] = _convert(key, str(raw), f"option --{key.replace('_', '-')}")
    return _validate(RunConfig(**values))
