"""Runtime configuration.

Precedence is defaults < environment < explicit keyword arguments (the CLI passes
its options as keywords).
"""

import os
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Tuple

from eigentope.core.errors import ConfigError

OUTPUT_FORMATS = ("text", "json", "csv")
LOG_LEVELS = ("normal", "debug", "silent")

ENV_CATALOG = "EIGENTOPE_CATALOG"
ENV_SEED = "EIGENTOPE_SEED"
ENV_TOLERANCE = "EIGENTOPE_TOLERANCE"
ENV_LOG_LEVEL = "EIGENTOPE_LOG_LEVEL"


@dataclass(frozen=True)
class Config:
    tolerance: float = 1e-9
    seed: int = 20240601
    box: Tuple[float, float] = (-0.5, 2.0)
    grid_step: float = 0.05
    newton_step: float = 1e-7
    newton_max_iter: int = 50
    dedupe_tol: float = 1e-6
    proportional_tol: float = 1e-7
    max_q: int = 32
    max_len: int = 3
    samples: int = 100
    scan_grid_step: float = 0.25
    output_format: str = "text"
    catalog_path: str = "./eigentopes.json"
    log_level: str = "normal"
    log_dir: Optional[str] = None
    workers: int = 1
    fixed_point_tol: float = field(default=1e-10)

    def validate(self) -> "Config":
        positive = (
            "tolerance",
            "grid_step",
            "newton_step",
            "newton_max_iter",
            "dedupe_tol",
            "proportional_tol",
            "max_q",
            "max_len",
            "samples",
            "scan_grid_step",
            "workers",
            "fixed_point_tol",
        )
        for name in positive:
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"config field {name!r} must be positive, got {value!r}")
        if len(self.box) != 2 or not self.box[0] < self.box[1]:
            raise ConfigError(f"search box must satisfy min < max, got {self.box!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"output format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}"
            )
        if self.log_level not in LOG_LEVELS:
            raise ConfigError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return self

    def with_overrides(self, **overrides) -> "Config":
        """Return a validated copy; ``None`` values leave the field untouched."""
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        updates = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **updates).validate()


def _env_overrides() -> dict:
    out = {}
    catalog = os.environ.get(ENV_CATALOG)
    if catalog:
        out["catalog_path"] = catalog
    seed = os.environ.get(ENV_SEED)
    if seed:
        try:
            out["seed"] = int(seed)
        except ValueError as e:
            raise ConfigError(f"{ENV_SEED} must be an integer, got {seed!r}") from e
    tol = os.environ.get(ENV_TOLERANCE)
    if tol:
        try:
            out["tolerance"] = float(tol)
        except ValueError as e:
            raise ConfigError(f"{ENV_TOLERANCE} must be a number, got {tol!r}") from e
    level = os.environ.get(ENV_LOG_LEVEL)
    if level:
        out["log_level"] = level
    return out


def load_config(**overrides) -> Config:
    """Build a validated Config from defaults, environment and ``overrides``."""
    return Config().with_overrides(**_env_overrides()).with_overrides(**overrides)
