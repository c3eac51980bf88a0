"""Configuration management for simulation runs

Values come from three layers: built-in defaults (the reference refrigerator
parameters, energies in units of Omega), a flat `key = value` file and
repeated `--set key=value` overrides. The merged flat mapping is validated by
pydantic models.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Literal, Mapping, Optional

import numpy as np
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .core.spectral_density import BaseSpectralDensity
from .densities import DensityFactory
from .errors import ConfigError
from .reservoir import ReservoirSpec

logger = logging.getLogger(__name__)


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ReservoirConfig(_Strict):
    """Peaked reservoir parameters"""

    gbar: float = Field(1.0, gt=0, description="Peak height")
    eps: float = Field(..., gt=0, description="Peak position")
    delta: float = Field(0.1, gt=0, description="Peak width")
    beta: float = Field(..., gt=0, description="Inverse temperature (inf allowed)")
    coupling: Optional[Literal["jx", "jx2_over_n"]] = Field(default=None, description="Coupling operator")


class SweepAxis(_Strict):
    """One sweep dimension: a dotted parameter path and its grid"""

    path: str = Field(..., description="Parameter path, e.g. 'N' or 'hot.delta'")
    grid: Literal["linear", "log", "odd", "list"] = Field("linear", description="Grid kind")
    lo: Optional[float] = Field(default=None, description="Lower bound")
    hi: Optional[float] = Field(default=None, description="Upper bound")
    count: int = Field(11, ge=2, description="Number of points for linear/log grids")
    values: Optional[List[float]] = Field(default=None, description="Explicit values for grid=list")

    @field_validator("values", mode="before")
    @classmethod
    def _split_values(cls, value: Any) -> Any:
        return _split_list(value)

    @model_validator(mode="after")
    def _check_grid(self) -> "SweepAxis":
        if self.path not in _SWEEPABLE:
            raise ValueError(f"Unknown sweep path: {self.path}. Sweepable: {sorted(_SWEEPABLE)}")
        if self.grid == "list":
            if not self.values or len(self.values) < 2:
                raise ValueError("grid=list needs at least two values")
        else:
            if self.lo is None or self.hi is None:
                raise ValueError(f"grid={self.grid} needs lo and hi")
            if self.grid == "log" and (self.lo <= 0 or self.hi <= 0):
                raise ValueError("log grid needs positive bounds")
        if len(self.points()) < 2:
            raise ValueError(f"Sweep over {self.path} has fewer than two points")
        return self

    def points(self) -> List[float]:
        """Grid values in ascending order of generation"""
        if self.grid == "list":
            return list(self.values)
        if self.grid == "linear":
            return np.linspace(self.lo, self.hi, self.count).tolist()
        if self.grid == "log":
            return np.geomspace(self.lo, self.hi, self.count).tolist()
        first = int(np.ceil(self.lo))
        first += 1 - first % 2
        return [float(n) for n in range(first, int(np.floor(self.hi)) + 1, 2)]


class SweepConfig(_Strict):
    """Grid sweep (x, optional y) or a batch of seeded random configurations"""

    x: Optional[SweepAxis] = None
    y: Optional[SweepAxis] = None
    random: int = Field(0, ge=0, description="Number of random valid configurations")


class DynamicsConfig(_Strict):
    """Single-reservoir relaxation; the bath density is built by DensityFactory"""

    density: str = Field("ohmic", description="Registered spectral density kind")
    density_params: Dict[str, float] = Field(
        default_factory=dict, description="Constructor parameters for a non-Ohmic kind"
    )
    cutoff: float = Field(100.0, gt=0, description="Ohmic cutoff frequency")
    strength: float = Field(1.0, gt=0, description="Ohmic coupling strength")
    beta_i: float = Field(1.0, gt=0, description="Initial inverse temperature")
    beta_f: float = Field(4.0, gt=0, description="Bath inverse temperature")
    threshold: float = Field(1e-6, gt=0, description="Relative-entropy threshold")
    t_max: float = Field(1e6, gt=0, description="Search horizon")
    n_values: List[int] = Field(default_factory=lambda: list(range(11, 52, 2)))
    trajectory: bool = Field(False, description="Dump populations over time instead of t_th")
    t_final: float = Field(1.0, gt=0, description="Last trajectory time")
    points: int = Field(51, ge=2, description="Trajectory grid size")

    @field_validator("n_values", mode="before")
    @classmethod
    def _split_n_values(cls, value: Any) -> Any:
        return _split_list(value)

    @model_validator(mode="after")
    def _check_density(self) -> "DynamicsConfig":
        try:
            self.bath_density()
        except (ValueError, TypeError) as exc:
            raise ValueError(f"dynamics.density={self.density}: {exc}") from exc
        return self

    def bath_density(self) -> BaseSpectralDensity:
        """Spectral density of the relaxation bath

        The Ohmic kind takes `cutoff` and `strength`; any other registered
        kind is built from `density_params` alone.
        """
        params = dict(self.density_params)
        if self.density == "ohmic":
            params = {"cutoff": self.cutoff, "strength": self.strength, **params}
        return DensityFactory.create(self.density, **params)


class RcMapConfig(_Strict):
    """Reaction-coordinate mapping utility"""

    gbar: float = Field(1.0, gt=0)
    eps: float = Field(2.0, gt=0)
    delta: float = Field(0.1, gt=0)
    cutoffs: List[float] = Field(default_factory=lambda: [10.0])
    w_lo: float = Field(0.0, ge=0)
    w_hi: float = Field(10.0, gt=0)
    w_count: int = Field(101, ge=2)

    @field_validator("cutoffs", mode="before")
    @classmethod
    def _split_cutoffs(cls, value: Any) -> Any:
        return _split_list(value)


class AnalyticConfig(_Strict):
    """Reduced-model comparison table"""

    n_values: List[int] = Field(default_factory=lambda: list(range(5, 52, 2)))
    laser_factor: float = Field(1e6, gt=0, description="Laser rate over the largest thermal rate")

    @field_validator("n_values", mode="before")
    @classmethod
    def _split_n_values(cls, value: Any) -> Any:
        return _split_list(value)


def _default_workers() -> int:
    load_dotenv()
    raw = os.getenv("QAR_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning("Ignoring invalid QAR_WORKERS=%r", raw)
        return 1


class ModelConfig(_Strict):
    """Complete simulation configuration"""

    N: int = Field(31, ge=3, description="Odd number of two-level systems")
    omega: float = Field(1.0, gt=0, description="Energy scale")
    cold: ReservoirConfig = ReservoirConfig(eps=2.0, delta=0.1, beta=2.0)
    hot: ReservoirConfig = ReservoirConfig(eps=6.0, delta=0.1, beta=1.0)
    work: ReservoirConfig = ReservoirConfig(eps=4.0, delta=1e-3, beta=1e-3)
    counted: Literal["cold", "hot", "work"] = "cold"
    reduced: bool = Field(False, description="Use the three-level reduced model")
    laser_rate: Optional[float] = Field(default=None, ge=0, description="Laser drive for the reduced model")
    dt: float = Field(1.0, gt=0, description="Time window of the noise-to-signal ratio")
    seed: int = Field(0, ge=0, description="Seed of random configuration draws")
    sweep: SweepConfig = SweepConfig()
    dynamics: DynamicsConfig = DynamicsConfig()
    rcmap: RcMapConfig = RcMapConfig()
    analytic: AnalyticConfig = AnalyticConfig()
    out: Optional[str] = None
    workers: int = Field(default_factory=_default_workers, ge=1)

    @field_validator("N")
    @classmethod
    def _odd(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError(f"N must be odd, got {value}")
        return value

    def reservoirs(self) -> List[ReservoirSpec]:
        """ReservoirSpec for cold, hot and work"""
        return [
            ReservoirSpec(role=role, **getattr(self, role).model_dump())
            for role in ("cold", "hot", "work")
        ]

    def betas(self) -> Dict[str, float]:
        return {role: getattr(self, role).beta for role in ("cold", "hot", "work")}

    @classmethod
    def from_flat(cls, flat: Mapping[str, Any]) -> "ModelConfig":
        """Validate a flat dotted-key mapping layered over the defaults

        Raises:
            ConfigError: Unknown keys or invalid values
        """
        merged = flatten(cls().model_dump(exclude_none=True))
        merged.update(flat)
        try:
            return cls.model_validate(unflatten(merged))
        except ValidationError as exc:
            raise ConfigError(_format_validation(exc)) from exc

    @classmethod
    def from_file(cls, path: Optional[str] = None, overrides: Iterable[str] = ()) -> "ModelConfig":
        """Defaults, then file values, then `key=value` overrides"""
        flat: Dict[str, str] = {}
        if path:
            flat.update(parse_flat_file(path))
        flat.update(parse_overrides(overrides))
        return cls.from_flat(flat)

    def to_flat(self) -> Dict[str, Any]:
        return flatten(self.model_dump(exclude_none=True))

    def with_values(self, values: Mapping[str, Any]) -> "ModelConfig":
        """Copy with some dotted parameters replaced"""
        flat = self.to_flat()
        flat.update(values)
        return ModelConfig.from_flat(flat)

    def point_parameters(self) -> Dict[str, float]:
        """Physical parameters of one evaluation point, for CSV columns"""
        flat = self.to_flat()
        return {key: flat[key] for key in POINT_KEYS}


POINT_KEYS = ("N", "omega") + tuple(
    f"{role}.{name}" for role in ("cold", "hot", "work") for name in ("gbar", "eps", "delta", "beta")
)

_SWEEPABLE = {"laser_rate", "dt", *POINT_KEYS}


def parse_flat_file(path: str) -> Dict[str, str]:
    """Read `key = value` lines; `#` starts a comment

    Raises:
        ConfigError: Missing file or malformed line
    """
    file = Path(path)
    if not file.is_file():
        raise ConfigError(f"Config file not found: {path}")
    flat: Dict[str, str] = {}
    for lineno, raw in enumerate(file.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        flat[key] = value
    logger.debug("Read %d keys from %s", len(flat), path)
    return flat


def parse_overrides(items: Iterable[str]) -> Dict[str, str]:
    """Parse repeated `key=value` strings"""
    flat: Dict[str, str] = {}
    for item in items or ():
        if "=" not in item:
            raise ConfigError(f"Override must look like key=value, got {item!r}")
        key, value = (part.strip() for part in item.split("=", 1))
        flat[key] = value
    return flat


def unflatten(flat: Mapping[str, Any]) -> Dict[str, Any]:
    """{'cold.beta': 2} -> {'cold': {'beta': 2}}"""
    nested: Dict[str, Any] = {}
    for key, value in flat.items():
        parts = key.split(".")
        node = nested
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"Key {key!r} conflicts with scalar {part!r}")
            node = child
        if isinstance(node.get(parts[-1]), dict):
            raise ConfigError(f"Key {key!r} conflicts with section {parts[-1]!r}")
        node[parts[-1]] = value
    return nested


def flatten(nested: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Inverse of unflatten"""
    flat: Dict[str, Any] = {}
    for key, value in nested.items():
        full = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten(value, f"{full}."))
        else:
            flat[full] = value
    return flat


def _format_validation(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"])
        parts.append(f"{loc or '<root>'}: {err['msg']}")
    return "Invalid configuration: " + "; ".join(parts)
