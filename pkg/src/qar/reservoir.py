"""Thermal reservoirs: spectral densities, Bose occupation and rate kernels"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .core.spectral_density import ArrayLike, BaseSpectralDensity
from .densities.peaked import PeakedDensity
from .errors import DomainError
from .types import DEFAULT_COUPLING, ROLES

logger = logging.getLogger(__name__)

# Above this |beta*w| the occupation is treated as exactly 0 (or -1)
_OVERFLOW = 700.0


def _check_role(role: str) -> None:
    if role not in ROLES:
        raise DomainError(f"Unknown reservoir role: {role}. Supported roles: {list(ROLES)}")


def _check_coupling(kind: str) -> None:
    if kind not in ("jx", "jx2_over_n"):
        raise DomainError(f"Unknown coupling kind: {kind}. Supported kinds: ['jx', 'jx2_over_n']")


def _check_beta(beta: float) -> None:
    if math.isnan(beta) or not beta > 0:
        raise DomainError(f"beta must be positive (inf allowed), got {beta}")


@dataclass(frozen=True)
class ReservoirSpec:
    """Parameters of one reservoir with a peaked spectral density

    Attributes:
        role: 'cold', 'hot' or 'work'
        gbar: Peak height (rate)
        eps: Peak position (energy)
        delta: Peak width (energy)
        beta: Inverse temperature, inf for zero temperature
        coupling: 'jx' or 'jx2_over_n'; defaults by role (hot uses Jx^2/N)
    """

    role: str
    gbar: float
    eps: float
    delta: float
    beta: float
    coupling: Optional[str] = None

    def __post_init__(self):
        _check_role(self.role)
        for name in ("gbar", "eps", "delta"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise DomainError(f"{self.role} reservoir: {name} must be positive, got {value}")
        _check_beta(self.beta)
        if self.coupling is None:
            object.__setattr__(self, "coupling", DEFAULT_COUPLING[self.role])
        _check_coupling(self.coupling)

    @property
    def density(self) -> PeakedDensity:
        return PeakedDensity(gbar=self.gbar, eps=self.eps, delta=self.delta)

    def to_bath(self) -> "Bath":
        return Bath(role=self.role, beta=self.beta, density=self.density, coupling=self.coupling)


@dataclass(frozen=True)
class Bath:
    """Thermal reservoir with an arbitrary spectral density"""

    role: str
    beta: float
    density: BaseSpectralDensity = field(repr=False)
    coupling: Optional[str] = None

    def __post_init__(self):
        _check_role(self.role)
        _check_beta(self.beta)
        if not isinstance(self.density, BaseSpectralDensity):
            raise TypeError(f"density must be a BaseSpectralDensity, got {type(self.density)}")
        if self.coupling is None:
            object.__setattr__(self, "coupling", DEFAULT_COUPLING[self.role])
        _check_coupling(self.coupling)


Reservoir = Union[ReservoirSpec, Bath]


def spectral_density(spec: Reservoir, w: ArrayLike) -> ArrayLike:
    """Evaluate the reservoir spectral density Gamma(w)

    Odd in w; total on the real axis.

    Examples:
        >>> spec = ReservoirSpec("cold", gbar=1, eps=2, delta=0.1, beta=2)
        >>> spectral_density(spec, 2.0)
        0.99937539...
    """
    return spec.density(w)


def bose(beta: float, w: ArrayLike) -> ArrayLike:
    """Bose-Einstein occupation n = 1 / (exp(beta w) - 1)

    Uses expm1 so that small |beta w| keeps full relative accuracy. For
    beta*w > 700 the result is 0; for beta*w < -700 it is -1.

    Raises:
        DomainError: w == 0 or beta not positive
    """
    _check_beta(beta)
    arr = np.asarray(w, dtype=float)
    if np.any(arr == 0):
        raise DomainError("Bose occupation is undefined at w = 0")
    with np.errstate(over="ignore", invalid="ignore"):
        x = beta * arr
        safe = np.clip(x, -_OVERFLOW, _OVERFLOW)
        n = np.where(x > _OVERFLOW, 0.0, np.where(x < -_OVERFLOW, -1.0, 1.0 / np.expm1(safe)))
    if arr.ndim == 0:
        return float(n)
    return n


def _emission_factor(beta: float, w: np.ndarray) -> np.ndarray:
    """1 + n(beta, w) for w > 0, written without cancellation"""
    with np.errstate(over="ignore"):
        x = np.minimum(beta * w, _OVERFLOW)
        return np.where(beta * w > _OVERFLOW, 1.0, -1.0 / np.expm1(-x))


def gamma_rate(spec: Reservoir, w: ArrayLike) -> ArrayLike:
    """Rate kernel gamma(w) = Gamma(w) [1 + n(beta, w)]

    For w > 0 the kernel describes emission into the reservoir, for w < 0
    absorption with gamma(w) = Gamma(-w) n(beta, -w) >= 0.

    Raises:
        DomainError: w == 0
    """
    arr = np.asarray(w, dtype=float)
    if np.any(arr == 0):
        raise DomainError("Rate kernel is undefined at w = 0")
    mag = np.abs(arr)
    density = np.asarray(spec.density(mag), dtype=float)
    emission = _emission_factor(spec.beta, mag)
    absorption = np.asarray(bose(spec.beta, mag), dtype=float)
    out = density * np.where(arr > 0, emission, absorption)
    if arr.ndim == 0:
        return float(out)
    return out
