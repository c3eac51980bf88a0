"""Peaked spectral density acting as a transition filter"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.spectral_density import BaseSpectralDensity
from ..errors import DomainError


@dataclass(frozen=True)
class PeakedDensity(BaseSpectralDensity):
    """Gamma(w) = 4 gbar eps delta^2 w / ([(w-eps)^2+delta^2][(w+eps)^2+delta^2])

    Peaks near w = eps with height close to gbar and width delta.

    Examples:
        >>> PeakedDensity(gbar=1.0, eps=2.0, delta=0.1)(2.0)
        0.99937539...
    """

    gbar: float
    eps: float
    delta: float

    def __post_init__(self):
        for name in ("gbar", "eps", "delta"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value}")

    def evaluate(self, w: np.ndarray) -> np.ndarray:
        d2 = self.delta**2
        den = ((w - self.eps) ** 2 + d2) * ((w + self.eps) ** 2 + d2)
        return 4 * self.gbar * self.eps * d2 * w / den

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (self.eps,)
