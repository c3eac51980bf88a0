"""Ohmic spectral density with exponential cutoff"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.spectral_density import BaseSpectralDensity
from ..errors import DomainError


@dataclass(frozen=True)
class OhmicDensity(BaseSpectralDensity):
    """Gamma(w) = strength * w * exp(-|w| / cutoff)

    Used for the single-reservoir relaxation studies.
    """

    cutoff: float
    strength: float = 1.0

    def __post_init__(self):
        if not self.cutoff > 0:
            raise DomainError(f"cutoff must be positive, got {self.cutoff}")
        if not self.strength > 0:
            raise DomainError(f"strength must be positive, got {self.strength}")

    def evaluate(self, w: np.ndarray) -> np.ndarray:
        return self.strength * w * np.exp(-np.abs(w) / self.cutoff)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (self.cutoff,)
