"""Lorentz-Drude spectral density"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.spectral_density import BaseSpectralDensity
from ..errors import DomainError


@dataclass(frozen=True)
class LorentzDrudeDensity(BaseSpectralDensity):
    """Gamma(w) = amplitude * w / (w^2 + width^2)"""

    amplitude: float
    width: float

    def __post_init__(self):
        if not self.amplitude > 0 or not self.width > 0:
            raise DomainError(
                f"amplitude and width must be positive, got {self.amplitude}, {self.width}"
            )

    def evaluate(self, w: np.ndarray) -> np.ndarray:
        return self.amplitude * w / (w**2 + self.width**2)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (self.width,)
