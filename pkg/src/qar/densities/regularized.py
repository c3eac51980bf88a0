"""High-frequency regularization of a spectral density"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.spectral_density import BaseSpectralDensity
from ..errors import DomainError


@dataclass(frozen=True)
class RegularizedDensity(BaseSpectralDensity):
    """Gamma_reg(w) = Gamma(w) * cutoff^2 / (cutoff^2 + w^2)

    The factor makes the third moment of a peaked density finite. As the
    cutoff grows the regularized density tends to the base pointwise.
    """

    base: BaseSpectralDensity
    cutoff: float

    def __post_init__(self):
        if not self.cutoff > 0:
            raise DomainError(f"cutoff must be positive, got {self.cutoff}")

    def evaluate(self, w: np.ndarray) -> np.ndarray:
        c2 = self.cutoff**2
        return self.base.evaluate(w) * c2 / (c2 + w**2)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(self.base.breakpoints) + (self.cutoff,)
