"""Abstract base class for reservoir spectral densities"""

from abc import ABC, abstractmethod
from typing import Tuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


class BaseSpectralDensity(ABC):
    """Abstract base class for spectral densities Gamma(w)

    Implementations must be odd in w, i.e. defined on the whole real axis by
    odd continuation, and non-negative for w > 0.
    """

    @abstractmethod
    def evaluate(self, w: np.ndarray) -> np.ndarray:
        """Evaluate the density on an array of frequencies

        Args:
            w: Frequencies (energy units), any shape

        Returns:
            Array of the same shape (rate units)
        """
        pass

    def __call__(self, w: ArrayLike) -> ArrayLike:
        arr = np.asarray(w, dtype=float)
        out = self.evaluate(arr)
        if arr.ndim == 0:
            return float(out)
        return out

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        """Frequencies where the density has sharp features (for quadrature)"""
        return ()

    @property
    def name(self) -> str:
        return self.__class__.__name__
