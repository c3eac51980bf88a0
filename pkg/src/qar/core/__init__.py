"""Core abstract interfaces for the refrigerator simulator"""

from .spectral_density import BaseSpectralDensity
from .protocols import SpectralFunction, ThermalBath

__all__ = [
    "BaseSpectralDensity",
    "SpectralFunction",
    "ThermalBath",
]
