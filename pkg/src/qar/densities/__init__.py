"""Spectral density implementations"""

from .factory import DensityFactory, create_spectral_density
from .lorentz_drude import LorentzDrudeDensity
from .ohmic import OhmicDensity
from .peaked import PeakedDensity
from .regularized import RegularizedDensity

__all__ = [
    "DensityFactory",
    "create_spectral_density",
    "LorentzDrudeDensity",
    "OhmicDensity",
    "PeakedDensity",
    "RegularizedDensity",
]
