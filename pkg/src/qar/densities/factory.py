"""Spectral density factory - create densities by kind name"""

from typing import Dict, List, Type

from ..core.spectral_density import BaseSpectralDensity
from .lorentz_drude import LorentzDrudeDensity
from .ohmic import OhmicDensity
from .peaked import PeakedDensity
from .regularized import RegularizedDensity

# Registry of density kinds
_densities: Dict[str, Type[BaseSpectralDensity]] = {
    "peaked": PeakedDensity,
    "regularized": RegularizedDensity,
    "lorentz_drude": LorentzDrudeDensity,
    "ohmic": OhmicDensity,
}


class DensityFactory:
    """Registry-backed factory for spectral densities"""

    @staticmethod
    def create(kind: str, **params) -> BaseSpectralDensity:
        """Create a spectral density

        Args:
            kind: Registered kind ("peaked", "regularized", "lorentz_drude", "ohmic")
            **params: Constructor parameters of the density class

        Returns:
            BaseSpectralDensity instance

        Raises:
            ValueError: Unknown kind

        Examples:
            >>> DensityFactory.create("peaked", gbar=1.0, eps=2.0, delta=0.1)
            >>> DensityFactory.create("ohmic", cutoff=100.0)
        """
        if kind not in _densities:
            raise ValueError(
                f"Unknown spectral density kind: {kind}. "
                f"Available kinds: {list(_densities.keys())}"
            )
        return _densities[kind](**params)

    @staticmethod
    def register(kind: str, density_class: Type[BaseSpectralDensity]) -> None:
        """Register a new density kind

        Raises:
            TypeError: Class does not inherit from BaseSpectralDensity
        """
        if not issubclass(density_class, BaseSpectralDensity):
            raise TypeError(f"{density_class} must inherit from BaseSpectralDensity")
        _densities[kind] = density_class

    @staticmethod
    def list_kinds() -> List[str]:
        """List all registered kinds"""
        return list(_densities.keys())


def create_spectral_density(kind: str, **params) -> BaseSpectralDensity:
    """Shortcut for DensityFactory.create"""
    return DensityFactory.create(kind, **params)
