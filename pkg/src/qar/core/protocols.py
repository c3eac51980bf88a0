"""Protocol definitions for the refrigerator simulator"""

from typing import Protocol, runtime_checkable

from .spectral_density import BaseSpectralDensity


@runtime_checkable
class SpectralFunction(Protocol):
    """Any callable mapping a frequency to a rate

    Plain functions and lambdas satisfy this protocol as well as
    BaseSpectralDensity instances.
    """

    def __call__(self, w: float) -> float:
        ...


@runtime_checkable
class ThermalBath(Protocol):
    """A reservoir that can be turned into rate-matrix blocks"""

    @property
    def role(self) -> str:
        """Reservoir role ('cold', 'hot' or 'work')"""
        ...

    @property
    def coupling(self) -> str:
        """Coupling operator kind ('jx' or 'jx2_over_n')"""
        ...

    @property
    def beta(self) -> float:
        """Inverse temperature"""
        ...

    @property
    def density(self) -> BaseSpectralDensity:
        """Spectral density Gamma(w)"""
        ...
