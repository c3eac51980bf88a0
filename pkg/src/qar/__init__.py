"""Superradiant quantum absorption refrigerator simulator

Builds the even-parity collective-spin sector of N interacting two-level
systems, assembles Pauli rate matrices driven by peaked thermal reservoirs
and evaluates steady-state energy currents, their noise and thermodynamic
performance bounds.

Quick Start:
    >>> from src.qar import build_sector, build_rate_matrix, ModelConfig, full_counting
    >>> config = ModelConfig()  # reference parameters, N=31
    >>> R = build_rate_matrix(build_sector(config.N), config.reservoirs())
    >>> result = full_counting(R)
    >>> result.currents["cold"] > 0
    True
"""

# Core abstractions
from .core.spectral_density import BaseSpectralDensity

# Model construction
from .collective_spin import SpinSector, build_sector, ladder_coefficient
from .densities import DensityFactory, LorentzDrudeDensity, OhmicDensity, PeakedDensity, RegularizedDensity
from .reservoir import Bath, ReservoirSpec, bose, gamma_rate, spectral_density
from .rcmap import RcMapResult, rc_map_closed_form, rc_map_numeric
from .liouvillian import CountingMatrices, RateMatrix, build_rate_matrix, counting_moment_matrices

# Solvers and diagnostics
from .fcs import (
    FcsResult,
    cgf_dominant_eigenvalue,
    energy_current,
    energy_noise,
    full_counting,
    steady_state,
)
from .thermo import ThermoReport, cop_report, entropy_production, noise_to_signal, tur_ratio
from .reduced import (
    ReducedModelParams,
    analytic_current,
    analytic_noise,
    effective_rates,
    laser_rate_matrix,
    reduced_rate_matrix,
    two_level_current,
)
from .dynamics import (
    TrajectoryResult,
    propagate,
    relative_entropy,
    thermalization_time,
    waiting_time_mean,
)

# Configuration and errors
from .config import ModelConfig
from .errors import (
    ConfigError,
    ConsistencyError,
    DegeneracyError,
    DomainError,
    NumericalError,
    OracleError,
    QarError,
    QuadratureError,
    ThermalizationTimeout,
)

__version__ = "1.0.0"

__all__ = [
    "BaseSpectralDensity",
    "SpinSector",
    "build_sector",
    "ladder_coefficient",
    "DensityFactory",
    "LorentzDrudeDensity",
    "OhmicDensity",
    "PeakedDensity",
    "RegularizedDensity",
    "Bath",
    "ReservoirSpec",
    "bose",
    "gamma_rate",
    "spectral_density",
    "RcMapResult",
    "rc_map_closed_form",
    "rc_map_numeric",
    "CountingMatrices",
    "RateMatrix",
    "build_rate_matrix",
    "counting_moment_matrices",
    "FcsResult",
    "cgf_dominant_eigenvalue",
    "energy_current",
    "energy_noise",
    "full_counting",
    "steady_state",
    "ThermoReport",
    "cop_report",
    "entropy_production",
    "noise_to_signal",
    "tur_ratio",
    "ReducedModelParams",
    "analytic_current",
    "analytic_noise",
    "effective_rates",
    "laser_rate_matrix",
    "reduced_rate_matrix",
    "two_level_current",
    "TrajectoryResult",
    "propagate",
    "relative_entropy",
    "thermalization_time",
    "waiting_time_mean",
    "ModelConfig",
    "ConfigError",
    "ConsistencyError",
    "DegeneracyError",
    "DomainError",
    "NumericalError",
    "OracleError",
    "QarError",
    "QuadratureError",
    "ThermalizationTimeout",
]
