"""Thermodynamic diagnostics: entropy production, COP bounds and TUR"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict, Mapping

from .errors import ConsistencyError, DomainError

logger = logging.getLogger(__name__)

FIRST_LAW_RTOL = 1e-8
FIRST_LAW_ATOL = 1e-14


@dataclass(frozen=True)
class ThermoReport:
    """Refrigerator performance at one steady state

    Attributes:
        entropy_production: sigma_i = -sum beta_nu I_nu
        cop: Coefficient of performance I_c / I_w
        carnot: beta_h / (beta_c - beta_h), inf when beta_c == beta_h
        tur_bound: Carnot bound tightened by the cold-current precision
        tur_ratio: S sigma_i / I_c^2
        cooling: I_c > 0
        driven: I_w > 0
        ordered: beta_c >= beta_h >= beta_w
        carnot_defined: beta_c != beta_h
    """

    entropy_production: float
    cop: float
    carnot: float
    tur_bound: float
    tur_ratio: float
    cooling: bool
    driven: bool
    ordered: bool
    carnot_defined: bool

    @property
    def bounds_valid(self) -> bool:
        """Whether cop <= tur_bound <= carnot is guaranteed"""
        return self.cooling and self.driven and self.ordered

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def entropy_production(currents: Mapping[str, float], betas: Mapping[str, float]) -> float:
    """Stationary entropy production rate sigma_i = -sum_nu beta_nu I_nu

    A reservoir with beta == 0 (infinite temperature) contributes nothing.

    Raises:
        ConsistencyError: Currents violate the first law
        DomainError: Roles of currents and betas differ
    """
    if set(currents) != set(betas):
        raise DomainError(f"Roles differ: currents {sorted(currents)} vs betas {sorted(betas)}")
    total = sum(currents.values())
    largest = max((abs(v) for v in currents.values()), default=0.0)
    if abs(total) > FIRST_LAW_RTOL * largest + FIRST_LAW_ATOL:
        raise ConsistencyError(
            "Energy currents do not sum to zero", {"sum": total, "max_current": largest}
        )
    return -sum(betas[r] * currents[r] for r in currents if betas[r] != 0)


def tur_ratio(noise: float, sigma: float, current: float) -> float:
    """S sigma_i / I^2; infinite when the current vanishes"""
    if current == 0:
        return math.inf
    return noise * sigma / current**2


def noise_to_signal(noise: float, current: float, dt: float) -> float:
    """Relative width sqrt(S dt) / (I dt) of the energy exchanged in dt

    Raises:
        DomainError: Non-positive current or time, or negative noise
    """
    if not current > 0:
        raise DomainError(f"current must be positive, got {current}")
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if noise < 0:
        raise DomainError(f"noise must be non-negative, got {noise}")
    return math.sqrt(noise * dt) / (current * dt)


def cop_report(currents: Mapping[str, float], betas: Mapping[str, float], noise: float) -> ThermoReport:
    """Coefficient of performance with Carnot and TUR-tightened bounds

    Args:
        currents: Energy currents for 'cold', 'hot' and 'work'
        betas: Inverse temperatures for the same roles
        noise: Long-time noise of the cold current

    Returns:
        ThermoReport; bounds are meaningful only when report.bounds_valid
    """
    i_c, i_w = currents["cold"], currents["work"]
    b_c, b_h, b_w = betas["cold"], betas["hot"], betas["work"]

    sigma = entropy_production(currents, betas)
    cop = i_c / i_w if i_w != 0 else math.nan
    carnot_defined = b_c != b_h
    carnot = b_h / (b_c - b_h) if carnot_defined else math.inf
    # kappa_Ca / (1 + 2 I_c / (S (b_c - b_h))), rearranged to stay finite at b_c == b_h
    if noise > 0 and (b_c - b_h) + 2 * i_c / noise != 0:
        tur_bound = b_h / ((b_c - b_h) + 2 * i_c / noise)
    else:
        tur_bound = math.nan

    report = ThermoReport(
        entropy_production=sigma,
        cop=cop,
        carnot=carnot,
        tur_bound=tur_bound,
        tur_ratio=tur_ratio(noise, sigma, i_c),
        cooling=i_c > 0,
        driven=i_w > 0,
        ordered=b_c >= b_h >= b_w,
        carnot_defined=carnot_defined,
    )
    if not report.bounds_valid:
        logger.debug("Outside refrigerator regime: I_c=%.3e I_w=%.3e", i_c, i_w)
    return report
