"""Analytic reference models of the refrigerator

The reduced model keeps only the three lowest sector levels a = 1/2, 3/2, 5/2,
each transition driven by exactly one reservoir at resonance: cold at 2 Omega,
work at 4 Omega and hot at 6 Omega. Effective bare rates follow the ladder
convention j(j+1) with j = N/2.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from .collective_spin import check_odd_n
from .errors import DomainError
from .liouvillian import RateMatrix
from .reservoir import bose

logger = logging.getLogger(__name__)

LEVELS = np.array([0.5, 1.5, 2.5])
# indices of the reduced levels
G, M, T = 0, 1, 2


@dataclass(frozen=True)
class ReducedModelParams:
    """Parameters of the three-level reduced refrigerator

    Attributes:
        omega: Energy scale Omega
        gamma_c: Effective cold rate on the 1/2 <-> 3/2 transition
        gamma_h: Effective hot rate on the 1/2 <-> 5/2 transition
        gamma_w: Effective work rate on the 3/2 <-> 5/2 transition
        n_c: Bose occupation of the cold reservoir at 2 Omega
        n_h: Bose occupation of the hot reservoir at 6 Omega
        n_w: Bose occupation of the work reservoir at 4 Omega
        gamma_laser: If set, a symmetric laser drive replaces the work reservoir
    """

    omega: float
    gamma_c: float
    gamma_h: float
    gamma_w: float
    n_c: float
    n_h: float
    n_w: float
    gamma_laser: Optional[float] = None

    def __post_init__(self):
        for name in ("gamma_c", "gamma_h", "gamma_w", "n_c", "n_h", "n_w"):
            value = getattr(self, name)
            if not value >= 0 or math.isinf(value):
                raise DomainError(f"{name} must be finite and non-negative, got {value}")
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if self.gamma_laser is not None and not self.gamma_laser >= 0:
            raise DomainError(f"gamma_laser must be non-negative, got {self.gamma_laser}")

    @classmethod
    def from_temperatures(
        cls,
        N: int,
        beta_c: float,
        beta_h: float,
        beta_w: float,
        gbar_c: float = 1.0,
        gbar_h: float = 1.0,
        gbar_w: float = 1.0,
        omega: float = 1.0,
    ) -> "ReducedModelParams":
        """Reduced model of N two-level systems at resonance"""
        gamma_c, gamma_h, gamma_w = effective_rates(N, gbar_c, gbar_h, gbar_w)
        return cls(
            omega=omega,
            gamma_c=gamma_c,
            gamma_h=gamma_h,
            gamma_w=gamma_w,
            n_c=bose(beta_c, 2 * omega),
            n_h=bose(beta_h, 6 * omega),
            n_w=bose(beta_w, 4 * omega),
        )

    def with_laser(self, gamma_laser: float) -> "ReducedModelParams":
        return replace(self, gamma_laser=gamma_laser)


def effective_rates(N: int, gbar_c: float, gbar_h: float, gbar_w: float) -> Tuple[float, float, float]:
    """Effective bare rates of the reduced model

    Each rate is the squared sector matrix element of the transition times the
    peak height of its reservoir.

    Returns:
        Tuple (gamma_c, gamma_h, gamma_w)

    Raises:
        DomainError: N < 5 or N even

    Examples:
        >>> effective_rates(31, 1, 1, 1)
        (63.75, 4.179240374609781, 63.0)
    """
    check_odd_n(N, minimum=5)
    jj = (N / 2) * (N / 2 + 1)
    gamma_c = gbar_c / 4 * (jj - 3 / 4)
    gamma_w = gbar_w / 4 * (jj - 15 / 4)
    gamma_h = gbar_h / (16 * N**2) * (jj - 3 / 4) * (jj - 15 / 4)
    return gamma_c, gamma_h, gamma_w


def _beta_from_occupation(n: float, gap: float) -> float:
    if n == 0:
        return math.inf
    return math.log1p(1 / n) / gap


def _thermal_pair(rate: float, n: float, low: int, high: int) -> np.ndarray:
    block = np.zeros((3, 3))
    block[high, low] = rate * n
    block[low, high] = rate * (1 + n)
    return block


def laser_rate_matrix(gamma_laser: float) -> np.ndarray:
    """Symmetric work block driving 3/2 <-> 5/2 with equal up and down rates

    Raises:
        DomainError: Negative rate
    """
    if not gamma_laser >= 0:
        raise DomainError(f"gamma_laser must be non-negative, got {gamma_laser}")
    block = np.zeros((3, 3))
    block[T, M] = block[M, T] = gamma_laser
    return block


def reduced_rate_matrix(p: ReducedModelParams) -> RateMatrix:
    """Three-level rate matrix R = R_c + R_h + R_w

    The work block is replaced by the laser block when p.gamma_laser is set;
    it is then recorded with beta = 0.
    """
    w = p.omega
    blocks = {
        "cold": _thermal_pair(p.gamma_c, p.n_c, G, M),
        "hot": _thermal_pair(p.gamma_h, p.n_h, G, T),
    }
    betas = {
        "cold": _beta_from_occupation(p.n_c, 2 * w),
        "hot": _beta_from_occupation(p.n_h, 6 * w),
    }
    if p.gamma_laser is None:
        blocks["work"] = _thermal_pair(p.gamma_w, p.n_w, M, T)
        betas["work"] = _beta_from_occupation(p.n_w, 4 * w)
    else:
        blocks["work"] = laser_rate_matrix(p.gamma_laser)
        betas["work"] = 0.0
    return RateMatrix(energies=w * LEVELS**2, blocks=blocks, betas=betas)


def coarse_grained_rate_matrix(p: ReducedModelParams) -> RateMatrix:
    """Two-state limit n_w -> inf with the excited pair merged into one state

    Only the cold block carries physical frequencies; the hot block is kept
    for its rates.
    """
    w = p.omega
    cold = np.array([[0.0, p.gamma_c * (1 + p.n_c) / 2], [p.gamma_c * p.n_c, 0.0]])
    hot = np.array([[0.0, p.gamma_h * (1 + p.n_h) / 2], [p.gamma_h * p.n_h, 0.0]])
    return RateMatrix(
        energies=w * LEVELS[:2] ** 2,
        blocks={"cold": cold, "hot": hot},
        betas={
            "cold": _beta_from_occupation(p.n_c, 2 * w),
            "hot": _beta_from_occupation(p.n_h, 6 * w),
        },
    )


def _denominator(p: ReducedModelParams) -> float:
    return p.gamma_c * (1 + 3 * p.n_c) + p.gamma_h * (1 + 3 * p.n_h)


def analytic_current(p: ReducedModelParams) -> float:
    """Cold current of the reduced model for an infinitely hot work reservoir

    Positive (cooling) iff n_c > n_h, i.e. beta_h < beta_c < 3 beta_h.
    """
    den = _denominator(p)
    if den == 0:
        return 0.0
    return 2 * p.omega * p.gamma_c * p.gamma_h * (p.n_c - p.n_h) / den


def analytic_noise(p: ReducedModelParams) -> float:
    """Cold-current noise of the reduced model for an infinitely hot work reservoir"""
    gc, gh, nc, nh = p.gamma_c, p.gamma_h, p.n_c, p.n_h
    den = _denominator(p)
    if den == 0:
        return 0.0
    a = ((gc * (1 + 3 * nc)) ** 2 + (gh * (1 + 3 * nh)) ** 2) * (nc + nh + 2 * nc * nh)
    b = (
        nc * (1 + nc)
        + nh * (1 + nh)
        + 12 * nc * nh
        + 15 * nc * nh * (nc + nh)
        + 18 * nc**2 * nh**2
    )
    return 4 * p.omega**2 * gc * gh * (a + 2 * gc * gh * b) / den**3


def two_level_current(gamma_c: float, gamma_w: float, n_c: float, n_w: float, omega: float = 1.0) -> float:
    """Cold current through the lowest transition shared by two reservoirs

    Antisymmetric under exchanging the two reservoirs' occupations.

    Raises:
        DomainError: Negative rates
    """
    if gamma_c < 0 or gamma_w < 0:
        raise DomainError(f"rates must be non-negative, got {gamma_c}, {gamma_w}")
    den = gamma_c * (1 + 2 * n_c) + gamma_w * (1 + 2 * n_w)
    if den == 0:
        return 0.0
    return -2 * omega * gamma_c * gamma_w * (n_w - n_c) / den
