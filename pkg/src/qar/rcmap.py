"""Reaction-coordinate mapping of a regularized peaked spectral density

A peaked density is represented exactly by a single harmonic mode (the
reaction coordinate) of energy Omega_rc coupled with strength lambda_rc to
the system and damped by a residual Lorentz-Drude bath.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from .core.protocols import SpectralFunction
from .densities.lorentz_drude import LorentzDrudeDensity
from .densities.peaked import PeakedDensity
from .densities.regularized import RegularizedDensity
from .errors import DomainError, QuadratureError

logger = logging.getLogger(__name__)

QUAD_TOL = 1e-10


@dataclass(frozen=True)
class RcMapResult:
    """Reaction-coordinate parameters from the closed-form mapping

    Attributes:
        omega_rc: Reaction-coordinate energy
        coupling_rc: System-mode coupling strength lambda_rc
        residual_amplitude: Amplitude A of the residual density A w/(w^2+width^2)
        residual_width: Width of the residual density
        cutoff: Regularization cutoff
    """

    omega_rc: float
    coupling_rc: float
    residual_amplitude: float
    residual_width: float
    cutoff: float
    gbar: float
    eps: float
    delta: float

    @property
    def omega_rc_sq(self) -> float:
        return self.omega_rc**2

    @property
    def coupling_rc_sq(self) -> float:
        return self.coupling_rc**2

    def residual_density(self) -> LorentzDrudeDensity:
        return LorentzDrudeDensity(amplitude=self.residual_amplitude, width=self.residual_width)

    def regularized_density(self) -> RegularizedDensity:
        base = PeakedDensity(gbar=self.gbar, eps=self.eps, delta=self.delta)
        return RegularizedDensity(base=base, cutoff=self.cutoff)


def rc_map_closed_form(gbar: float, eps: float, delta: float, cutoff: float) -> RcMapResult:
    """Closed-form reaction-coordinate mapping of the regularized peaked density

    Args:
        gbar: Peak height
        eps: Peak position
        delta: Peak width
        cutoff: Regularization cutoff Delta

    Returns:
        RcMapResult with Omega_rc^2 = eps^2 + delta^2 + 2 Delta delta

    Raises:
        DomainError: Non-positive parameter

    Examples:
        >>> rc_map_closed_form(1.0, 2.0, 0.1, 10.0).omega_rc
        2.45153013...
    """
    for name, value in (("gbar", gbar), ("eps", eps), ("delta", delta), ("cutoff", cutoff)):
        if not (np.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be positive and finite, got {value}")

    omega_sq = eps**2 + delta**2 + 2 * cutoff * delta
    omega_rc = math.sqrt(omega_sq)
    shifted = eps**2 + (cutoff + delta) ** 2
    coupling_sq = gbar * math.pi * delta * eps * cutoff**2 / shifted / (2 * math.pi * omega_rc)
    amplitude = 2 * (delta / omega_rc) * shifted
    width = cutoff + 2 * delta
    return RcMapResult(
        omega_rc=omega_rc,
        coupling_rc=math.sqrt(coupling_sq),
        residual_amplitude=amplitude,
        residual_width=width,
        cutoff=float(cutoff),
        gbar=float(gbar),
        eps=float(eps),
        delta=float(delta),
    )


def _tail_diverges(integrand: Callable[[float], float], scale: float) -> Dict[str, float]:
    """Sample x*f(x) far out; an integrable tail must decay faster than 1/x"""
    x1, x2 = 1e4 * scale, 1e6 * scale
    g1 = abs(x1 * integrand(x1))
    g2 = abs(x2 * integrand(x2))
    return {"tail_near": g1, "tail_far": g2, "diverges": float(g1 > 0 and g2 >= 0.1 * g1)}


def _moment(
    density: Callable[[float], float],
    power: int,
    upper: float,
    breakpoints: Sequence[float],
    epsabs: float,
    epsrel: float,
    limit: int,
) -> Tuple[float, float]:
    """Integral of w^power * Gamma(w) over [0, upper]"""
    integrand = lambda w: w**power * density(w)  # noqa: E731
    pts = sorted(p for p in breakpoints if 0 < p < upper)
    if math.isinf(upper):
        scale = max(pts) if pts else 1.0
        tail = _tail_diverges(integrand, scale)
        if tail["diverges"]:
            raise QuadratureError(
                f"Moment of order {power} does not converge (integrand tail not decaying)",
                tail,
            )
        split = 10.0 * scale
    else:
        split = upper

    head_pts = [p for p in pts if p < split] or None
    value, error, message = _quad(integrand, 0.0, split, head_pts, epsabs, epsrel, limit)
    if math.isinf(upper) and message is None:
        v, e, message = _quad(integrand, split, np.inf, None, epsabs, epsrel, limit)
        value, error = value + v, error + e

    if message is not None or not np.isfinite(value) or error > max(epsabs, epsrel * abs(value)) * 100:
        raise QuadratureError(
            f"Quadrature of moment {power} did not converge",
            {"value": value, "error": error, "message": message},
        )
    return value, error


def _quad(integrand, lo, hi, points, epsabs, epsrel, limit) -> Tuple[float, float, Optional[str]]:
    """Run quad; the third item is the failure message or None on success"""
    # full_output adds a message element only when quad reports ier > 0
    result = integrate.quad(
        integrand, lo, hi, points=points, epsabs=epsabs, epsrel=epsrel,
        limit=limit, full_output=1,
    )
    message = str(result[3]) if len(result) > 3 else None
    return float(result[0]), float(result[1]), message


def rc_map_numeric(
    density: SpectralFunction,
    *,
    upper: float = np.inf,
    breakpoints: Optional[Sequence[float]] = None,
    epsabs: float = QUAD_TOL,
    epsrel: float = QUAD_TOL,
    limit: int = 500,
) -> Tuple[float, float]:
    """Reaction-coordinate parameters by adaptive quadrature

    Computes Omega_rc^2 = int w^3 Gamma / int w Gamma and
    lambda_rc^2 = int w Gamma / (2 pi Omega_rc) over [0, upper].

    Args:
        density: Spectral function Gamma(w)
        upper: Upper integration limit (inf maps to a finite interval)
        breakpoints: Frequencies of sharp features; taken from the density
            when it exposes them
        epsabs: Absolute tolerance
        epsrel: Relative tolerance
        limit: Maximum number of subintervals

    Returns:
        Tuple (Omega_rc^2, lambda_rc^2)

    Raises:
        QuadratureError: A moment integral does not converge
    """
    if breakpoints is None:
        breakpoints = tuple(getattr(density, "breakpoints", ()))
    first, err1 = _moment(density, 1, upper, breakpoints, epsabs, epsrel, limit)
    third, err3 = _moment(density, 3, upper, breakpoints, epsabs, epsrel, limit)
    if not first > 0:
        raise QuadratureError("First moment of the density is not positive", {"value": first})
    omega_sq = third / first
    coupling_sq = first / (2 * math.pi * math.sqrt(omega_sq))
    logger.debug(
        "RC quadrature: m1=%.6g (+-%.1e) m3=%.6g (+-%.1e)", first, err1, third, err3
    )
    return omega_sq, coupling_sq
