"""Transient relaxation under a rate matrix

Covers propagation with the dense matrix exponential, relative-entropy
thermalization times of the superradiant cascade and zero-temperature
waiting times.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg
from scipy.special import logsumexp

from .collective_spin import build_sector, check_odd_n
from .core.protocols import SpectralFunction
from .errors import DomainError, NumericalError, ThermalizationTimeout
from .liouvillian import RateMatrix, build_rate_matrix
from .reservoir import Bath

logger = logging.getLogger(__name__)

PROB_ATOL = 1e-12
NORM_TOL = 1e-10
T_MAX = 1e6
BISECT_RTOL = 1e-6


@dataclass(frozen=True, eq=False)
class TrajectoryResult:
    """Populations and relative entropy on a time grid

    Attributes:
        times: Time grid
        populations: Array of shape (len(times), dim)
        relative_entropy: S(rho(t) || target) per time
        t_th: First time the entropy falls below the threshold, if computed
    """

    times: np.ndarray = field(repr=False)
    populations: np.ndarray = field(repr=False)
    relative_entropy: np.ndarray = field(repr=False)
    t_th: Optional[float] = None


def _check_probability(p: np.ndarray, name: str = "rho0") -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise DomainError(f"{name} must be a vector, got shape {p.shape}")
    if np.any(p < -PROB_ATOL) or abs(p.sum() - 1) > NORM_TOL:
        raise DomainError(f"{name} is not a probability vector (sum={p.sum()}, min={p.min()})")
    return p


def propagate(R: RateMatrix, rho0: np.ndarray, t: float) -> np.ndarray:
    """rho(t) = exp(R t) rho0 by scaling-and-squaring

    Raises:
        DomainError: Invalid initial state or negative time
        NumericalError: Result is not a probability vector
    """
    rho0 = _check_probability(rho0)
    if rho0.shape[0] != R.dim:
        raise DomainError(f"rho0 has length {rho0.shape[0]}, expected {R.dim}")
    if not t >= 0:
        raise DomainError(f"t must be non-negative, got {t}")
    if t == 0:
        return rho0.copy()
    rho = linalg.expm(R.total * t) @ rho0
    if not np.all(np.isfinite(rho)) or np.any(rho < -1e-9) or abs(rho.sum() - 1) > 1e-9:
        raise NumericalError(
            "Matrix exponential lost probability conservation",
            {"t": t, "sum": float(np.sum(rho)), "min": float(np.min(rho)), "norm": R.norm},
        )
    return rho


def relative_entropy(p: np.ndarray, q: np.ndarray) -> float:
    """Kullback-Leibler divergence sum p (ln p - ln q), with 0 ln 0 = 0

    Raises:
        DomainError: q vanishes where p does not
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise DomainError(f"Shapes differ: {p.shape} vs {q.shape}")
    support = p > 0
    if np.any(q[support] <= 0):
        raise DomainError("q must be positive wherever p is positive")
    return float(np.sum(p[support] * (np.log(p[support]) - np.log(q[support]))))


def relative_entropy_to_log(p: np.ndarray, log_q: np.ndarray) -> float:
    """Relative entropy against a target given by its log-populations

    Round-off negatives in p are dropped. Avoids underflow of strongly
    suppressed thermal populations.
    """
    p = np.asarray(p, dtype=float)
    support = p > 0
    return float(np.sum(p[support] * (np.log(p[support]) - log_q[support])))


def gibbs_log_populations(energies: np.ndarray, beta: float) -> np.ndarray:
    """ln of the thermal populations exp(-beta E) / Z"""
    x = -beta * np.asarray(energies, dtype=float)
    return x - logsumexp(x)


def gibbs_state(energies: np.ndarray, beta: float) -> np.ndarray:
    return np.exp(gibbs_log_populations(energies, beta))


def trajectory(
    R: RateMatrix,
    rho0: np.ndarray,
    times: Sequence[float],
    log_target: Optional[np.ndarray] = None,
) -> TrajectoryResult:
    """Populations and relative entropy to a target along a time grid

    The target defaults to the steady state of R.
    """
    times = np.asarray(times, dtype=float)
    if log_target is None:
        from .fcs import steady_state

        with np.errstate(divide="ignore"):
            log_target = np.log(steady_state(R))
    pops = np.array([propagate(R, rho0, t) for t in times])
    entropy = np.array([relative_entropy_to_log(p, log_target) for p in pops])
    return TrajectoryResult(times=times, populations=pops, relative_entropy=entropy)


def first_passage_time(
    R: RateMatrix,
    rho0: np.ndarray,
    log_target: np.ndarray,
    threshold: float,
    t_max: float = T_MAX,
    rtol: float = BISECT_RTOL,
) -> float:
    """First time with S(rho(t) || target) <= threshold

    Brackets the crossing on a doubling time grid, then bisects to rtol.

    Raises:
        ThermalizationTimeout: Not reached by t_max
    """
    if not threshold > 0:
        raise DomainError(f"threshold must be positive, got {threshold}")
    entropy = lambda t: relative_entropy_to_log(propagate(R, rho0, t), log_target)  # noqa: E731
    if entropy(0.0) <= threshold:
        return 0.0

    lo, hi = 0.0, min(1.0 / max(R.norm, np.finfo(float).tiny), t_max)
    while entropy(hi) > threshold:
        lo, hi = hi, 2 * hi
        if hi > t_max:
            final = entropy(t_max)
            if final <= threshold:
                hi = t_max
                break
            raise ThermalizationTimeout(
                "Relative entropy did not reach threshold",
                {"t_max": t_max, "final_entropy": final, "threshold": threshold},
            )
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if entropy(mid) <= threshold:
            hi = mid
        else:
            lo = mid
    return hi


def thermalization_time(
    N: int,
    omega: float,
    bath: Bath,
    beta_i: float,
    threshold: float = 1e-6,
    t_max: float = T_MAX,
) -> float:
    """Time for a thermal state at beta_i to relax to the bath temperature

    Args:
        N: Odd number of two-level systems
        omega: Energy scale
        bath: Single reservoir coupled through Jx (an Ohmic density in the
            superradiance studies); its beta is the final temperature
        beta_i: Initial inverse temperature
        threshold: Relative-entropy threshold

    Returns:
        First time t with S(rho(t) || rho_beta_f) <= threshold
    """
    sector = build_sector(N, omega)
    R = build_rate_matrix(sector, [bath])
    rho0 = gibbs_state(sector.energies, beta_i)
    log_target = gibbs_log_populations(sector.energies, bath.beta)
    t_th = first_passage_time(R, rho0, log_target, threshold, t_max)
    logger.debug("N=%d t_th=%.6g", N, t_th)
    return t_th


def cascade_rates(
    N: int, density: SpectralFunction, a0: float, omega: float = 1.0
) -> List[Tuple[float, float]]:
    """Downward rates a -> a-1 of the zero-temperature cascade from a0

    Returns:
        List of (a, rate) for a = a0, a0 - 1, ..., 3/2

    Raises:
        DomainError: a0 outside [3/2, N/2] or not half-integer
    """
    check_odd_n(N, minimum=3)
    j = N / 2
    k = round(a0 - 0.5)
    if abs(k + 0.5 - a0) > 1e-9 or a0 < 1.5 or a0 > j:
        raise DomainError(f"a0 must be a half-integer in [3/2, {j}], got {a0}")
    jj = j * (j + 1)
    out = []
    for step in range(k, 0, -1):
        a = step + 0.5
        rate = density((2 * a - 1) * omega) / 4 * (jj - a * (a - 1))
        out.append((a, float(rate)))
    return out


def waiting_time_mean(N: int, density: SpectralFunction, a0: float, omega: float = 1.0) -> float:
    """Mean time to cascade from a0 down to the ground state at zero temperature

    Examples:
        >>> waiting_time_mean(3, lambda w: 1.0, 1.5)
        1.3333333333333333
    """
    return float(sum(1.0 / rate for _, rate in cascade_rates(N, density, a0, omega)))


def waiting_time_density(rate: float, tau: np.ndarray) -> np.ndarray:
    """Exponential waiting-time density rate * exp(-rate tau) for tau >= 0"""
    if not rate > 0:
        raise DomainError(f"rate must be positive, got {rate}")
    tau = np.asarray(tau, dtype=float)
    return np.where(tau >= 0, rate * np.exp(-rate * np.clip(tau, 0, None)), 0.0)


def loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of log y against log x"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2 or np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("loglog_slope needs at least two positive points")
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])
