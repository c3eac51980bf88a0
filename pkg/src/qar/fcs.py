"""Steady states and full counting statistics of Pauli rate equations

Production quantities are real: the current is 1^T W1 rho and the noise is
1^T W2 rho + 2 * 1^T W1 sigma with the auxiliary vector sigma solving
R sigma = I rho - W1 rho, 1^T sigma = 0. The complex tilted generator R(chi)
is only built by the dominant-eigenvalue oracle.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import linalg

from .errors import DegeneracyError, NumericalError, OracleError
from .liouvillian import RateMatrix, counting_moment_matrices
from .types import SolverDiagnostics

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10
NEGATIVE_TOL = 1e-10
NULLSPACE_TOL = 1e-8
ORACLE_STEP = 1e-4
REFINE_STEPS = 2


@dataclass(frozen=True, eq=False)
class FcsResult:
    """Steady-state counting statistics of one rate matrix

    Attributes:
        populations: Stationary population vector
        currents: Energy current per reservoir role, positive into the system
        counted: Role whose noise was computed
        noise: Long-time energy noise of the counted reservoir
        diagnostics: Residual norms and nullspace dimension of the solve
    """

    populations: np.ndarray = field(repr=False)
    currents: Dict[str, float]
    counted: str
    noise: float
    diagnostics: SolverDiagnostics

    @property
    def current(self) -> float:
        """Current of the counted reservoir"""
        return self.currents[self.counted]


def _column_scale(R: RateMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """R D^-1 with D the escape rates; balances decades-apart rates"""
    total = R.total
    escape = np.abs(np.diag(total)).copy()
    escape[escape == 0] = 1.0
    return total / escape[None, :], escape


def _check_nullspace(scaled: np.ndarray) -> int:
    sv = linalg.svdvals(scaled)
    if sv[0] == 0:
        raise DegeneracyError("Rate matrix vanishes identically", {"nullspace_dim": scaled.shape[0]})
    null_dim = int(np.sum(sv / sv[0] < NULLSPACE_TOL))
    if null_dim != 1:
        raise DegeneracyError(
            "Stationary state is not unique",
            {"nullspace_dim": null_dim, "singular_values": sv[-3:].tolist()},
        )
    return null_dim


def _augmented_lstsq(scaled: np.ndarray, rhs: np.ndarray, constraint: float) -> np.ndarray:
    """Least-squares solution of [M; 1^T] z = [rhs; constraint]"""
    dim = scaled.shape[0]
    aug = np.vstack([scaled, np.ones((1, dim))])
    b = np.concatenate([rhs, [constraint]])
    z, *_ = linalg.lstsq(aug, b, lapack_driver="gelsy")
    return z


def _state_reduction(R: RateMatrix) -> np.ndarray:
    """Stationary vector by Grassmann-Taksar-Heyman elimination

    States are censored from the top of the energy ladder down. Only sums
    and products of non-negative rates occur, so every population keeps a
    small relative error however tiny it is.

    Raises:
        DegeneracyError: A censored state has no way down the ladder
    """
    # A[i, j] is the rate i -> j
    A = np.array(R.total.T, dtype=float)
    np.fill_diagonal(A, 0.0)
    if np.any(A < 0):
        raise NumericalError("Negative off-diagonal rate", {"min_rate": float(A.min())})
    dim = A.shape[0]
    for k in range(dim - 1, 0, -1):
        out = A[k, :k].sum()
        if not out > 0:
            raise DegeneracyError(
                "State cannot reach the lower ladder", {"state": k, "nullspace_dim": 1}
            )
        A[:k, k] /= out
        A[:k, :k] += np.outer(A[:k, k], A[k, :k])
    rho = np.zeros(dim)
    rho[0] = 1.0
    for j in range(1, dim):
        rho[j] = rho[:j] @ A[:j, j]
    return rho / rho.sum()


def solve_steady_state(R: RateMatrix) -> Tuple[np.ndarray, SolverDiagnostics]:
    """Stationary populations with solver diagnostics

    Uniqueness is checked on the column-scaled generator; the populations
    themselves come from state reduction, which stays accurate entry by
    entry down to populations far below machine epsilon.

    Raises:
        DegeneracyError: Nullspace of R is not one-dimensional
        NumericalError: Negative population or residual too large
    """
    scaled, _ = _column_scale(R)
    null_dim = _check_nullspace(scaled)
    rho = _state_reduction(R)
    min_pop = float(rho.min())
    if min_pop < -NEGATIVE_TOL:
        raise NumericalError("Negative stationary population", {"min_population": min_pop})

    residual = float(np.linalg.norm(R.total @ rho, ord=np.inf))
    if residual > RESIDUAL_TOL * max(R.norm, np.finfo(float).tiny):
        raise NumericalError(
            "Steady-state residual above tolerance", {"residual": residual, "norm": R.norm}
        )
    logger.debug("Steady state: residual=%.2e min_pop=%.2e", residual, min_pop)
    return rho, SolverDiagnostics(residual=residual, nullspace_dim=null_dim, min_population=min_pop)


def steady_state(R: RateMatrix) -> np.ndarray:
    """Stationary population vector of R, normalized to sum(rho) = 1"""
    rho, _ = solve_steady_state(R)
    return rho


def energy_current(R: RateMatrix, role: str, populations: Optional[np.ndarray] = None) -> float:
    """Stationary energy current 1^T W1 rho of one reservoir, positive into the system"""
    rho = steady_state(R) if populations is None else populations
    cm = counting_moment_matrices(R, role)
    return float(np.sum(cm.w1 @ rho))


def auxiliary_vector(R: RateMatrix, role: str, populations: Optional[np.ndarray] = None) -> np.ndarray:
    """Real auxiliary vector sigma with R sigma = I rho - W1 rho and 1^T sigma = 0

    Raises:
        DegeneracyError: Singular augmented system
    """
    rho = steady_state(R) if populations is None else populations
    cm = counting_moment_matrices(R, role)
    w1_rho = cm.w1 @ rho
    rhs = np.sum(w1_rho) * rho - w1_rho

    scaled, escape = _column_scale(R)
    _check_nullspace(scaled)
    sigma = _augmented_lstsq(scaled, rhs, 0.0) / escape
    # refinement against the unscaled generator; the constraint row only pins the null direction
    for _ in range(REFINE_STEPS):
        correction = rhs - R.total @ sigma
        sigma = sigma + _augmented_lstsq(scaled, correction, 0.0) / escape
    sigma -= sigma.sum() * rho

    residual = float(np.linalg.norm(R.total @ sigma - rhs, ord=np.inf))
    scale = max(float(np.abs(rhs).max()), R.norm * float(np.abs(sigma).max()), np.finfo(float).tiny)
    if residual > 1e-8 * scale:
        raise DegeneracyError(
            "Auxiliary system could not be solved", {"residual": residual, "scale": scale}
        )
    return sigma


def energy_noise(R: RateMatrix, role: str, populations: Optional[np.ndarray] = None) -> float:
    """Long-time energy noise of one reservoir

    S = 1^T W2 rho + 2 * 1^T W1 sigma, with sigma from auxiliary_vector.
    """
    rho = steady_state(R) if populations is None else populations
    cm = counting_moment_matrices(R, role)
    sigma = auxiliary_vector(R, role, rho)
    return float(np.sum(cm.w2 @ rho) + 2 * np.sum(cm.w1 @ sigma))


def full_counting(R: RateMatrix, counted: str = "cold") -> FcsResult:
    """Populations, all currents and the counted-reservoir noise in one pass"""
    rho, diagnostics = solve_steady_state(R)
    currents = {role: energy_current(R, role, rho) for role in R.roles}
    noise = energy_noise(R, counted, rho)
    return FcsResult(
        populations=rho, currents=currents, counted=counted, noise=noise, diagnostics=diagnostics
    )


def _expm1i(theta: np.ndarray) -> np.ndarray:
    """exp(i theta) - 1 without cancellation for small theta"""
    return 2j * np.sin(theta / 2) * np.exp(0.5j * theta)


def tilted_generator(R: RateMatrix, role: str, chi: float) -> np.ndarray:
    """Complex R(chi): counted block dressed with exp(i chi w_ab)"""
    block = R.block(role)
    return R.total + block * _expm1i(chi * R.frequencies)


def cgf_dominant_eigenvalue(R: RateMatrix, role: str, chi: float) -> complex:
    """Eigenvalue of R(chi) connected to 0 at chi = 0

    The eigenvalue is re-evaluated from its right eigenvector x through the
    exact column identity lambda = c^T x / 1^T x, c_b = sum_a R_ab (e^{i chi w_ab} - 1),
    which keeps finite differences in chi accurate.

    Raises:
        OracleError: Two eigenvalues too close to 0 to tell apart
    """
    tilted = tilted_generator(R, role, chi)
    vals, vecs = linalg.eig(tilted)
    order = np.argsort(np.abs(vals))
    tol = 1e-10 * max(R.norm, np.finfo(float).tiny)
    if len(vals) > 1 and abs(vals[order[1]]) <= tol:
        raise OracleError(
            "Ambiguous dominant eigenvalue branch",
            {"lambda0": complex(vals[order[0]]), "lambda1": complex(vals[order[1]])},
        )
    x = vecs[:, order[0]]
    c = np.sum(R.block(role) * _expm1i(chi * R.frequencies), axis=0)
    return complex(np.dot(c, x) / np.sum(x))


def cumulants_from_cgf(R: RateMatrix, role: str, step: float = ORACLE_STEP) -> Tuple[float, float]:
    """Current and noise from central differences of the dominant eigenvalue

    Returns:
        Tuple (current, noise)
    """
    lam_p = cgf_dominant_eigenvalue(R, role, step)
    lam_m = cgf_dominant_eigenvalue(R, role, -step)
    lam_0 = cgf_dominant_eigenvalue(R, role, 0.0)
    current = ((lam_p - lam_m) / (2j * step)).real
    noise = -((lam_p + lam_m - 2 * lam_0) / step**2).real
    return float(current), float(noise)
