"""Pauli rate matrices and real counting-moment matrices"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from .collective_spin import SpinSector
from .core.protocols import ThermalBath
from .errors import DomainError, NumericalError
from .reservoir import gamma_rate

logger = logging.getLogger(__name__)

_GAP_TOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RateMatrix:
    """Total Pauli rate matrix with its per-reservoir decomposition

    Entry [a, b] is the rate of the jump b -> a. Every block has zero
    diagonal; the diagonal of `total` closes the columns.

    Attributes:
        energies: Level energies E_a
        blocks: Off-diagonal rates per reservoir role
        betas: Inverse temperature per reservoir role (0 marks an
            infinite-temperature drive)
    """

    energies: np.ndarray = field(repr=False)
    blocks: Mapping[str, np.ndarray] = field(repr=False)
    betas: Mapping[str, float]

    def __post_init__(self):
        energies = _frozen(self.energies)
        object.__setattr__(self, "energies", energies)
        dim = energies.shape[0]
        blocks = {}
        for role, block in self.blocks.items():
            block = np.array(block, dtype=float)
            if block.shape != (dim, dim):
                raise DomainError(f"Block '{role}' has shape {block.shape}, expected {(dim, dim)}")
            np.fill_diagonal(block, 0.0)
            if np.any(block < 0):
                raise DomainError(f"Block '{role}' has negative rates")
            blocks[role] = _frozen(block)
        if set(blocks) != set(self.betas):
            raise DomainError("blocks and betas must have the same roles")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "betas", dict(self.betas))

        total = sum(blocks.values(), np.zeros((dim, dim)))
        total[np.diag_indices(dim)] = -total.sum(axis=0)
        object.__setattr__(self, "_total", _frozen(total))

    @property
    def dim(self) -> int:
        return self.energies.shape[0]

    @property
    def roles(self) -> Tuple[str, ...]:
        return tuple(self.blocks)

    @property
    def total(self) -> np.ndarray:
        """R(0) with columns summing to zero"""
        return self._total

    @property
    def frequencies(self) -> np.ndarray:
        """w_ab = E_a - E_b"""
        return self.energies[:, None] - self.energies[None, :]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self._total, ord=np.inf))

    def block(self, role: str) -> np.ndarray:
        if role not in self.blocks:
            raise DomainError(f"Reservoir '{role}' not present. Available: {list(self.blocks)}")
        return self.blocks[role]

    def without(self, role: str) -> "RateMatrix":
        """Rate matrix with one reservoir removed"""
        self.block(role)
        return RateMatrix(
            energies=self.energies,
            blocks={r: b for r, b in self.blocks.items() if r != role},
            betas={r: v for r, v in self.betas.items() if r != role},
        )

    def replace(self, role: str, block: np.ndarray, beta: float) -> "RateMatrix":
        """Rate matrix with one reservoir block added or replaced"""
        blocks = dict(self.blocks)
        betas = dict(self.betas)
        blocks[role] = block
        betas[role] = beta
        return RateMatrix(energies=self.energies, blocks=blocks, betas=betas)

    def scaled(self, factor: float) -> "RateMatrix":
        """All rates multiplied by a positive factor"""
        if not factor > 0:
            raise DomainError(f"factor must be positive, got {factor}")
        return RateMatrix(
            energies=self.energies,
            blocks={r: b * factor for r, b in self.blocks.items()},
            betas=self.betas,
        )

    def invariant_report(self) -> Dict[str, float]:
        """Worst deviations from the rate-matrix invariants

        Returns:
            Dict with the column-sum defect relative to the column norm and the
            largest relative detailed-balance defect over finite-temperature
            reservoirs
        """
        total = self._total
        col_norm = np.maximum(np.abs(total).sum(axis=0), np.finfo(float).tiny)
        column = float(np.max(np.abs(total.sum(axis=0)) / col_norm))
        balance = 0.0
        w = self.frequencies
        for role, block in self.blocks.items():
            beta = self.betas[role]
            if beta == 0 or np.isinf(beta):
                continue
            both = (block > 0) & (block.T > 0)
            if not np.any(both):
                continue
            with np.errstate(over="ignore", divide="ignore"):
                ratio = block[both] / block.T[both]
                expected = np.exp(-beta * w[both])
            balance = max(balance, float(np.max(np.abs(ratio / expected - 1))))
        return {"column_sum": column, "detailed_balance": balance}


@dataclass(frozen=True, eq=False)
class CountingMatrices:
    """Real first and second energy-moment matrices of one reservoir

    w1[a, b] = (E_a - E_b) R^nu_ab and w2[a, b] = (E_a - E_b)^2 R^nu_ab.
    Energy entering the system counts positive.
    """

    role: str
    w1: np.ndarray = field(repr=False)
    w2: np.ndarray = field(repr=False)


def build_rate_matrix(sector: SpinSector, reservoirs: Iterable[ThermalBath]) -> RateMatrix:
    """Assemble R from sector matrix elements and reservoir kernels

    R^nu_ab = gamma_nu(E_b - E_a) |<v_a|A_nu|v_b>|^2 for a != b. Diagonal
    matrix elements of A carry zero frequency and generate no rate.

    Args:
        sector: Spin sector
        reservoirs: ReservoirSpec or Bath instances with distinct roles

    Returns:
        RateMatrix

    Raises:
        DomainError: Duplicate roles, an object that is not a reservoir or
            invalid reservoir parameters
    """
    w = sector.frequencies
    off = ~np.eye(sector.dim, dtype=bool)
    gaps = np.abs(w[off])
    if gaps.size and gaps.min() < 2 * sector.omega - _GAP_TOL:
        raise NumericalError(
            "Degenerate transition frequencies in sector", {"min_gap": float(gaps.min())}
        )

    blocks: Dict[str, np.ndarray] = {}
    betas: Dict[str, float] = {}
    for res in reservoirs:
        if not isinstance(res, ThermalBath):
            raise DomainError(f"Not a reservoir: {res!r}")
        if res.role in blocks:
            raise DomainError(f"Duplicate reservoir role: {res.role}")
        amp = sector.coupling(res.coupling)
        block = np.zeros((sector.dim, sector.dim))
        # jump b -> a absorbs E_b - E_a from the system into the reservoir
        block[off] = np.asarray(gamma_rate(res, -w[off])) * amp[off] ** 2
        blocks[res.role] = block
        betas[res.role] = float(res.beta)
        logger.debug("Reservoir %s: max rate %.3e", res.role, block.max(initial=0.0))

    return RateMatrix(energies=sector.energies, blocks=blocks, betas=betas)


def counting_moment_matrices(R: RateMatrix, role: str) -> CountingMatrices:
    """Real counting matrices W1 = -i R'(0), W2 = -R''(0) for one reservoir

    Raises:
        DomainError: Role not present in R
    """
    block = R.block(role)
    w = R.frequencies
    w1 = w * block
    w2 = w**2 * block
    return CountingMatrices(role=role, w1=_frozen(w1), w2=_frozen(w2))
