"""Even-parity maximum-angular-momentum sector of H = Omega * Jz^2 for odd N

Energies and coupling-operator matrix elements are produced by projecting the
full Dicke-basis operators onto |v_a> = (|j,a> + |j,-a>)/sqrt(2) and are
cross-checked against the closed-form ladder expressions.
"""

import logging
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, NumericalError

logger = logging.getLogger(__name__)

Sign = Union[str, int]

_HALF_INTEGER_TOL = 1e-9
_CLOSED_FORM_TOL = 1e-12


def _sign_value(sign: Sign) -> int:
    if sign in ("+", 1, +1.0):
        return 1
    if sign in ("-", "−", -1, -1.0):
        return -1
    raise DomainError(f"Unknown ladder sign: {sign!r}. Use '+' or '-'")


def check_odd_n(N: int, minimum: int = 1) -> None:
    if isinstance(N, bool) or int(N) != N:
        raise DomainError(f"N must be an integer, got {N!r}")
    if N < minimum:
        raise DomainError(f"N must be >= {minimum}, got {N}")
    if N % 2 == 0:
        raise DomainError(f"Only odd N is supported, got N={N}")


def ladder_coefficient(N: int, a: float, sign: Sign) -> float:
    """Clebsch-Gordan ladder amplitude alpha_a^(+/-) for j = N/2

    Args:
        N: Odd number of two-level systems
        a: Half-integer magnetic label with |a| <= N/2
        sign: '+' for raising, '-' for lowering

    Returns:
        sqrt(j(j+1) - a(a +/- 1)), exactly 0 at the matching edge

    Raises:
        DomainError: If N is not odd or a is out of range

    Examples:
        >>> ladder_coefficient(3, 0.5, "+")
        1.7320508075688772
    """
    check_odd_n(N)
    s = _sign_value(sign)
    j = N / 2
    twice = 2 * a
    if abs(twice - round(twice)) > _HALF_INTEGER_TOL or round(twice) % 2 == 0:
        raise DomainError(f"Label a must be half-integer for odd N, got a={a}")
    if abs(a) > j + _HALF_INTEGER_TOL:
        raise DomainError(f"Label a={a} outside [-{j}, {j}]")
    if abs(a - s * j) < _HALF_INTEGER_TOL:
        return 0.0
    value = j * (j + 1) - a * (a + s)
    return float(np.sqrt(max(value, 0.0)))


def dicke_jx(N: int) -> np.ndarray:
    """Full (N+1)-dimensional Jx in the Dicke basis ordered m = -j ... j"""
    j = N / 2
    m = np.arange(-j, j)  # raising from m to m+1
    raise_amp = np.sqrt(j * (j + 1) - m * (m + 1))
    jp = np.diag(raise_amp, k=-1)
    return 0.5 * (jp + jp.T)


def _parity_projector(N: int) -> np.ndarray:
    """Columns |v_a> for a = 1/2 ... N/2 in the Dicke basis"""
    dim = (N + 1) // 2
    proj = np.zeros((N + 1, dim))
    for k in range(dim):
        a = k + 0.5
        up = int(round(a + N / 2))
        down = int(round(-a + N / 2))
        proj[up, k] = proj[down, k] = 1 / np.sqrt(2)
    return proj


def closed_form_couplings(N: int) -> tuple:
    """Off-diagonal Jx and Jx^2 in the even sector from ladder amplitudes

    Diagonal entries are left at zero; they carry no transition.

    Returns:
        Tuple (jx, jx2) of dim x dim arrays
    """
    check_odd_n(N, minimum=3)
    dim = (N + 1) // 2
    labels = np.arange(dim) + 0.5
    alpha = lambda a, s: ladder_coefficient(N, a, s)  # noqa: E731
    jx = np.zeros((dim, dim))
    jx2 = np.zeros((dim, dim))
    for i, a in enumerate(labels):
        for k, b in enumerate(labels):
            if i == k:
                continue
            if np.isclose(a, b + 1):
                jx[i, k] += 0.5 * alpha(b, "+")
            if np.isclose(a, b - 1):
                jx[i, k] += 0.5 * alpha(b, "-")
            if np.isclose(a, b + 2):
                jx2[i, k] += 0.25 * alpha(b + 1, "+") * alpha(b, "+")
            if np.isclose(a, abs(b - 2)):
                jx2[i, k] += 0.25 * alpha(b - 1, "-") * alpha(b, "-")
    return jx, jx2


@dataclass(frozen=True, eq=False)
class SpinSector:
    """Even-parity sector data for odd N

    Attributes:
        N: Number of two-level systems
        omega: Energy scale Omega of H = Omega Jz^2
        energies: E_a = Omega a^2 for a = 1/2 ... N/2
        jx: <v_a|Jx|v_b>
        jx2: <v_a|Jx^2|v_b>
    """

    N: int
    omega: float
    energies: np.ndarray = field(repr=False)
    jx: np.ndarray = field(repr=False)
    jx2: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return (self.N + 1) // 2

    @property
    def labels(self) -> np.ndarray:
        """Physical labels a = k + 1/2"""
        return np.arange(self.dim) + 0.5

    @property
    def frequencies(self) -> np.ndarray:
        """Transition-frequency table w_ab = E_a - E_b"""
        return self.energies[:, None] - self.energies[None, :]

    def coupling(self, kind: str) -> np.ndarray:
        """Matrix of the coupling operator A for a given kind

        Args:
            kind: 'jx' or 'jx2_over_n'

        Raises:
            DomainError: Unknown kind
        """
        if kind == "jx":
            return self.jx
        if kind == "jx2_over_n":
            return self.jx2 / self.N
        raise DomainError(f"Unknown coupling kind: {kind}. Supported kinds: ['jx', 'jx2_over_n']")

    def index(self, a: float) -> int:
        """Internal index k = a - 1/2 of a physical label"""
        k = int(round(a - 0.5))
        if not 0 <= k < self.dim or abs(k + 0.5 - a) > _HALF_INTEGER_TOL:
            raise DomainError(f"Label a={a} not in sector of N={self.N}")
        return k


def build_sector(N: int, omega: float = 1.0) -> SpinSector:
    """Build the even-parity sector by Dicke-basis projection

    Args:
        N: Odd number of two-level systems, N >= 3
        omega: Energy scale Omega > 0

    Returns:
        Immutable SpinSector

    Raises:
        DomainError: Even, too small or non-integer N, or omega <= 0
        NumericalError: Projection disagrees with the closed-form amplitudes
    """
    check_odd_n(N, minimum=3)
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")

    full_jx = dicke_jx(N)
    proj = _parity_projector(N)
    jx = proj.T @ full_jx @ proj
    jx2 = proj.T @ (full_jx @ full_jx) @ proj

    ref_jx, ref_jx2 = closed_form_couplings(N)
    off = ~np.eye(jx.shape[0], dtype=bool)
    for name, got, ref in (("Jx", jx, ref_jx), ("Jx^2", jx2, ref_jx2)):
        if not np.allclose(got[off], ref[off], rtol=_CLOSED_FORM_TOL, atol=_CLOSED_FORM_TOL):
            deviation = float(np.max(np.abs(got[off] - ref[off])))
            raise NumericalError(
                f"{name} projection disagrees with closed form for N={N}",
                {"max_deviation": deviation},
            )

    labels = np.arange((N + 1) // 2) + 0.5
    energies = omega * labels**2
    for arr in (jx, jx2, energies):
        arr.setflags(write=False)
    logger.debug("Built sector N=%d dim=%d", N, len(labels))
    return SpinSector(N=N, omega=float(omega), energies=energies, jx=jx, jx2=jx2)
