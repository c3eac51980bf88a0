"""Exception hierarchy for the refrigerator simulator"""

from typing import Any, Dict, Optional


class QarError(Exception):
    """Base class for all simulator errors"""


class DomainError(QarError, ValueError):
    """Invalid argument outside the domain of an operation"""


class ConfigError(QarError, ValueError):
    """Configuration could not be parsed or validated"""


class NumericalError(QarError, RuntimeError):
    """A numerical procedure failed to meet its accuracy contract

    Attributes:
        diagnostics: Free-form numbers describing the failure (residuals,
            error estimates, final times ...)
    """

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        return f"{base} ({details})"


class DegeneracyError(NumericalError):
    """The stationary state is not unique"""


class QuadratureError(NumericalError):
    """Adaptive quadrature did not converge"""


class OracleError(NumericalError):
    """Eigenvalue branch could not be tracked unambiguously"""


class ThermalizationTimeout(NumericalError):
    """Relative-entropy threshold not reached before t_max"""


class ConsistencyError(NumericalError):
    """Currents violate energy conservation"""
