"""Type definitions for the refrigerator simulator"""

from typing import Dict, TypedDict

ROLES: tuple = ("cold", "hot", "work")

# Coupling operator used by each role when none is given explicitly
DEFAULT_COUPLING: Dict[str, str] = {
    "cold": "jx",
    "work": "jx",
    "hot": "jx2_over_n",
}


class SolverDiagnostics(TypedDict):
    """Diagnostics of an augmented least-squares solve"""
    residual: float
    nullspace_dim: int
    min_population: float


class PopulationSummary(TypedDict):
    """Compact description of a steady-state population vector"""
    ground: float
    lowest_three: float
    top: float
