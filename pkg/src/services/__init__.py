"""Service module"""

from .simulation_service import SimulationService, cooling_window_edge, evaluate_point

__all__ = ["SimulationService", "cooling_window_edge", "evaluate_point"]
