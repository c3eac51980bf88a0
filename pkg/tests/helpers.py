"""Small model builders shared by the tests"""

import numpy as np

from src.qar.core.spectral_density import BaseSpectralDensity
from src.qar.liouvillian import RateMatrix


class ConstantDensity(BaseSpectralDensity):
    """Gamma(w) = value * sign(w), for exactly known rates"""

    def __init__(self, value: float = 1.0):
        self.value = value

    def evaluate(self, w):
        return self.value * np.sign(w)


def two_state_matrix(u: float, d: float) -> RateMatrix:
    """R = [[-u, d], [u, -d]] on levels with unit gap"""
    return RateMatrix(
        energies=np.array([0.0, 1.0]),
        blocks={"cold": np.array([[0.0, d], [u, 0.0]])},
        betas={"cold": 1.0},
    )
