"""Shared fixtures and hypothesis profiles"""

import hypothesis
import numpy as np
import pytest

from src.qar.collective_spin import build_sector
from src.qar.config import ModelConfig
from src.qar.liouvillian import build_rate_matrix
from src.qar.reduced import ReducedModelParams, reduced_rate_matrix

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=25, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile("fast")


@pytest.fixture
def reference_config():
    """Reference refrigerator parameters at N=31"""
    return ModelConfig()


@pytest.fixture
def reference_rates(reference_config):
    sector = build_sector(reference_config.N, reference_config.omega)
    return build_rate_matrix(sector, reference_config.reservoirs())


@pytest.fixture
def reduced_params():
    """Reduced model at the reference temperatures, N=31"""
    return ReducedModelParams.from_temperatures(31, beta_c=2.0, beta_h=1.0, beta_w=1e-3)


@pytest.fixture
def reduced_rates(reduced_params):
    return reduced_rate_matrix(reduced_params)
