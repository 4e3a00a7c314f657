import numpy as np
import pytest

from src.lattice.params import FiniteLattice
from src.lattice.params import LatticeParams
from src.lattice.params import LeadParams


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def unit_params() -> LatticeParams:
    # t = d = 1, delta = gamma = 0
    return LatticeParams()


@pytest.fixture
def lead() -> LeadParams:
    return LeadParams(v0=10.0, g=1.0)


@pytest.fixture
def small_lattice() -> FiniteLattice:
    return FiniteLattice(n_cells=4, params=LatticeParams(t=1.0, d=1.0, delta=0.0, gamma=0.5))
