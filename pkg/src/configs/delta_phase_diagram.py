from src.utils.config_types import GridSpec
from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# Hermitian imbalance: band map in (delta, eps) space at gamma=0
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=0.0),
    grids=GridsConfig(
        k_points=4096,
        delta=GridSpec(min=0.0, max=4.0, points=201),
        energy=GridSpec(min=-6.0, max=4.0, points=256),
    ),
)
