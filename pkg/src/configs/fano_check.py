from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# spectral check of the detangled Fano chain
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=1.0),
    n_cells=100,
)
