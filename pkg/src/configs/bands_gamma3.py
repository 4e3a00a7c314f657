from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# complex bands at gamma=3.0: upper band evaporated
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=3.0),
    grids=GridsConfig(k_points=256),
)
