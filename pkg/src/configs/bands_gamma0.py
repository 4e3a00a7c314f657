from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# complex bands at gamma=0.0: flat band and accidental degenerate points
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=0.0),
    grids=GridsConfig(k_points=256),
)
