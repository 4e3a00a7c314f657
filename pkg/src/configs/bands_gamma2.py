from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# complex bands at gamma=2.0: the EP2 pair merges at the zone boundary
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=2.0),
    grids=GridsConfig(k_points=256),
)
