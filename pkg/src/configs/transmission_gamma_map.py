from src.utils.config_types import GridSpec
from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# transmission over (gamma, E) for N=100
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=0.0),
    n_cells=100,
    grids=GridsConfig(
        gamma=GridSpec(min=0.0, max=3.0, points=121),
        energy=GridSpec(min=-5.5, max=3.5, points=256),
    ),
)
