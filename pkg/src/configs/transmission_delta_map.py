from src.utils.config_types import GridSpec
from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# transmission over (delta, E) at gamma=0 for N=100
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=0.0),
    n_cells=100,
    grids=GridsConfig(
        delta=GridSpec(min=0.0, max=3.0, points=121),
        energy=GridSpec(min=-6.0, max=4.0, points=256),
    ),
)
