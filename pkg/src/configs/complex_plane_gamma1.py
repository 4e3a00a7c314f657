from src.utils.config_types import GridSpec
from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# transmission on the complex incident energy plane at gamma=1.0
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=1.0),
    n_cells=100,
    grids=GridsConfig(
        energy=GridSpec(min=-5.5, max=3.5, points=256),
        energy_imag=GridSpec(min=-1.0, max=1.0, points=81),
    ),
)
