from src.utils.config_types import GridSpec
from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# transmission along real E for N=100 at gamma=0.5
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=0.5),
    n_cells=100,
    grids=GridsConfig(energy=GridSpec(min=-5.5, max=3.5, points=4096)),
)
