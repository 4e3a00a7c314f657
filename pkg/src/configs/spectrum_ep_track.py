from src.utils.config_types import GridSpec
from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# eigenvalues of N=100 versus gamma, following the m=59 pair through its EP near gamma=0.9546
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=0.0),
    n_cells=100,
    grids=GridsConfig(gamma=GridSpec(min=0.8, max=1.2, points=401)),
    track_seed=[0.783155, 0.0, 0.262145, 0.0],
)
