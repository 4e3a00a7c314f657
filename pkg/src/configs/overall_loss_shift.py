from src.utils.config_types import GridSpec
from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig
from src.utils.config_types import TolerancesConfig

# overall loss Gamma on every lattice site at gamma=1, real incident energies
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=1.0),
    n_cells=100,
    grids=GridsConfig(
        energy=GridSpec(min=-1.0, max=3.0, points=2048),
        overall_loss_values=[0.1, 0.3, 0.5],
    ),
    # lossy resonances stay well below T = 0.5, the weaker one near 0.08 at Gamma=0.1
    tolerances=TolerancesConfig(peak_threshold=0.05),
)
