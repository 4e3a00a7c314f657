from src.types import LEAD_ENERGY
from src.utils.config_types import GridSpec
from src.utils.config_types import GridsConfig
from src.utils.config_types import LatticeConfig
from src.utils.config_types import RunConfig

# complex incident energy plane at gamma=1; leads at Re E so the E_i lines reproduce overall_loss_shift
config = RunConfig(
    lattice=LatticeConfig(t=1.0, d=1.0, delta=0.0, gamma=1.0),
    n_cells=100,
    grids=GridsConfig(
        energy=GridSpec(min=-1.0, max=3.0, points=256),
        energy_imag=GridSpec(min=0.0, max=0.6, points=61),
    ),
    lead_energy=LEAD_ENERGY.REAL_PART,
)
