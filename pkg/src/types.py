from enum import Enum
from pathlib import Path
from typing import NamedTuple
from typing import NewType
from typing import Optional


class STREnum(str, Enum):
    def __str__(self):
        return str(self.value)


class SUBCOMMAND(STREnum):
    BANDS = 'bands'
    PHASE_DIAGRAM = 'phase-diagram'
    SPECTRUM = 'spectrum'
    TRANSMIT = 'transmit'
    COMPLEX_MAP = 'complex-map'
    GAMMA_SHIFT = 'gamma-shift'
    FANO_CHECK = 'fano-check'


class PHASE_LABEL(STREnum):
    UNBROKEN = 'unbroken'
    BROKEN = 'broken'
    EXCEPTIONAL_POINT = 'exceptional_point'
    # delta != 0 together with gamma != 0: no PT classification exists
    UNCLASSIFIED = 'unclassified'


class REGION(STREnum):
    NO_BAND = 'no_band'
    UNBROKEN_ONLY = 'unbroken_only'
    BROKEN_ONLY = 'broken_only'
    COEXISTENT = 'coexistent'


class LEAD_SIDE(STREnum):
    SOURCE = 'source'
    DRAIN = 'drain'


class LEAD_ENERGY(STREnum):
    ANALYTIC = 'analytic'
    REAL_PART = 'real_part'


class SWEEP_AXIS(STREnum):
    GAMMA = 'gamma'
    DELTA = 'delta'


class CONFIG_KEYS(STREnum):
    LATTICE = 'lattice'
    LEAD = 'lead'
    N_CELLS = 'n_cells'
    OVERALL_LOSS = 'overall_loss'
    GRIDS = 'grids'
    TOLERANCES = 'tolerances'
    LEAD_ENERGY = 'lead_energy'
    TRACK_SEED = 'track_seed'
    WORKERS = 'workers'


IConfigName = NewType('IConfigName', str)
IComplexEnergy = complex


class IArgs(NamedTuple):
    subcommand: SUBCOMMAND
    config: Optional[str]
    out: Optional[Path]
    workers: Optional[int]
    run_id: Optional[str]
