from typing import List
from typing import Optional
from typing import TypedDict

from src.types import LEAD_ENERGY


class LatticeConfig(TypedDict, total=False):
    t: float
    d: float
    delta: float
    gamma: float


class LeadConfig(TypedDict, total=False):
    v0: float
    g: float


class GridSpec(TypedDict):
    min: float
    max: float
    points: int


class GridsConfig(TypedDict, total=False):
    k_points: int
    energy: GridSpec
    energy_imag: GridSpec
    gamma: GridSpec
    delta: GridSpec
    overall_loss_values: List[float]


class TolerancesConfig(TypedDict, total=False):
    ep: float
    eigen_residual: float
    equivalence: float
    coalescence: float
    track_max_step: float
    peak_threshold: float


class RunConfig(TypedDict, total=False):
    lattice: LatticeConfig
    lead: LeadConfig
    n_cells: int
    overall_loss: float
    grids: GridsConfig
    tolerances: TolerancesConfig
    lead_energy: LEAD_ENERGY
    # [Re eps1, Im eps1, Re eps2, Im eps2] of the eigenvalue pair to follow along grids.gamma
    track_seed: Optional[List[float]]
    workers: int
