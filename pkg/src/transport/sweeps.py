import logging
from dataclasses import dataclass
from functools import partial
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
import pandas as pd
from typing_extensions import assert_never

from src.consts import CSV_COLUMNS
from src.consts import TOLERANCES
from src.errors import NumericalError
from src.lattice.params import FiniteLattice
from src.lattice.params import LeadParams
from src.transport.scattering import solve_scattering
from src.types import LEAD_ENERGY
from src.types import SWEEP_AXIS
from src.utils.parallel import ordered_map
from src.utils.parallel import split_chunks

logger = logging.getLogger(__name__)

# (lattice, incident energy) for one solve
IPoint = Tuple[FiniteLattice, complex]
# (T, R, error class name or '')
IRow = Tuple[float, float, str]


def _solve_point(point: IPoint, lead: LeadParams, lead_energy: LEAD_ENERGY) -> IRow:
    fl, energy = point
    try:
        solution = solve_scattering(fl, lead, energy, lead_energy=lead_energy)
    except NumericalError as e:
        logger.debug(f'{e.__class__.__name__} at E={energy}: {e}')
        return np.nan, np.nan, e.__class__.__name__
    return solution.transmission, solution.reflection, ''


def _solve_chunk(points: List[IPoint], lead: LeadParams, lead_energy: LEAD_ENERGY) -> List[IRow]:
    return [_solve_point(point, lead, lead_energy) for point in points]


def solve_points(
        points: Sequence[IPoint],
        lead: LeadParams,
        lead_energy: LEAD_ENERGY = LEAD_ENERGY.ANALYTIC,
        workers: int = 1,
) -> List[IRow]:
    """Solve every point, fanned out in contiguous chunks; rows come back in input order."""
    points = list(points)
    chunks = [[points[i] for i in chunk] for chunk in split_chunks(np.arange(len(points)), workers)]
    results = ordered_map(partial(_solve_chunk, lead=lead, lead_energy=lead_energy), chunks, workers)
    rows = [row for chunk in results for row in chunk]
    failures = sum(1 for row in rows if row[2])
    if failures:
        logger.warning(f'{failures} of {len(rows)} points failed and are recorded with NaN values')
    return rows


def _real_grid(grid: Sequence[complex], name: str) -> np.ndarray:
    grid = np.asarray(grid)
    if grid.size == 0:
        raise ValueError(f'{name} must be nonempty')
    if np.iscomplexobj(grid):
        if np.any(grid.imag != 0):
            raise ValueError(f'{name} must be real, use complex_energy_map for complex energies')
        grid = grid.real
    return grid.astype(float)


def transmission_sweep(
        fl: FiniteLattice,
        lead: LeadParams,
        energy_grid: Sequence[float],
        workers: int = 1,
) -> pd.DataFrame:
    """T and R along a real energy grid; failed points carry NaN and the error class name."""
    energy_grid = _real_grid(energy_grid, 'energy_grid')
    rows = solve_points([(fl, complex(energy)) for energy in energy_grid], lead, workers=workers)
    transmission, reflection, errors = zip(*rows)
    return pd.DataFrame(dict(zip(CSV_COLUMNS.TRANSMIT, [energy_grid, transmission, reflection, errors])))


@dataclass(frozen=True)
class ComplexEnergyMap:
    er_grid: np.ndarray
    ei_grid: np.ndarray
    transmission: np.ndarray  # (len(er_grid), len(ei_grid))
    errors: np.ndarray

    def line(self, ei: float) -> np.ndarray:
        """T along the grid row closest to Im E = ei."""
        return self.transmission[:, int(np.argmin(np.abs(self.ei_grid - ei)))]

    def to_frame(self) -> pd.DataFrame:
        er, ei = np.meshgrid(self.er_grid, self.ei_grid, indexing='ij')
        return pd.DataFrame(dict(zip(CSV_COLUMNS.COMPLEX_MAP, [
            er.ravel(),
            ei.ravel(),
            self.transmission.ravel(),
            self.errors.ravel(),
        ])))


def complex_energy_map(
        fl: FiniteLattice,
        lead: LeadParams,
        er_grid: Sequence[float],
        ei_grid: Sequence[float],
        lead_energy: LEAD_ENERGY = LEAD_ENERGY.ANALYTIC,
        workers: int = 1,
) -> ComplexEnergyMap:
    """T(E_r + i E_i) over a rectangular grid of the complex incident energy plane."""
    er_grid = _real_grid(er_grid, 'er_grid')
    ei_grid = _real_grid(ei_grid, 'ei_grid')
    points = [(fl, complex(er, ei)) for er in er_grid for ei in ei_grid]
    rows = solve_points(points, lead, lead_energy, workers)
    shape = (len(er_grid), len(ei_grid))
    return ComplexEnergyMap(
        er_grid=er_grid,
        ei_grid=ei_grid,
        transmission=np.asarray([row[0] for row in rows], dtype=float).reshape(shape),
        errors=np.asarray([row[2] for row in rows], dtype=object).reshape(shape),
    )


def gamma_shift_sweep(
        fl: FiniteLattice,
        lead: LeadParams,
        er_grid: Sequence[float],
        overall_loss_values: Optional[Sequence[float]] = None,
        workers: int = 1,
) -> pd.DataFrame:
    """
    T along real energies with an overall loss -i Gamma on every lattice site, leads untouched.

    One block of rows per Gamma value; without explicit values the lattice's own overall loss is used.
    """
    er_grid = _real_grid(er_grid, 'er_grid')
    if overall_loss_values is None:
        overall_loss_values = [fl.overall_loss]
    overall_loss_values = [float(value) for value in overall_loss_values]
    if not overall_loss_values:
        raise ValueError('overall_loss_values must be nonempty')
    points = [(fl.with_overall_loss(loss), complex(er)) for loss in overall_loss_values for er in er_grid]
    rows = solve_points(points, lead, workers=workers)
    return pd.DataFrame(dict(zip(CSV_COLUMNS.GAMMA_SHIFT, [
        np.repeat(overall_loss_values, len(er_grid)),
        np.tile(er_grid, len(overall_loss_values)),
        [row[0] for row in rows],
        [row[2] for row in rows],
    ])))


def transmission_map(
        fl: FiniteLattice,
        lead: LeadParams,
        axis: SWEEP_AXIS,
        axis_grid: Sequence[float],
        energy_grid: Sequence[float],
        workers: int = 1,
) -> pd.DataFrame:
    """T and R over (gamma, E) or (delta, E), one row per grid point with the axis as outer loop."""
    axis_grid = _real_grid(axis_grid, 'axis_grid')
    energy_grid = _real_grid(energy_grid, 'energy_grid')
    if axis == SWEEP_AXIS.GAMMA:
        lattices = [fl.with_gamma(value) for value in axis_grid]
        columns = CSV_COLUMNS.TRANSMIT_MAP_GAMMA
    elif axis == SWEEP_AXIS.DELTA:
        lattices = [fl.with_delta(value) for value in axis_grid]
        columns = CSV_COLUMNS.TRANSMIT_MAP_DELTA
    else:
        assert_never(axis)
    rows = solve_points([(lattice, complex(energy)) for lattice in lattices for energy in energy_grid], lead,
                        workers=workers)
    transmission, reflection, errors = zip(*rows)
    return pd.DataFrame(dict(zip(columns, [
        np.repeat(axis_grid, len(energy_grid)),
        np.tile(energy_grid, len(axis_grid)),
        transmission,
        reflection,
        errors,
    ])))


def find_peak_indices(transmission: Sequence[float], threshold: float = TOLERANCES.PEAK_THRESHOLD) -> np.ndarray:
    """
    Indices of interior local maxima above threshold.

    A run of equal values counts as one peak, reported at its lowest-energy index, when both of its
    outer neighbours are strictly lower. NaN points never take part in a peak.
    """
    values = np.asarray(transmission, dtype=float)
    peaks = []
    start = 1
    while start < len(values) - 1:
        stop = start
        while stop + 1 < len(values) and values[stop + 1] == values[start]:
            stop += 1
        if (
                stop + 1 < len(values)
                and values[start] > threshold
                and values[start] > values[start - 1]
                and values[start] > values[stop + 1]
        ):
            peaks.append(start)
        start = stop + 1
    return np.asarray(peaks, dtype=int)


def find_peaks(
        energies: Sequence[float],
        transmission: Sequence[float],
        threshold: float = TOLERANCES.PEAK_THRESHOLD,
) -> np.ndarray:
    """Energies of the transmission peaks of an ascending energy grid."""
    energies = np.asarray(energies, dtype=float)
    if len(energies) != len(transmission):
        raise ValueError('energies and transmission must have equal length')
    if np.any(np.diff(energies) <= 0):
        raise ValueError('energies must be strictly increasing')
    return energies[find_peak_indices(transmission, threshold)]
