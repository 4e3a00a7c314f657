from dataclasses import dataclass
from functools import partial
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
import pandas as pd

from src.consts import CSV_COLUMNS
from src.consts import DEFAULTS
from src.consts import TOLERANCES
from src.lattice.bloch import band_energies
from src.lattice.bloch import classify_phases
from src.lattice.params import LatticeParams
from src.types import PHASE_LABEL
from src.types import REGION
from src.utils.parallel import ordered_map


@dataclass(frozen=True)
class BandStructure:
    k: np.ndarray
    eps_plus: np.ndarray
    eps_minus: np.ndarray
    labels: np.ndarray

    def __len__(self):
        return len(self.k)

    def trace_residual(self, p: LatticeParams) -> float:
        """max |eps_+ + eps_- + 4d cos k| over the grid."""
        return float(np.max(np.abs(self.eps_plus + self.eps_minus + 4 * p.d * np.cos(self.k))))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(dict(zip(CSV_COLUMNS.BANDS, [
            self.k,
            self.eps_plus.real,
            self.eps_plus.imag,
            self.eps_minus.real,
            self.eps_minus.imag,
            [str(label) for label in self.labels],
        ])))


class BandExtent(NamedTuple):
    bottom: float
    top: float


class BandExtents(NamedTuple):
    lower: Optional[BandExtent]
    upper: Optional[BandExtent]


@dataclass(frozen=True)
class PhaseDiagram:
    axis_grid: np.ndarray
    energy_grid: np.ndarray
    regions: np.ndarray  # (len(axis_grid), len(energy_grid)) of REGION

    def to_frame(self, columns: Sequence[str] = CSV_COLUMNS.PHASE_DIAGRAM) -> pd.DataFrame:
        axis, energy = np.meshgrid(self.axis_grid, self.energy_grid, indexing='ij')
        return pd.DataFrame(dict(zip(columns, [
            axis.ravel(),
            energy.ravel(),
            [str(region) for region in self.regions.ravel()],
        ])))


def k_grid(nk: int) -> np.ndarray:
    """Uniform grid over [-pi, pi)."""
    return -np.pi + 2 * np.pi * np.arange(nk) / nk


def _pair_by_continuity(plus: np.ndarray, minus: np.ndarray, anchor: int) -> Tuple[np.ndarray, np.ndarray]:
    # Walk outwards from the anchor and swap whenever the swapped pair lies closer to the linear
    # extrapolation of the previous two samples; exact ties keep the raw order.
    a, b = plus.copy(), minus.copy()
    n = len(a)
    for step in (1, -1):
        stop = n if step == 1 else -1
        for i in range(anchor + step, stop, step):
            prev, prev2 = i - step, i - 2 * step
            if (prev2 - anchor) * step >= 0:
                pred_a, pred_b = 2 * a[prev] - a[prev2], 2 * b[prev] - b[prev2]
            else:
                pred_a, pred_b = a[prev], b[prev]
            keep = abs(a[i] - pred_a) + abs(b[i] - pred_b)
            swap = abs(b[i] - pred_a) + abs(a[i] - pred_b)
            if swap < keep:
                a[i], b[i] = b[i], a[i]
    return a, b


def sample_bands(p: LatticeParams, nk: int = DEFAULTS.K_POINTS, tol: float = TOLERANCES.EP) -> BandStructure:
    """
    Sample both complex bands over [-pi, pi) with branches paired by continuity.

    Branch labels are fixed at the grid point closest to k=0 by the principal-branch order, so for
    gamma = delta = 0 the eps_+ column is the flat band everywhere.
    """
    if nk < 2:
        raise ValueError(f'nk must be >= 2, got {nk}')
    k = k_grid(nk)
    plus, minus = band_energies(k, p)
    plus, minus = _pair_by_continuity(plus, minus, anchor=int(np.argmin(np.abs(k))))
    return BandStructure(k=k, eps_plus=plus, eps_minus=minus, labels=classify_phases(k, p, tol))


def _segment_intervals(values_i: np.ndarray, values_j: np.ndarray) -> np.ndarray:
    lo = np.minimum(values_i, values_j)
    hi = np.maximum(values_i, values_j)
    return np.stack([lo, hi], axis=-1)


def _occupancy(intervals: np.ndarray, energy_grid: np.ndarray, tol: np.ndarray) -> np.ndarray:
    if len(intervals) == 0:
        return np.zeros(len(energy_grid), dtype=bool)
    lo = intervals[:, 0][None, :] - tol[:, None]
    hi = intervals[:, 1][None, :] + tol[:, None]
    e = energy_grid[:, None]
    return np.any((e >= lo) & (e <= hi), axis=1)


def occupancy_tolerance(energy_grid: np.ndarray) -> np.ndarray:
    """Half of the local grid spacing at every energy."""
    energy_grid = np.asarray(energy_grid, dtype=float)
    if len(energy_grid) < 2:
        return np.zeros(len(energy_grid))
    return np.abs(np.gradient(energy_grid)) / 2


def band_occupancy(bands: BandStructure, energy_grid: np.ndarray, tol: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Whether each real energy is covered by an unbroken band and by the real part of a broken band.

    Adjacent k-samples (periodically wrapped) form segments; a segment contributes to the unbroken
    set when one of its ends is unbroken and to the broken set when one of its ends is broken, so
    the two sets meet at the EP energies without grid-induced gaps.
    """
    labels_i = bands.labels
    labels_j = np.roll(bands.labels, -1)
    segments = []
    for branch in (bands.eps_plus, bands.eps_minus):
        segments.append(_segment_intervals(branch.real, np.roll(branch, -1).real))
    segments = np.stack(segments)  # (2, nk, 2)

    unbroken = (labels_i == PHASE_LABEL.UNBROKEN) | (labels_j == PHASE_LABEL.UNBROKEN)
    broken = (labels_i == PHASE_LABEL.BROKEN) | (labels_j == PHASE_LABEL.BROKEN)
    unbroken_hits = _occupancy(segments[:, unbroken].reshape(-1, 2), energy_grid, tol)
    broken_hits = _occupancy(segments[:, broken].reshape(-1, 2), energy_grid, tol)
    return unbroken_hits, broken_hits


def _regions(unbroken: np.ndarray, broken: np.ndarray) -> np.ndarray:
    regions = np.full(unbroken.shape, REGION.NO_BAND, dtype=object)
    regions[unbroken & ~broken] = REGION.UNBROKEN_ONLY
    regions[~unbroken & broken] = REGION.BROKEN_ONLY
    regions[unbroken & broken] = REGION.COEXISTENT
    return regions


def _phase_diagram_row(gamma: float, p: LatticeParams, energy_grid: np.ndarray, nk: int, tol: float) -> np.ndarray:
    bands = sample_bands(p.with_gamma(gamma), nk, tol)
    unbroken, broken = band_occupancy(bands, energy_grid, occupancy_tolerance(energy_grid))
    return _regions(unbroken, broken)


def phase_diagram(
        p: LatticeParams,
        gamma_grid: Sequence[float],
        energy_grid: Sequence[float],
        nk: int = 4096,
        tol: float = TOLERANCES.EP,
        workers: int = 1,
) -> PhaseDiagram:
    if not p.is_pt_symmetric:
        raise ValueError(f'the PT phase diagram requires delta = 0, got delta={p.delta}')
    gamma_grid = np.asarray(gamma_grid, dtype=float)
    energy_grid = np.asarray(energy_grid, dtype=float)
    if gamma_grid.size == 0 or energy_grid.size == 0:
        raise ValueError('gamma_grid and energy_grid must be nonempty')
    rows = ordered_map(
        partial(_phase_diagram_row, p=p, energy_grid=energy_grid, nk=nk, tol=tol),
        list(gamma_grid),
        workers,
    )
    return PhaseDiagram(axis_grid=gamma_grid, energy_grid=energy_grid, regions=np.stack(rows))


def _delta_row(delta: float, p: LatticeParams, energy_grid: np.ndarray, nk: int) -> np.ndarray:
    bands = sample_bands(p.with_delta(delta), nk)
    unbroken, broken = band_occupancy(bands, energy_grid, occupancy_tolerance(energy_grid))
    return _regions(unbroken, broken)


def delta_band_map(
        p: LatticeParams,
        delta_grid: Sequence[float],
        energy_grid: Sequence[float],
        nk: int = 4096,
        workers: int = 1,
) -> PhaseDiagram:
    """Hermitian-imbalance diagram in (delta, eps) space; only NO_BAND and UNBROKEN_ONLY occur."""
    if p.gamma != 0:
        raise ValueError(f'the delta band map is defined for gamma = 0, got gamma={p.gamma}')
    delta_grid = np.asarray(delta_grid, dtype=float)
    energy_grid = np.asarray(energy_grid, dtype=float)
    if delta_grid.size == 0 or energy_grid.size == 0:
        raise ValueError('delta_grid and energy_grid must be nonempty')
    rows = ordered_map(partial(_delta_row, p=p, energy_grid=energy_grid, nk=nk), list(delta_grid), workers)
    return PhaseDiagram(axis_grid=delta_grid, energy_grid=energy_grid, regions=np.stack(rows))


def _extent(*branches: np.ndarray) -> Optional[BandExtent]:
    values = np.concatenate([branch.real for branch in branches])
    if values.size == 0:
        return None
    return BandExtent(bottom=float(values.min()), top=float(values.max()))


def band_extents(p: LatticeParams, nk: int = 4096, tol: float = TOLERANCES.EP) -> BandExtents:
    """
    Real extents of the unbroken bands by a k-scan over [0, pi].

    The lower band is the unbroken region connected to k=0 and the upper band the one connected to
    k=pi. When a single unbroken region covers the zone (e.g. gamma = 0) the bands are the two
    branches instead.
    """
    if not p.is_pt_symmetric:
        raise ValueError(f'band extents by phase region require delta = 0, got delta={p.delta}')
    k = np.linspace(0, np.pi, nk)
    plus, minus = band_energies(k, p)
    unbroken = classify_phases(k, p, tol) == PHASE_LABEL.UNBROKEN
    if np.all(unbroken):
        return BandExtents(lower=_extent(minus), upper=_extent(plus))

    def connected(start: int, step: int) -> np.ndarray:
        indices = []
        i = start
        while 0 <= i < nk and unbroken[i]:
            indices.append(i)
            i += step
        return np.asarray(indices, dtype=int)

    lower = connected(0, 1)
    upper = connected(nk - 1, -1)
    return BandExtents(
        lower=_extent(plus[lower], minus[lower]),
        upper=_extent(plus[upper], minus[upper]),
    )


def hermitian_gap(p: LatticeParams, nk: int = 4096) -> float:
    """Width of the gap between the two real bands for gamma = 0 (zero when they touch)."""
    if p.gamma != 0:
        raise ValueError(f'hermitian_gap requires gamma = 0, got gamma={p.gamma}')
    plus, minus = band_energies(np.linspace(0, np.pi, nk), p)
    return float(max(0.0, plus.real.min() - minus.real.max()))
