import logging
from dataclasses import dataclass
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
import pandas as pd
from scipy.optimize import linear_sum_assignment

from src.consts import CSV_COLUMNS
from src.consts import TOLERANCES
from src.errors import TrackingLost
from src.lattice.params import FiniteLattice
from src.spectra.finite import eigenvalues

logger = logging.getLogger(__name__)


class ExceptionalPoint(NamedTuple):
    gamma: float
    energy: complex
    pair_distance: float
    iterations: int


@dataclass(frozen=True)
class EpTrace:
    gamma_grid: np.ndarray
    tracks: np.ndarray  # (len(gamma_grid), 2) complex
    ep: Optional[ExceptionalPoint]

    @property
    def pair_distance(self) -> np.ndarray:
        return np.abs(self.tracks[:, 0] - self.tracks[:, 1])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(dict(zip(CSV_COLUMNS.TRACK, [
            self.gamma_grid,
            self.tracks[:, 0].real,
            self.tracks[:, 0].imag,
            self.tracks[:, 1].real,
            self.tracks[:, 1].imag,
        ])))


def _split_sign(pair: np.ndarray) -> float:
    # > 0 while the pair is split along the real axis, < 0 once it is split along the imaginary axis
    diff = pair[0] - pair[1]
    return abs(diff.real) - abs(diff.imag)


def _spectrum(fl: FiniteLattice, gamma: float) -> np.ndarray:
    return eigenvalues(fl.with_gamma(gamma)).eigenvalues


def _match_pair(
        previous: np.ndarray,
        candidates: np.ndarray,
        max_step: float,
        ambiguity_ratio: float,
        gamma: float,
) -> np.ndarray:
    cost = np.abs(previous[:, None] - candidates[None, :])
    rows, cols = linear_sum_assignment(cost)
    chosen = cols[np.argsort(rows)]
    steps = cost[[0, 1], chosen]
    if steps.max() > max_step:
        raise TrackingLost(f'pair jumped by {steps.max():.3e} > {max_step:.3e} at gamma={gamma:.6g}')
    outside = np.ones(len(candidates), dtype=bool)
    outside[chosen] = False
    if outside.any():
        nearest_outside = cost[:, outside].min(axis=1)
        ambiguous = (nearest_outside <= ambiguity_ratio * steps) & (nearest_outside <= max_step)
        if ambiguous.any():
            raise TrackingLost(
                f'ambiguous continuation at gamma={gamma:.6g}: another eigenvalue lies within '
                f'{nearest_outside[ambiguous].min():.3e} of the tracked pair'
            )
    return candidates[chosen]


def _nearest_pair(values: np.ndarray, center: complex) -> np.ndarray:
    order = np.argsort(np.abs(values - center))
    return values[order[:2]]


def _refine_ep(
        fl: FiniteLattice,
        bracket: Tuple[float, float],
        centers: Tuple[complex, complex],
        coalescence: float,
        gamma_tol: float,
) -> ExceptionalPoint:
    lo, hi = bracket
    center_lo, center_hi = centers

    def pair_at(gamma: float) -> np.ndarray:
        # the pair center is analytic through the EP, interpolate it across the bracket
        weight = (gamma - bracket[0]) / (bracket[1] - bracket[0])
        return _nearest_pair(_spectrum(fl, gamma), center_lo + weight * (center_hi - center_lo))

    sign_lo = np.sign(_split_sign(pair_at(lo)))
    iterations = 0
    pair = pair_at((lo + hi) / 2)
    while iterations < TOLERANCES.BISECTION_MAX_ITER:
        mid = (lo + hi) / 2
        pair = pair_at(mid)
        iterations += 1
        if abs(pair[0] - pair[1]) < coalescence or hi - lo <= gamma_tol:
            break
        if np.sign(_split_sign(pair)) == sign_lo:
            lo = mid
        else:
            hi = mid
    gamma_star = (lo + hi) / 2
    distance = float(abs(pair[0] - pair[1]))
    if distance > coalescence:
        logger.info(f'EP bracket closed at gamma={gamma_star:.12f} with pair distance {distance:.3e}')
    return ExceptionalPoint(
        gamma=float(gamma_star),
        energy=complex(pair.mean()),
        pair_distance=distance,
        iterations=iterations,
    )


def trace_pair_vs_gamma(
        fl_template: FiniteLattice,
        gamma_grid: Sequence[float],
        seed_pair: Tuple[complex, complex],
        seed_tol: float = TOLERANCES.TRACK_SEED,
        max_step: float = TOLERANCES.TRACK_MAX_STEP,
        ambiguity_ratio: float = TOLERANCES.TRACK_AMBIGUITY_RATIO,
        coalescence: float = TOLERANCES.COALESCENCE,
        gamma_tol: float = TOLERANCES.EP_GAMMA,
) -> EpTrace:
    """
    Follow two eigenvalues of the finite lattice along a gain/loss grid.

    Continuation is nearest-neighbour matching in the complex plane, sequential along the grid. An
    EP is reported in the grid bracket where the pair turns from real splitting to imaginary
    splitting (or back) with the smallest mutual distance, and refined there by bisection in gamma.

    Raises:
        TrackingLost: a jump exceeds max_step, or another eigenvalue competes for the continuation
        ValueError: the grid is not strictly increasing or the seed does not match the spectrum
    """
    gamma_grid = np.asarray(gamma_grid, dtype=float)
    if gamma_grid.size < 2 or np.any(np.diff(gamma_grid) <= 0):
        raise ValueError('gamma_grid must be strictly increasing with at least two points')

    start = _spectrum(fl_template, gamma_grid[0])
    seed = np.asarray(seed_pair, dtype=complex)
    cost = np.abs(seed[:, None] - start[None, :])
    rows, cols = linear_sum_assignment(cost)
    if cost[rows, cols].max() > seed_tol:
        raise ValueError(f'seed pair {seed_pair} does not match the spectrum at gamma={gamma_grid[0]}')

    tracks = np.empty((len(gamma_grid), 2), dtype=complex)
    tracks[0] = start[cols[np.argsort(rows)]]
    for i, gamma in enumerate(gamma_grid[1:], start=1):
        tracks[i] = _match_pair(tracks[i - 1], _spectrum(fl_template, gamma), max_step, ambiguity_ratio, gamma)
    logger.debug(f'tracked pair over {len(gamma_grid)} gamma points')

    signs = np.sign([_split_sign(pair) for pair in tracks])
    distance = np.abs(tracks[:, 0] - tracks[:, 1])
    brackets = [i for i in range(len(gamma_grid) - 1) if signs[i] * signs[i + 1] < 0 or (signs[i] == 0 != signs[i + 1])]
    if not brackets:
        return EpTrace(gamma_grid=gamma_grid, tracks=tracks, ep=None)

    i = min(brackets, key=lambda j: min(distance[j], distance[j + 1]))
    ep = _refine_ep(
        fl_template,
        bracket=(gamma_grid[i], gamma_grid[i + 1]),
        centers=(tracks[i].mean(), tracks[i + 1].mean()),
        coalescence=coalescence,
        gamma_tol=gamma_tol,
    )
    logger.info(f'EP at gamma={ep.gamma:.9f}, energy={ep.energy:.9f}')
    return EpTrace(gamma_grid=gamma_grid, tracks=tracks, ep=ep)
