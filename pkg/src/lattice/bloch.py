"""
Closed-form Bloch layer of the cross-stitch lattice.

h(k) = (-t - 2d cos k, delta/2 + i gamma/2) on (sigma_x, sigma_z) and h0(k) = -2d cos k, so that
eps_pm(k) = h0 +- sqrt(h_x^2 + h_z^2).
"""
import logging
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Tuple

import numpy as np
from scipy import optimize

from src.consts import TOLERANCES
from src.errors import EdgeAbsent
from src.lattice.params import LatticeParams
from src.types import PHASE_LABEL

logger = logging.getLogger(__name__)


class BandEdges(NamedTuple):
    """Gap-facing unbroken edges: bottom of the upper band (k=pi) and top of the lower band (k=0)."""
    upper_band_bottom: Optional[float]
    lower_band_top: Optional[float]

    @property
    def upper_present(self) -> bool:
        return self.upper_band_bottom is not None

    @property
    def lower_present(self) -> bool:
        return self.lower_band_top is not None

    def gap(self) -> Tuple[float, float]:
        """Return (low, high) of the gap; raises EdgeAbsent when either band has evaporated."""
        if self.upper_band_bottom is None:
            raise EdgeAbsent('upper band evaporated, no gap-facing edge at k=pi')
        if self.lower_band_top is None:
            raise EdgeAbsent('lower band evaporated, no gap-facing edge at k=0')
        return self.lower_band_top, self.upper_band_bottom


class EpLines(NamedTuple):
    ep1: float
    ep2: float
    ep1_present: bool
    ep2_present: bool


class EpMomentum(NamedTuple):
    k: float
    energy: float


def _h_x(k, p: LatticeParams):
    return -p.t - 2 * p.d * np.cos(k)


def _h_0(k, p: LatticeParams):
    return -2 * p.d * np.cos(k)


def _h_z(p: LatticeParams) -> complex:
    return complex(p.delta / 2, p.gamma / 2)


def bloch_hamiltonian(k: float, p: LatticeParams) -> np.ndarray:
    if not np.isfinite(k):
        raise ValueError(f'k must be finite, got {k}')
    h0 = _h_0(k, p)
    hx = _h_x(k, p)
    return np.array([
        [p.eps_a + h0, hx],
        [hx, p.eps_b + h0],
    ], dtype=complex)


def band_energies(k, p: LatticeParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    Raw principal-branch pair eps_pm(k). Accepts scalar or array k.

    Returns:
        (eps_plus, eps_minus), complex, same shape as k
    """
    k = np.asarray(k, dtype=float)
    if not np.all(np.isfinite(k)):
        raise ValueError('k must be finite')
    root = np.sqrt(np.asarray(_h_x(k, p) ** 2 + _h_z(p) ** 2, dtype=complex))
    h0 = _h_0(k, p)
    if k.ndim == 0:
        return complex(h0 + root), complex(h0 - root)
    return h0 + root, h0 - root


def discriminant(k, p: LatticeParams):
    """D(k) = (t + 2d cos k)^2 - gamma^2/4, the PT discriminant (delta = 0)."""
    return (p.t + 2 * p.d * np.cos(k)) ** 2 - p.gamma ** 2 / 4


def classify_phase(k: float, p: LatticeParams, tol: float = TOLERANCES.EP) -> PHASE_LABEL:
    if tol <= 0:
        raise ValueError(f'tol must be positive, got {tol}')
    if not p.is_pt_symmetric:
        raise ValueError(f'phase labels are defined for delta = 0 only, got delta={p.delta}')
    value = discriminant(k, p)
    if value > tol:
        return PHASE_LABEL.UNBROKEN
    if value < -tol:
        return PHASE_LABEL.BROKEN
    return PHASE_LABEL.EXCEPTIONAL_POINT


def classify_phases(k: np.ndarray, p: LatticeParams, tol: float = TOLERANCES.EP) -> np.ndarray:
    """
    Vectorised classify_phase, returns an object array of PHASE_LABEL.

    Unlike classify_phase it accepts delta != 0: a Hermitian imbalance (gamma = 0) keeps every
    energy real and is labelled UNBROKEN, anything else is UNCLASSIFIED.
    """
    k = np.asarray(k, dtype=float)
    if not p.is_pt_symmetric:
        label = PHASE_LABEL.UNBROKEN if p.gamma == 0 else PHASE_LABEL.UNCLASSIFIED
        return np.full(k.shape, label, dtype=object)
    value = discriminant(k, p)
    labels = np.full(k.shape, PHASE_LABEL.EXCEPTIONAL_POINT, dtype=object)
    labels[value > tol] = PHASE_LABEL.UNBROKEN
    labels[value < -tol] = PHASE_LABEL.BROKEN
    return labels


def _radical_or_none(value: float) -> Optional[float]:
    if value < 0:
        return None
    return float(np.sqrt(value))


def band_edges(gamma: float, p: LatticeParams) -> BandEdges:
    upper = _radical_or_none((p.t - 2 * p.d) ** 2 - (gamma / 2) ** 2)
    lower = _radical_or_none((p.t + 2 * p.d) ** 2 - (gamma / 2) ** 2)
    return BandEdges(
        upper_band_bottom=None if upper is None else 2 * p.d - upper,
        lower_band_top=None if lower is None else -2 * p.d + lower,
    )


def ep_lines(gamma: float, p: LatticeParams) -> EpLines:
    if gamma < 0:
        raise ValueError(f'gamma must be >= 0, got {gamma}')
    # EP at momentum k requires cos k = (+-gamma/2 - t) / (2d) inside [-1, 1]
    return EpLines(
        ep1=p.t - gamma / 2,
        ep2=p.t + gamma / 2,
        ep1_present=abs((gamma / 2 - p.t) / (2 * p.d)) <= 1,
        ep2_present=abs((-gamma / 2 - p.t) / (2 * p.d)) <= 1,
    )


def critical_constants(p: LatticeParams) -> Tuple[float, float]:
    """(gamma_c, eps_c) = (2|t - 2d|, 2d)."""
    return 2 * abs(p.t - 2 * p.d), 2 * p.d


def locate_ep_momenta(p: LatticeParams, nk: int = 4096) -> List[EpMomentum]:
    """Roots of D(k) = 0 on [0, pi] bracketed on a uniform grid and refined with Brent's method."""
    if not p.is_pt_symmetric:
        raise ValueError('EPs are only defined for delta = 0')
    grid = np.linspace(0, np.pi, nk)
    values = discriminant(grid, p)
    roots = []
    for i in np.flatnonzero(values == 0):
        roots.append(grid[i])
    for i in np.flatnonzero(values[:-1] * values[1:] < 0):
        roots.append(optimize.brentq(discriminant, grid[i], grid[i + 1], args=(p,), xtol=1e-15))
    return [EpMomentum(k=float(k), energy=float(_h_0(k, p))) for k in sorted(roots)]


def critical_gamma_by_bisection(p: LatticeParams, xtol: float = TOLERANCES.EP_GAMMA) -> float:
    """gamma at which the EP pair at the zone boundary merges, from D(pi; gamma) = 0."""
    def boundary_discriminant(gamma: float) -> float:
        return discriminant(np.pi, p.with_gamma(gamma))

    if boundary_discriminant(0.0) <= 0:
        return 0.0
    upper = 2 * abs(p.t - 2 * p.d) + 1.0
    gamma_c = optimize.bisect(boundary_discriminant, 0.0, upper, xtol=xtol, maxiter=TOLERANCES.BISECTION_MAX_ITER)
    logger.debug(f'zone-boundary EP pair annihilates at gamma={gamma_c:.12f}')
    return float(gamma_c)
