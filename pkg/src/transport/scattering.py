"""
Bordered scattering problem of the finite lattice between two single-channel leads.

The unknowns are ordered (r0, a_1, b_1, ..., a_N, b_N, t0) for incidence from the source lead. Both
lead rows have been reduced with the lead dispersion, leaving

    V0/2 r0 + G1 a_1                     = -V0/2
    G2+ r0 + (H0 - E) a_1 + H1 a_2       = G2-
    H1^T a_{j-1} + (H0 - E) a_j + H1 a_{j+1} = 0
    H1^T a_{N-1} + (H0 - E) a_N + G2+ t0 = 0
    G1 a_N + V0/2 t0                     = 0

with G1 = -g (1, 1), G2+ = -g e^{iq} (1, 1)^T and G2- = g e^{-iq} (1, 1)^T. Incidence from the drain
keeps the matrix and mirrors the right-hand side, so the first unknown becomes the transmitted
amplitude and the last one the reflected amplitude.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg
from typing_extensions import assert_never

from src.consts import TOLERANCES
from src.errors import SingularSystem
from src.lattice.params import FiniteLattice
from src.lattice.params import LeadParams
from src.spectra.finite import assemble_hamiltonian
from src.transport.leads import LeadPhase
from src.transport.leads import lead_phase
from src.types import IComplexEnergy
from src.types import LEAD_ENERGY
from src.types import LEAD_SIDE

logger = logging.getLogger(__name__)

# lower and upper bandwidth of the bordered system
BANDWIDTH = (3, 3)


@dataclass(frozen=True)
class ScatteringSolution:
    r0: complex
    t0: complex
    amplitudes: np.ndarray  # (N, 2): (a_j, b_j) per cell
    phase: LeadPhase
    residual: float
    incident: LEAD_SIDE = LEAD_SIDE.SOURCE

    @property
    def transmission(self) -> float:
        return abs(self.t0) ** 2

    @property
    def reflection(self) -> float:
        return abs(self.r0) ** 2

    @property
    def q(self) -> complex:
        return self.phase.q

    @property
    def propagating(self) -> bool:
        return self.phase.propagating


def lead_energy_of(energy: IComplexEnergy, mode: LEAD_ENERGY) -> complex:
    if mode == LEAD_ENERGY.ANALYTIC:
        return complex(energy)
    elif mode == LEAD_ENERGY.REAL_PART:
        return complex(complex(energy).real)
    else:
        assert_never(mode)


def assemble_scattering_system(
        fl: FiniteLattice,
        lead: LeadParams,
        energy: IComplexEnergy,
        incident: LEAD_SIDE = LEAD_SIDE.SOURCE,
        lead_energy: LEAD_ENERGY = LEAD_ENERGY.ANALYTIC,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Dense (2N+2) x (2N+2) matrix and right-hand side of the bordered system at incident energy E.

    Complex E shifts the lattice blocks; in REAL_PART mode the leads still propagate at Re E.
    """
    energy = complex(energy)
    phase = lead_phase(lead_energy_of(energy, lead_energy), lead)
    n = fl.dimension
    half_hopping = lead.v0 / 2

    matrix = np.zeros((n + 2, n + 2), dtype=complex)
    matrix[1:-1, 1:-1] = assemble_hamiltonian(fl) - energy * np.eye(n)
    # lead rows: V0/2 on the lead amplitude, G1 on the end cell
    matrix[0, 0] = half_hopping
    matrix[0, 1:3] = -lead.g
    matrix[-1, -1] = half_hopping
    matrix[-1, -3:-1] = -lead.g
    # G2+ columns: end cells coupled to the outgoing lead waves
    matrix[1:3, 0] = -lead.g * phase.forward
    matrix[-3:-1, -1] = -lead.g * phase.forward

    rhs = np.zeros(n + 2, dtype=complex)
    incoming = lead.g * phase.backward
    if incident == LEAD_SIDE.SOURCE:
        rhs[0] = -half_hopping
        rhs[1:3] = incoming
    elif incident == LEAD_SIDE.DRAIN:
        rhs[-1] = -half_hopping
        rhs[-3:-1] = incoming
    else:
        assert_never(incident)
    return matrix, rhs


def to_banded(matrix: np.ndarray, lower: int = BANDWIDTH[0], upper: int = BANDWIDTH[1]) -> np.ndarray:
    """LAPACK band storage: ab[upper + i - j, j] = matrix[i, j]."""
    n = matrix.shape[0]
    banded = np.zeros((lower + upper + 1, n), dtype=matrix.dtype)
    for offset in range(-lower, upper + 1):
        diagonal = np.diagonal(matrix, offset)
        if offset >= 0:
            banded[upper - offset, offset:] = diagonal
        else:
            banded[upper - offset, :n + offset] = diagonal
    return banded


def _relative_residual(matrix: np.ndarray, solution: np.ndarray, rhs: np.ndarray) -> float:
    scale = np.linalg.norm(matrix) * np.linalg.norm(solution) + np.linalg.norm(rhs)
    return float(np.linalg.norm(matrix @ solution - rhs) / scale)


def _banded_solve(banded: np.ndarray, rhs: np.ndarray, energy: complex) -> np.ndarray:
    try:
        solution = scipy.linalg.solve_banded(BANDWIDTH, banded, rhs, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SingularSystem(f'scattering system is singular at E={energy}: {e}') from e
    if not np.all(np.isfinite(solution)):
        raise SingularSystem(f'scattering system produced non-finite amplitudes at E={energy}')
    return solution


def solve_scattering(
        fl: FiniteLattice,
        lead: LeadParams,
        energy: IComplexEnergy,
        incident: LEAD_SIDE = LEAD_SIDE.SOURCE,
        lead_energy: LEAD_ENERGY = LEAD_ENERGY.ANALYTIC,
        tol: float = TOLERANCES.SOLVE_RESIDUAL,
) -> ScatteringSolution:
    """
    Solve the bordered system for the reflected and transmitted lead amplitudes.

    The banded LU factorization is checked against the residual contract; a failing residual gets
    one refinement pass before the point is reported as singular.
    """
    energy = complex(energy)
    matrix, rhs = assemble_scattering_system(fl, lead, energy, incident, lead_energy)
    banded = to_banded(matrix)
    solution = _banded_solve(banded, rhs, energy)
    residual = _relative_residual(matrix, solution, rhs)
    if residual > tol:
        logger.debug(f'residual {residual:.3e} at E={energy}, applying one refinement pass')
        solution = solution - _banded_solve(banded, matrix @ solution - rhs, energy)
        residual = _relative_residual(matrix, solution, rhs)
        if residual > tol:
            raise SingularSystem(f'residual {residual:.3e} exceeds {tol:.1e} at E={energy}')

    if incident == LEAD_SIDE.SOURCE:
        r0, t0 = solution[0], solution[-1]
    else:
        r0, t0 = solution[-1], solution[0]
    return ScatteringSolution(
        r0=complex(r0),
        t0=complex(t0),
        amplitudes=solution[1:-1].reshape(fl.n_cells, 2),
        phase=lead_phase(lead_energy_of(energy, lead_energy), lead),
        residual=residual,
        incident=incident,
    )
