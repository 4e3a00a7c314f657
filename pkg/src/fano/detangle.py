"""
Fano detangling of the cross-stitch lattice.

The cell-wise rotation p_n = (a_n + b_n)/sqrt(2), f_n = (a_n - b_n)/sqrt(2) turns the lattice into a
chain of p-sites with hopping 2d, each carrying a side-coupled Fano site f_n. The coupling
eps- = (eps_a - eps_b)/2 is real for a Hermitian imbalance and imaginary for gain/loss.
"""
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from src.consts import TOLERANCES
from src.errors import EquivalenceFailure
from src.lattice.params import FiniteLattice
from src.spectra.finite import assemble_hamiltonian
from src.spectra.finite import eigenvalues

logger = logging.getLogger(__name__)

CELL_ROTATION = np.array([[1, 1], [1, -1]], dtype=float) / np.sqrt(2)


@dataclass(frozen=True)
class FanoChain:
    n_cells: int
    chain_onsite: complex  # eps+ - t
    fano_onsite: complex  # eps+ + t
    chain_hopping: float  # 2d, entering the Hamiltonian as -2d
    coupling: complex  # eps-

    def cell_block(self) -> np.ndarray:
        return np.array([
            [self.chain_onsite, self.coupling],
            [self.coupling, self.fano_onsite],
        ], dtype=complex)

    def hamiltonian(self) -> np.ndarray:
        """2N x 2N Hamiltonian in per-cell (p_n, f_n) order."""
        shift = np.eye(self.n_cells, k=1)
        hopping = np.array([[-self.chain_hopping, 0], [0, 0]], dtype=complex)
        return (
                np.kron(np.eye(self.n_cells), self.cell_block())
                + np.kron(shift, hopping)
                + np.kron(shift.T, hopping)
        )

    def bloch_hamiltonian(self, k: float) -> np.ndarray:
        block = self.cell_block()
        block[0, 0] -= 2 * self.chain_hopping * np.cos(k)
        return block


def rotation_matrix(n_cells: int) -> np.ndarray:
    """Block-diagonal unitary applying the (1/sqrt 2)[[1, 1], [1, -1]] rotation to every cell."""
    if n_cells < 1:
        raise ValueError(f'n_cells must be >= 1, got {n_cells}')
    return np.kron(np.eye(n_cells), CELL_ROTATION)


def detangle(fl: FiniteLattice) -> FanoChain:
    eps_plus = (fl.eps_a + fl.eps_b) / 2
    eps_minus = (fl.eps_a - fl.eps_b) / 2
    return FanoChain(
        n_cells=fl.n_cells,
        chain_onsite=eps_plus - fl.params.t,
        fano_onsite=eps_plus + fl.params.t,
        chain_hopping=2 * fl.params.d,
        coupling=eps_minus,
    )


def rotated_hamiltonian(fl: FiniteLattice) -> np.ndarray:
    """R H R^T of the lattice Hamiltonian; equals detangle(fl).hamiltonian() up to rounding."""
    rotation = rotation_matrix(fl.n_cells)
    return rotation @ assemble_hamiltonian(fl) @ rotation.T


class EquivalenceReport(NamedTuple):
    n_eigenvalues: int
    max_distance: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_distance <= self.tol


def verify_equivalence(fl: FiniteLattice, tol: float = TOLERANCES.EQUIVALENCE) -> EquivalenceReport:
    """
    Compare the lattice spectrum with the spectrum of its detangled chain.

    Eigenvalues are paired by an optimal bipartite assignment on |lambda - mu| before taking the
    largest distance.

    Raises:
        EquivalenceFailure: the largest paired distance exceeds tol
    """
    if tol <= 0:
        raise ValueError(f'tol must be positive, got {tol}')
    lattice_values = eigenvalues(fl).eigenvalues
    chain_values = scipy.linalg.eigvals(detangle(fl).hamiltonian())
    cost = np.abs(lattice_values[:, None] - chain_values[None, :])
    rows, cols = linear_sum_assignment(cost)
    report = EquivalenceReport(
        n_eigenvalues=len(lattice_values),
        max_distance=float(cost[rows, cols].max()),
        tol=tol,
    )
    logger.debug(f'detangled spectrum matches within {report.max_distance:.3e}')
    if not report.passed:
        raise EquivalenceFailure(f'paired eigenvalue distance {report.max_distance:.3e} exceeds tol={tol:.1e}')
    return report
