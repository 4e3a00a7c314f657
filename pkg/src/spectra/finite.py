import logging
from dataclasses import dataclass
from functools import partial
from typing import List
from typing import Optional
from typing import Sequence

import numpy as np
import pandas as pd
import scipy.linalg

from src.consts import CSV_COLUMNS
from src.consts import TOLERANCES
from src.errors import ConvergenceFailure
from src.lattice.params import FiniteLattice
from src.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    residual_norms: np.ndarray
    eigenvectors: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.eigenvalues)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(dict(zip(CSV_COLUMNS.SPECTRUM, [
            self.eigenvalues.real,
            self.eigenvalues.imag,
            self.residual_norms,
        ])))


def onsite_block(fl: FiniteLattice) -> np.ndarray:
    """H0 = [[eps_a, -t], [-t, eps_b]] with the overall loss folded into both on-site energies."""
    t = fl.params.t
    return np.array([
        [fl.eps_a, -t],
        [-t, fl.eps_b],
    ], dtype=complex)


def hopping_block(fl: FiniteLattice) -> np.ndarray:
    """H1 = -d [[1, 1], [1, 1]], coupling cell j to cell j+1."""
    return -fl.params.d * np.ones((2, 2), dtype=complex)


def assemble_hamiltonian(fl: FiniteLattice) -> np.ndarray:
    """2N x 2N block-tridiagonal Hamiltonian of the open chain, cell-major (a_1, b_1, a_2, b_2, ...)."""
    n = fl.n_cells
    shift = np.eye(n, k=1)
    h1 = hopping_block(fl)
    return (
            np.kron(np.eye(n), onsite_block(fl))
            + np.kron(shift, h1)
            + np.kron(shift.T, h1.conj().T)
    )


def _sorted(values: np.ndarray, *others: np.ndarray):
    order = np.lexsort((values.imag, values.real))
    return (values[order], *[other[..., order] for other in others])


def eigenvalues(
        fl: FiniteLattice,
        tol: float = TOLERANCES.EIGEN_RESIDUAL,
        with_eigenvectors: bool = False,
) -> SpectrumResult:
    """
    All 2N eigenvalues of the open chain from a dense general complex eigensolver.

    LAPACK's geev path (balancing, Hessenberg reduction, shifted QR) is used with no Hermiticity
    assumption. Residuals |H v - eps v| / |v| are checked against tol and the eigenvalue sum
    against trace(H).
    """
    if tol <= 0:
        raise ValueError(f'tol must be positive, got {tol}')
    hamiltonian = assemble_hamiltonian(fl)
    try:
        values, vectors = scipy.linalg.eig(hamiltonian, check_finite=True)
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f'QR iteration did not converge for N={fl.n_cells}: {e}') from e

    residuals = (
            np.linalg.norm(hamiltonian @ vectors - vectors * values[None, :], axis=0)
            / np.linalg.norm(vectors, axis=0)
    )
    if residuals.max() > tol:
        raise ConvergenceFailure(f'eigenpair residual {residuals.max():.3e} exceeds tol={tol:.1e}')

    trace_error = abs(values.sum() - np.trace(hamiltonian))
    if trace_error > TOLERANCES.TRACE_PER_CELL * fl.n_cells:
        raise ConvergenceFailure(f'eigenvalue sum misses trace(H) by {trace_error:.3e}')

    values, residuals, vectors = _sorted(values, residuals, vectors)
    return SpectrumResult(
        eigenvalues=values,
        residual_norms=residuals,
        eigenvectors=vectors if with_eigenvectors else None,
    )


def open_chain_eigenvalues(fl: FiniteLattice) -> np.ndarray:
    """
    Closed-form spectrum of the open chain.

    The cell-wise rotation splits every cell into a chain site p (on-site eps+ - t, hopping -2d)
    and a side site f (on-site eps+ + t) coupled by eps-. The sine modes of the open p-chain
    diagonalise both, leaving N independent 2x2 problems.
    """
    n = fl.n_cells
    t, d = fl.params.t, fl.params.d
    eps_plus = (fl.eps_a + fl.eps_b) / 2
    eps_minus = (fl.eps_a - fl.eps_b) / 2
    modes = eps_plus - t - 4 * d * np.cos(np.arange(1, n + 1) * np.pi / (n + 1))
    fano = eps_plus + t
    center = (modes + fano) / 2
    root = np.sqrt(((modes - fano) / 2) ** 2 + eps_minus ** 2 + 0j)
    values = np.concatenate([center + root, center - root])
    return _sorted(values)[0]


def _spectrum_at_gamma(gamma: float, fl: FiniteLattice, tol: float) -> np.ndarray:
    result = eigenvalues(fl.with_gamma(gamma), tol)
    return np.stack([result.eigenvalues.real, result.eigenvalues.imag, result.residual_norms], axis=1)


def eigenvalues_vs_gamma(
        fl: FiniteLattice,
        gamma_grid: Sequence[float],
        tol: float = TOLERANCES.EIGEN_RESIDUAL,
        workers: int = 1,
) -> pd.DataFrame:
    """Eigenvalue evolution with gain/loss, one row per (gamma, eigenvalue)."""
    gamma_grid = [float(gamma) for gamma in gamma_grid]
    blocks: List[np.ndarray] = ordered_map(partial(_spectrum_at_gamma, fl=fl, tol=tol), gamma_grid, workers)
    rows = np.concatenate([
        np.column_stack([np.full(len(block), gamma), block])
        for gamma, block in zip(gamma_grid, blocks)
    ])
    return pd.DataFrame(rows, columns=CSV_COLUMNS.SPECTRUM_VS_GAMMA)
