from typing import Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from src.lattice.params import FiniteLattice
from src.lattice.params import LatticeParams
from src.lattice.params import LeadParams


def random_params(rng: np.random.Generator, delta: bool = True, gamma: bool = True) -> LatticeParams:
    return LatticeParams(
        t=float(rng.uniform(0.2, 2.0)),
        d=float(rng.choice([-1, 1]) * rng.uniform(0.2, 2.0)),
        delta=float(rng.uniform(-2.0, 2.0)) if delta else 0.0,
        gamma=float(rng.uniform(0.0, 3.0)) if gamma else 0.0,
    )


def paired_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest distance after optimal pairing of two equally sized complex multisets."""
    cost = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def _outgoing_root(energy: complex, v0: float) -> complex:
    # roots of z^2 + 2(E/V0) z + 1 = 0, i.e. E = -V0 (z + 1/z) / 2; keep the one with
    # Re(-i (z + E/V0)) >= 0, the principal-root branch
    roots = np.roots([1, 2 * energy / v0, 1])
    return complex(max(roots, key=lambda z: (-1j * (z + energy / v0)).real))


def transfer_matrix_amplitudes(fl: FiniteLattice, lead: LeadParams, energy: complex) -> Tuple[complex, complex]:
    """
    (r0, t0) from a transfer-matrix recursion through the effective single-chain problem.

    Eliminating the side sites f_n leaves a chain of p_n sites with on-site
    eps+ - t + (eps-)^2 / (E - eps+ - t), hopping -2d, and coupling -g sqrt(2) to the leads.
    """
    energy = complex(energy)
    z = _outgoing_root(energy, lead.v0)
    eps_plus = (fl.eps_a + fl.eps_b) / 2
    eps_minus = (fl.eps_a - fl.eps_b) / 2
    t, d = fl.params.t, fl.params.d
    effective = eps_plus - t + eps_minus ** 2 / (energy - eps_plus - t)

    # sites: phi_-2, phi_-1, p_1 .. p_N, phi_1, phi_2
    onsite = [0.0, 0.0] + [effective] * fl.n_cells + [0.0, 0.0]
    bonds = [-lead.v0 / 2, -lead.g * np.sqrt(2)] + [-2 * d] * (fl.n_cells - 1) + [-lead.g * np.sqrt(2), -lead.v0 / 2]

    def propagate(psi0: complex, psi1: complex) -> Tuple[complex, complex]:
        psi = [psi0, psi1]
        for s in range(1, len(onsite) - 1):
            psi.append(((energy - onsite[s]) * psi[s] - bonds[s - 1] * psi[s - 1]) / bonds[s])
        return psi[-2], psi[-1]

    a, c = propagate(z ** -2, z ** -1)
    b, dd = propagate(z ** 2, z)
    r0 = (z * a - c) / (dd - z * b)
    t0 = (a + r0 * b) / z
    return complex(r0), complex(t0)
