import numpy as np
import pytest

from src.errors import EquivalenceFailure
from src.fano.detangle import detangle
from src.fano.detangle import rotated_hamiltonian
from src.fano.detangle import rotation_matrix
from src.fano.detangle import verify_equivalence
from src.lattice.bloch import band_energies
from src.lattice.params import FiniteLattice
from src.lattice.params import LatticeParams
from tests.helpers import paired_distance
from tests.helpers import random_params


def test_chain_couplings():
    chain = detangle(FiniteLattice(n_cells=3, params=LatticeParams(t=0.7, d=1.3, delta=0.4, gamma=1.0)))
    assert chain.chain_onsite == pytest.approx(-0.7)
    assert chain.fano_onsite == pytest.approx(0.7)
    assert chain.chain_hopping == pytest.approx(2.6)
    assert chain.coupling == pytest.approx(0.2 + 0.5j)


def test_coupling_is_real_for_imbalance_and_imaginary_for_gain_loss():
    imbalance = detangle(FiniteLattice(n_cells=2, params=LatticeParams(delta=1.0)))
    gain_loss = detangle(FiniteLattice(n_cells=2, params=LatticeParams(gamma=1.0)))
    assert imbalance.coupling.imag == 0 and imbalance.coupling.real == pytest.approx(0.5)
    assert gain_loss.coupling.real == 0 and gain_loss.coupling.imag == pytest.approx(0.5)


def test_overall_loss_enters_both_onsite_energies():
    chain = detangle(FiniteLattice(n_cells=2, overall_loss=0.2))
    assert chain.chain_onsite == pytest.approx(-1 - 0.2j)
    assert chain.fano_onsite == pytest.approx(1 - 0.2j)


def test_rotation_is_orthogonal():
    rotation = rotation_matrix(5)
    np.testing.assert_allclose(rotation @ rotation.T, np.eye(10), atol=1e-15)
    with pytest.raises(ValueError):
        rotation_matrix(0)


def test_rotated_hamiltonian_is_the_fano_chain(rng):
    for _ in range(20):
        fl = FiniteLattice(
            n_cells=int(rng.integers(1, 8)),
            params=random_params(rng),
            overall_loss=float(rng.uniform(0, 0.5)),
        )
        np.testing.assert_allclose(rotated_hamiltonian(fl), detangle(fl).hamiltonian(), atol=1e-12)


def test_chain_bloch_form_matches_bands(rng):
    for _ in range(50):
        p = random_params(rng)
        k = float(rng.uniform(-np.pi, np.pi))
        chain = detangle(FiniteLattice(n_cells=1, params=p))
        values = np.linalg.eigvals(chain.bloch_hamiltonian(k))
        assert paired_distance(values, np.array(band_energies(k, p))) < 1e-10


def test_verify_equivalence(rng):
    for n_cells in [1, 4, 30]:
        fl = FiniteLattice(n_cells=n_cells, params=random_params(rng), overall_loss=0.1)
        report = verify_equivalence(fl)
        assert report.passed
        assert report.n_eigenvalues == 2 * n_cells


def test_verify_equivalence_small_chain():
    report = verify_equivalence(FiniteLattice(n_cells=5, params=LatticeParams(gamma=1.0)))
    assert report.max_distance <= 1e-12


def test_single_cell_imbalance():
    fl = FiniteLattice(n_cells=1, params=LatticeParams(delta=2.0))
    expected = np.linalg.eigvals(np.array([[1.0, -1.0], [-1.0, -1.0]]))
    assert paired_distance(np.linalg.eigvals(detangle(fl).hamiltonian()), expected) < 1e-12
    assert verify_equivalence(fl).passed


@pytest.mark.parametrize('gamma', [0.0, 0.5, 1.0])
def test_verify_equivalence_at_scale(gamma):
    report = verify_equivalence(FiniteLattice(n_cells=100, params=LatticeParams(gamma=gamma)))
    assert report.n_eigenvalues == 200
    assert report.max_distance < 1e-9


def test_verify_equivalence_failure(small_lattice):
    with pytest.raises(EquivalenceFailure):
        verify_equivalence(small_lattice, tol=1e-300)
    with pytest.raises(ValueError):
        verify_equivalence(small_lattice, tol=0.0)
