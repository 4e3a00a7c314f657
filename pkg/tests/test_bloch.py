import numpy as np
import pytest

from src.errors import EdgeAbsent
from src.lattice.bands import band_extents
from src.lattice.bloch import band_edges
from src.lattice.bloch import band_energies
from src.lattice.bloch import bloch_hamiltonian
from src.lattice.bloch import classify_phase
from src.lattice.bloch import critical_constants
from src.lattice.bloch import critical_gamma_by_bisection
from src.lattice.bloch import ep_lines
from src.lattice.bloch import locate_ep_momenta
from src.lattice.params import LatticeParams
from src.types import PHASE_LABEL
from tests.helpers import paired_distance
from tests.helpers import random_params


def test_band_energies_match_dense_eigensolver(rng):
    for _ in range(10_000):
        p = random_params(rng)
        k = float(rng.uniform(-np.pi, np.pi))
        closed = np.array(band_energies(k, p))
        dense = np.linalg.eigvals(bloch_hamiltonian(k, p))
        scale = 1 + np.abs(dense).max()
        assert paired_distance(closed, dense) <= 1e-10 * scale


def test_band_energies_trace_identity(rng):
    p = random_params(rng)
    k = np.linspace(-np.pi, np.pi, 101)
    plus, minus = band_energies(k, p)
    np.testing.assert_allclose(plus + minus, -4 * p.d * np.cos(k) + 0j, atol=1e-12)


def test_band_energies_rejects_non_finite_momentum(unit_params):
    with pytest.raises(ValueError):
        band_energies(np.array([0.0, np.nan]), unit_params)
    with pytest.raises(ValueError):
        bloch_hamiltonian(np.inf, unit_params)


@pytest.mark.parametrize('k, expected', [
    (0.0, PHASE_LABEL.UNBROKEN),
    (np.pi, PHASE_LABEL.UNBROKEN),
    (2 * np.pi / 3, PHASE_LABEL.BROKEN),
    (np.arccos(-0.25), PHASE_LABEL.EXCEPTIONAL_POINT),
    (np.arccos(-0.75), PHASE_LABEL.EXCEPTIONAL_POINT),
])
def test_classify_phase(k, expected):
    assert classify_phase(k, LatticeParams(gamma=1.0)) == expected


def test_classify_phase_rejects_imbalance_and_bad_tol():
    with pytest.raises(ValueError):
        classify_phase(0.0, LatticeParams(delta=0.5, gamma=1.0))
    with pytest.raises(ValueError):
        classify_phase(0.0, LatticeParams(gamma=1.0), tol=0.0)


def test_critical_constants(unit_params):
    assert critical_constants(unit_params) == (2.0, 2.0)
    assert critical_constants(LatticeParams(t=0.5, d=1.0)) == (3.0, 2.0)


@pytest.mark.parametrize('gamma', [0.5, 1.0, 1.5])
def test_ep_momenta_sit_on_ep_lines(gamma):
    p = LatticeParams(gamma=gamma)
    momenta = locate_ep_momenta(p)
    lines = ep_lines(gamma, p)
    assert lines.ep1_present and lines.ep2_present
    assert len(momenta) == 2
    np.testing.assert_allclose(sorted(m.energy for m in momenta), [lines.ep1, lines.ep2], atol=1e-9)
    np.testing.assert_allclose([lines.ep1, lines.ep2], [1 - gamma / 2, 1 + gamma / 2])


def test_ep_lines_absent_beyond_zone():
    lines = ep_lines(7.0, LatticeParams())
    # cos k = (3.5 - 1) / 2 is out of range, cos k = (-3.5 - 1) / 2 too
    assert not lines.ep1_present
    assert not lines.ep2_present
    with pytest.raises(ValueError):
        ep_lines(-1.0, LatticeParams())


def test_critical_gamma_by_bisection(unit_params):
    assert critical_gamma_by_bisection(unit_params) == pytest.approx(2.0, abs=1e-6)
    assert critical_gamma_by_bisection(LatticeParams(t=2.0, d=1.0)) == 0.0


@pytest.mark.parametrize('gamma', [0.0, 1.0, 1.9])
def test_band_edges_match_k_scan(gamma):
    p = LatticeParams(gamma=gamma)
    edges = band_edges(gamma, p)
    extents = band_extents(p)
    assert edges.upper_present and edges.lower_present
    assert edges.upper_band_bottom == pytest.approx(extents.upper.bottom, abs=1e-6)
    assert edges.lower_band_top == pytest.approx(extents.lower.top, abs=1e-6)


def test_band_edges_hermitian_values(unit_params):
    assert band_edges(0.0, unit_params).gap() == pytest.approx((1.0, 1.0))
    low, high = band_edges(1.0, unit_params).gap()
    assert low == pytest.approx(-2 + np.sqrt(9 - 0.25))
    assert high == pytest.approx(2 - np.sqrt(1 - 0.25))


def test_evaporated_upper_band_has_no_gap_edge():
    edges = band_edges(3.0, LatticeParams(gamma=3.0))
    assert not edges.upper_present
    assert edges.lower_present
    with pytest.raises(EdgeAbsent):
        edges.gap()


def test_parameter_validation():
    with pytest.raises(ValueError):
        LatticeParams(d=0.0)
    with pytest.raises(ValueError):
        LatticeParams(gamma=np.nan)


@pytest.mark.parametrize('k, params, expected', [
    (0.0, LatticeParams(), [[-2, -3], [-3, -2]]),
    (np.pi, LatticeParams(gamma=1.0), [[2 + 0.5j, 1], [1, 2 - 0.5j]]),
    (np.pi / 2, LatticeParams(delta=1.0), [[0.5, -1], [-1, -0.5]]),
])
def test_bloch_hamiltonian_entries(k, params, expected):
    np.testing.assert_allclose(bloch_hamiltonian(k, params), expected, atol=1e-15)


@pytest.mark.parametrize('k, params, expected', [
    (0.0, LatticeParams(), (1.0, -5.0)),
    (2 * np.pi / 3, LatticeParams(gamma=1.0), (1 + 0.5j, 1 - 0.5j)),
    (np.pi, LatticeParams(gamma=2.0), (2.0, 2.0)),
])
def test_band_energies_values(k, params, expected):
    np.testing.assert_allclose(band_energies(k, params), expected, atol=1e-7)


def test_broken_pairs_share_the_chain_energy():
    p = LatticeParams(gamma=1.0)
    k = np.linspace(-np.pi, np.pi, 257)
    plus, minus = band_energies(k, p)
    broken = (1 + 2 * np.cos(k)) ** 2 < 0.25
    np.testing.assert_allclose(plus[broken].real, -2 * np.cos(k[broken]), atol=1e-12)
    np.testing.assert_allclose(plus[broken], minus[broken].conj(), atol=1e-12)
    np.testing.assert_allclose(plus[~broken].imag, 0, atol=1e-12)
