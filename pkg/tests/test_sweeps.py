import numpy as np
import pytest

from src.configs.overall_loss_shift import config as overall_loss_recipe
from src.consts import CSV_COLUMNS
from src.lattice.bloch import band_edges
from src.lattice.params import FiniteLattice
from src.lattice.params import LatticeParams
from src.spectra.finite import eigenvalues
from src.spectra.finite import open_chain_eigenvalues
from src.transport.sweeps import complex_energy_map
from src.transport.sweeps import find_peak_indices
from src.transport.sweeps import find_peaks
from src.transport.sweeps import gamma_shift_sweep
from src.transport.sweeps import transmission_map
from src.transport.sweeps import transmission_sweep
from src.types import LEAD_ENERGY
from src.types import SWEEP_AXIS


@pytest.mark.parametrize('values, expected', [
    ([0.0, 1.0, 0.0], [1]),
    ([0.0, 0.8, 0.8, 0.8, 0.1], [1]),
    ([0.0, 0.4, 0.0], []),
    ([1.0, 0.5, 0.0], []),
    ([0.0, 0.8, 0.8], []),
    ([0.0, 0.9, 0.0, np.nan, 0.0], [1]),
    ([0.0, 0.6, 0.2, 0.7, 0.7, 0.3], [1, 3]),
])
def test_find_peak_indices(values, expected):
    assert find_peak_indices(values).tolist() == expected


def test_find_peaks_validation():
    np.testing.assert_allclose(find_peaks([0.0, 0.1, 0.2], [0.0, 1.0, 0.0]), [0.1])
    with pytest.raises(ValueError):
        find_peaks([0.0, 0.1], [0.0, 1.0, 0.0])
    with pytest.raises(ValueError):
        find_peaks([0.0, 0.2, 0.1], [0.0, 1.0, 0.0])


def test_singular_points_are_recorded(lead):
    frame = transmission_sweep(FiniteLattice(n_cells=3), lead, [0.5, 1.0, 1.5])
    assert list(frame.columns) == CSV_COLUMNS.TRANSMIT
    assert frame['error'].tolist() == ['', 'SingularSystem', '']
    assert np.isnan(frame['T'][1])
    assert np.all(np.isfinite(frame['T'][[0, 2]]))


def test_transmission_sweep_rejects_complex_grid(lead, small_lattice):
    with pytest.raises(ValueError):
        transmission_sweep(small_lattice, lead, [0.5 + 0.1j])
    with pytest.raises(ValueError):
        transmission_sweep(small_lattice, lead, [])


def test_sweeps_are_worker_independent(lead):
    fl = FiniteLattice(n_cells=8, params=LatticeParams(gamma=1.0))
    energies = np.linspace(-5, 3, 41)
    serial = transmission_sweep(fl, lead, energies, workers=1)
    parallel = transmission_sweep(fl, lead, energies, workers=3)
    assert serial.equals(parallel)


def test_complex_energy_map_layout(lead, small_lattice):
    er = np.linspace(-1, 1, 5)
    ei = np.linspace(0, 0.4, 3)
    transmission = complex_energy_map(small_lattice, lead, er, ei)
    assert transmission.transmission.shape == (5, 3)
    frame = transmission.to_frame()
    assert list(frame.columns) == CSV_COLUMNS.COMPLEX_MAP
    assert len(frame) == 15
    # E_r is the outer axis
    np.testing.assert_allclose(frame['E_i [E]'][:3], ei)
    real_line = transmission_sweep(small_lattice, lead, er)['T'].to_numpy()
    np.testing.assert_allclose(transmission.line(0.0), real_line, rtol=1e-12)


@pytest.mark.parametrize('overall_loss', [0.1, 0.3, 0.5])
def test_overall_loss_equals_imaginary_energy_shift(lead, overall_loss):
    fl = FiniteLattice(n_cells=20, params=LatticeParams(gamma=1.0))
    er = np.linspace(-4, 3, 71)
    shifted = gamma_shift_sweep(fl, lead, er, [overall_loss])['T'].to_numpy()
    continued = complex_energy_map(fl, lead, er, [overall_loss], lead_energy=LEAD_ENERGY.REAL_PART)
    np.testing.assert_allclose(shifted, continued.line(overall_loss), rtol=1e-8, atol=1e-12)


def test_zero_overall_loss_is_the_plain_sweep(lead):
    fl = FiniteLattice(n_cells=10, params=LatticeParams(gamma=0.5))
    er = np.linspace(-4, 3, 57)
    shifted = gamma_shift_sweep(fl, lead, er, [0.0])
    plain = transmission_sweep(fl, lead, er)
    np.testing.assert_array_equal(shifted['T'].to_numpy(), plain['T'].to_numpy())


def test_gamma_shift_layout(lead, small_lattice):
    er = np.linspace(0, 2, 11)
    frame = gamma_shift_sweep(small_lattice, lead, er, [0.1, 0.3])
    assert list(frame.columns) == CSV_COLUMNS.GAMMA_SHIFT
    assert len(frame) == 22
    assert frame['Gamma [E]'].tolist() == [0.1] * 11 + [0.3] * 11
    assert len(gamma_shift_sweep(small_lattice, lead, er)) == 11
    with pytest.raises(ValueError):
        gamma_shift_sweep(small_lattice, lead, er, [])


@pytest.mark.parametrize('axis, columns', [
    (SWEEP_AXIS.GAMMA, CSV_COLUMNS.TRANSMIT_MAP_GAMMA),
    (SWEEP_AXIS.DELTA, CSV_COLUMNS.TRANSMIT_MAP_DELTA),
])
def test_transmission_map_layout(lead, small_lattice, axis, columns):
    frame = transmission_map(small_lattice, lead, axis, [0.0, 0.5, 1.0], np.linspace(-3, 3, 7))
    assert list(frame.columns) == columns
    assert len(frame) == 21
    assert frame[columns[0]].tolist()[:7] == [0.0] * 7


@pytest.mark.slow
@pytest.mark.parametrize('gamma', [0.5, 1.0, 1.5])
def test_gap_suppresses_transmission(lead, gamma):
    params = LatticeParams(gamma=gamma)
    low, high = band_edges(gamma, params).gap()
    margin = 0.01 * (high - low)
    energies = np.linspace(low + margin, high - margin, 21)
    frame = transmission_sweep(FiniteLattice(n_cells=100, params=params), lead, energies)
    assert set(frame['error']) == {''}
    assert frame['T'].max() < 1e-5


@pytest.mark.slow
def test_no_transmission_above_hermitian_band(lead):
    frame = transmission_sweep(FiniteLattice(n_cells=100), lead, [3.5])
    assert frame['T'][0] < 1e-10


@pytest.mark.slow
def test_evaporated_upper_band_blocks_transmission(lead):
    fl = FiniteLattice(n_cells=100, params=LatticeParams(gamma=2.5))
    frame = transmission_sweep(fl, lead, np.linspace(0.757, 3.0, 200))
    assert set(frame['error']) == {''}
    assert frame['T'].max() < 1e-5


@pytest.mark.slow
@pytest.mark.parametrize('overall_loss', [0.1, 0.3, 0.5])
def test_overall_loss_equals_imaginary_energy_shift_at_full_size(lead, overall_loss):
    fl = FiniteLattice(n_cells=100, params=LatticeParams(gamma=1.0))
    er = np.linspace(-5.5, 3.5, 512)
    shifted = gamma_shift_sweep(fl, lead, er, [overall_loss])['T'].to_numpy()
    continued = complex_energy_map(fl, lead, er, [overall_loss], lead_energy=LEAD_ENERGY.REAL_PART)
    assert np.all(np.isfinite(shifted))
    np.testing.assert_allclose(shifted, continued.line(overall_loss), rtol=0, atol=1e-8)


@pytest.mark.slow
def test_overall_loss_peaks(lead):
    threshold = overall_loss_recipe['tolerances']['peak_threshold']
    fl = FiniteLattice(n_cells=100, params=LatticeParams(gamma=1.0))
    er = np.linspace(0, 2, 801)
    transmission = gamma_shift_sweep(fl, lead, er, [0.1])['T'].to_numpy()
    for lo, hi, expected in [(0.0, 1.0, 0.54), (1.0, 2.0, 1.47)]:
        window = (er >= lo) & (er <= hi)
        indices = find_peak_indices(transmission[window], threshold)
        assert len(indices) > 0
        best = indices[np.argmax(transmission[window][indices])]
        assert er[window][best] == pytest.approx(expected, abs=0.02)


def test_hermitian_complex_map_peaks_on_real_axis(lead):
    # no poles above the real axis for a Hermitian lattice, so the largest T sits on E_i = 0
    fl = FiniteLattice(n_cells=20)
    er = np.linspace(-5.5, 3.5, 181)
    ei = np.linspace(0, 0.4, 17)
    transmission = complex_energy_map(fl, lead, er, ei).transmission
    _, row = np.unravel_index(np.nanargmax(transmission), transmission.shape)
    assert ei[row] == 0.0


def test_complex_map_ridge_at_broken_eigenvalue(lead):
    # N=20, gamma=1: the open chain has the broken pair 1 +- 0.5i
    fl = FiniteLattice(n_cells=20, params=LatticeParams(gamma=1.0))
    er = np.linspace(0.9, 1.1, 41)
    ei = np.linspace(0.3, 0.7, 81)
    transmission = complex_energy_map(fl, lead, er, ei).transmission
    col, row = np.unravel_index(np.nanargmax(transmission), transmission.shape)
    assert transmission[col, row] > 10
    ridge = complex(er[col], ei[row])

    values = eigenvalues(fl).eigenvalues
    nearest = values[np.argmin(np.abs(values - ridge))]
    assert nearest == pytest.approx(1 + 0.5j, abs=1e-9)
    # within two cells of an 81-point grid over E_i in [-1, 1]
    assert abs(ridge - nearest) <= 2 * 0.025


@pytest.mark.slow
def test_resonances_align_with_dispersive_modes(lead):
    n_cells = 100
    fl = FiniteLattice(n_cells=n_cells)
    energies = np.linspace(-4.95, 2.95, 3000)
    frame = transmission_sweep(fl, lead, energies)
    peaks = find_peaks(energies, frame['T'].to_numpy())
    # sine modes of the chain sites: eps = -t - 4d cos(m pi / (N + 1))
    modes = -1 - 4 * np.cos(np.arange(1, n_cells + 1) * np.pi / (n_cells + 1))
    assert len(peaks) >= 50
    for peak in peaks:
        assert np.min(np.abs(modes - peak)) < 0.01


@pytest.mark.slow
def test_resonance_spacing_widens_toward_exceptional_point(lead):
    # gamma = 1: the lower unbroken band ends at the EP energy t - gamma/2 = 0.5
    fl = FiniteLattice(n_cells=100, params=LatticeParams(gamma=1.0))
    energies = np.linspace(-0.6, 0.4, 4001)
    frame = transmission_sweep(fl, lead, energies)
    peaks = find_peaks(energies, frame['T'].to_numpy(), threshold=0.05)
    assert len(peaks) >= 5

    values = open_chain_eigenvalues(fl)
    real_modes = values[np.abs(values.imag) < 1e-9].real
    for peak in peaks:
        assert np.min(np.abs(real_modes - peak)) < 0.01
    nearest_to_ep = peaks[-5:]
    assert np.all(np.diff(np.diff(nearest_to_ep)) > 0)
