import logging
import time
from pathlib import Path
from typing import Optional

import humanize
import numpy as np
import pandas as pd
from typing_extensions import assert_never

from src.consts import CSV_COLUMNS
from src.consts import FORMATS
from src.consts import PATHS
from src.errors import ConfigError
from src.fano.detangle import verify_equivalence
from src.lattice.bands import delta_band_map
from src.lattice.bands import hermitian_gap
from src.lattice.bands import phase_diagram
from src.lattice.bands import sample_bands
from src.lattice.bloch import band_edges
from src.lattice.bloch import critical_constants
from src.lattice.bloch import ep_lines
from src.lattice.params import FiniteLattice
from src.lattice.params import LatticeParams
from src.lattice.params import LeadParams
from src.spectra.finite import eigenvalues
from src.spectra.finite import eigenvalues_vs_gamma
from src.spectra.tracking import trace_pair_vs_gamma
from src.transport.sweeps import complex_energy_map
from src.transport.sweeps import find_peaks
from src.transport.sweeps import gamma_shift_sweep
from src.transport.sweeps import transmission_map
from src.transport.sweeps import transmission_sweep
from src.types import CONFIG_KEYS
from src.types import IConfigName
from src.types import SUBCOMMAND
from src.types import SWEEP_AXIS
from src.utils.config_types import GridsConfig
from src.utils.config_types import RunConfig
from src.utils.config_types import TolerancesConfig
from src.utils.experiment_runner import build_lattice
from src.utils.experiment_runner import build_lead
from src.utils.experiment_runner import construct_experiment_name
from src.utils.experiment_runner import create_run_id
from src.utils.experiment_runner import grid_report
from src.utils.experiment_runner import grid_values
from src.utils.output import build_metadata
from src.utils.output import write_csv


class Runner:
    def __init__(
            self,
            subcommand: SUBCOMMAND,
            config_name: IConfigName,
            config: RunConfig,
            out: Optional[Path] = None,
            run_id: Optional[str] = None,
    ):
        self._subcommand = subcommand
        self._config_name = config_name
        self._config = config
        self._run_id = create_run_id(run_id)
        self._out = Path(out) if out is not None else PATHS.RESULTS_DIR / self.relative_path

        self.logger = logging.getLogger(self.__class__.__name__)
        self.logger.setLevel(logging.INFO)
        self.logger.propagate = False

        # invalid parameters raise here, before any output is touched
        self.lattice: FiniteLattice = build_lattice(config)
        self.lead: LeadParams = build_lead(config)

    @property
    def relative_path(self) -> str:
        return f'{construct_experiment_name(self._config_name, self._subcommand)}/{self._run_id}.csv'

    @property
    def out(self) -> Path:
        return self._out

    @property
    def params(self) -> LatticeParams:
        return self.lattice.params

    @property
    def grids(self) -> GridsConfig:
        return self._config[CONFIG_KEYS.GRIDS]

    @property
    def tolerances(self) -> TolerancesConfig:
        return self._config[CONFIG_KEYS.TOLERANCES]

    @property
    def workers(self) -> int:
        return self._config[CONFIG_KEYS.WORKERS]

    def configure_logging(self):
        try:
            self.out.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(self.out.with_suffix(FORMATS.LOG_SUFFIX), mode='w')
        except OSError as e:
            raise ConfigError(f'output path is not writable: {self.out} ({e})') from e
        formatter = logging.Formatter(FORMATS.LOGGER_FORMAT)
        for handler in [logging.StreamHandler(), file_handler]:
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)

    def close_logging(self):
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)

    def _write(self, frame: pd.DataFrame, path: Optional[Path] = None, **extra) -> Path:
        path = write_csv(frame, path or self.out, build_metadata(self._subcommand, self._config, **extra))
        self.logger.info(f'Wrote {humanize.intcomma(len(frame))} rows to {path}')
        return path

    def run_bands(self) -> pd.DataFrame:
        p = self.params
        bands = sample_bands(p, self.grids['k_points'], self.tolerances['ep'])
        if p.is_pt_symmetric:
            gamma_c, eps_c = critical_constants(p)
            self.logger.info(f'gamma_c={gamma_c:g}, eps_c={eps_c:g}')
            self.logger.info(f'band edges: {band_edges(p.gamma, p)}')
            self.logger.info(f'EP lines: {ep_lines(abs(p.gamma), p)}')
        elif p.gamma == 0:
            self.logger.info(f'Hermitian gap: {hermitian_gap(p):.6g}')
        self.logger.info(f'max |eps+ + eps- + 4d cos k| = {bands.trace_residual(p):.3e}')
        return bands.to_frame()

    def run_phase_diagram(self) -> pd.DataFrame:
        energy_grid = grid_values(self.grids['energy'])
        if 'gamma' in self.grids:
            diagram = phase_diagram(
                self.params,
                grid_values(self.grids['gamma']),
                energy_grid,
                nk=self.grids['k_points'],
                tol=self.tolerances['ep'],
                workers=self.workers,
            )
            return diagram.to_frame(CSV_COLUMNS.PHASE_DIAGRAM)
        diagram = delta_band_map(
            self.params,
            grid_values(self.grids['delta']),
            energy_grid,
            nk=self.grids['k_points'],
            workers=self.workers,
        )
        return diagram.to_frame(CSV_COLUMNS.DELTA_DIAGRAM)

    def run_spectrum(self) -> pd.DataFrame:
        tol = self.tolerances['eigen_residual']
        if 'gamma' not in self.grids:
            return eigenvalues(self.lattice, tol).to_frame()

        gamma_grid = grid_values(self.grids['gamma'])
        seed = self._config.get(CONFIG_KEYS.TRACK_SEED)
        if seed is not None:
            trace = trace_pair_vs_gamma(
                self.lattice,
                gamma_grid,
                seed_pair=(complex(seed[0], seed[1]), complex(seed[2], seed[3])),
                max_step=self.tolerances['track_max_step'],
                coalescence=self.tolerances['coalescence'],
            )
            ep = {} if trace.ep is None else {
                'ep_gamma': trace.ep.gamma,
                'ep_energy': [trace.ep.energy.real, trace.ep.energy.imag],
                'ep_pair_distance': trace.ep.pair_distance,
            }
            if trace.ep is None:
                self.logger.info('No EP along the tracked pair')
            else:
                self.logger.info(f'EP at gamma={trace.ep.gamma:.9f}, eps={trace.ep.energy:.9f}')
            self._write(trace.to_frame(), self.out.with_suffix('.track.csv'), **ep)
        return eigenvalues_vs_gamma(self.lattice, gamma_grid, tol, self.workers)

    def _log_peaks(self, energies: np.ndarray, transmission: np.ndarray, label: str = ''):
        peaks = find_peaks(energies, transmission, self.tolerances['peak_threshold'])
        self.logger.info(f'{label}{len(peaks)} transmission peaks: {np.round(peaks[:10], 4)}'
                         + (' ...' if len(peaks) > 10 else ''))

    def run_transmit(self) -> pd.DataFrame:
        energy_grid = grid_values(self.grids['energy'])
        for axis in [SWEEP_AXIS.GAMMA, SWEEP_AXIS.DELTA]:
            if axis in self.grids:
                return transmission_map(
                    self.lattice,
                    self.lead,
                    axis,
                    grid_values(self.grids[axis]),
                    energy_grid,
                    workers=self.workers,
                )
        frame = transmission_sweep(self.lattice, self.lead, energy_grid, workers=self.workers)
        self._log_peaks(energy_grid, frame['T'].to_numpy())
        return frame

    def run_complex_map(self) -> pd.DataFrame:
        transmission = complex_energy_map(
            self.lattice,
            self.lead,
            grid_values(self.grids['energy']),
            grid_values(self.grids['energy_imag']),
            lead_energy=self._config[CONFIG_KEYS.LEAD_ENERGY],
            workers=self.workers,
        )
        return transmission.to_frame()

    def run_gamma_shift(self) -> pd.DataFrame:
        er_grid = grid_values(self.grids['energy'])
        frame = gamma_shift_sweep(
            self.lattice,
            self.lead,
            er_grid,
            self.grids['overall_loss_values'],
            workers=self.workers,
        )
        for overall_loss, block in frame.groupby(CSV_COLUMNS.GAMMA_SHIFT[0], sort=False):
            self._log_peaks(er_grid, block['T'].to_numpy(), label=f'Gamma={overall_loss:g}: ')
        return frame

    def run_fano_check(self) -> pd.DataFrame:
        report = verify_equivalence(self.lattice, self.tolerances['equivalence'])
        self.logger.info(
            f'Fano detangling preserves all {humanize.intcomma(report.n_eigenvalues)} eigenvalues '
            f'within {report.max_distance:.3e} (tol {report.tol:.1e})'
        )
        row = [self.lattice.n_cells, report.n_eigenvalues, report.max_distance, report.tol, report.passed]
        return pd.DataFrame([row], columns=CSV_COLUMNS.FANO_CHECK)

    def compute(self) -> pd.DataFrame:
        if self._subcommand == SUBCOMMAND.BANDS:
            return self.run_bands()
        elif self._subcommand == SUBCOMMAND.PHASE_DIAGRAM:
            return self.run_phase_diagram()
        elif self._subcommand == SUBCOMMAND.SPECTRUM:
            return self.run_spectrum()
        elif self._subcommand == SUBCOMMAND.TRANSMIT:
            return self.run_transmit()
        elif self._subcommand == SUBCOMMAND.COMPLEX_MAP:
            return self.run_complex_map()
        elif self._subcommand == SUBCOMMAND.GAMMA_SHIFT:
            return self.run_gamma_shift()
        elif self._subcommand == SUBCOMMAND.FANO_CHECK:
            return self.run_fano_check()
        assert_never(self._subcommand)

    def run(self) -> Path:
        self.configure_logging()
        try:
            self.logger.info(f'{self._subcommand} with {self._config_name}, N={self.lattice.n_cells}, '
                             f'{self.params}, {self.lead}, Gamma={self.lattice.overall_loss}')
            self.logger.info(grid_report(self._config))
            start = time.perf_counter()
            frame = self.compute()
            path = self._write(frame)
            self.logger.info(f'Finished in {humanize.naturaldelta(time.perf_counter() - start)}')
            return path
        finally:
            self.close_logging()
