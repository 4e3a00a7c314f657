from pathlib import Path


class PATHS:
    PROJECT_DIR = Path(__file__).parent.parent.resolve()
    RESULTS_DIR = PROJECT_DIR / 'results'


class FORMATS:
    TIME = "%Y%m%d_%H-%M-%S"
    LOGGER_FORMAT = '%(asctime)s - %(message)s'
    CSV_FLOAT = '%.12e'
    META_SUFFIX = '.meta.json'
    LOG_SUFFIX = '.log'


class DEFAULTS:
    # t=d=1 lattice, leads at g=1 and V0=10
    T = 1.0
    D = 1.0
    DELTA = 0.0
    GAMMA = 0.0
    V0 = 10.0
    G = 1.0
    N_CELLS = 100
    OVERALL_LOSS = 0.0
    K_POINTS = 512
    WORKERS = 1


class TOLERANCES:
    EP = 1e-9
    EIGEN_RESIDUAL = 1e-8
    TRACE_PER_CELL = 1e-8
    EQUIVALENCE = 1e-9
    SOLVE_RESIDUAL = 1e-10
    COALESCENCE = 1e-7
    EP_GAMMA = 1e-12
    TRACK_MAX_STEP = 0.5
    TRACK_AMBIGUITY_RATIO = 2.0
    TRACK_SEED = 1e-3
    PEAK_THRESHOLD = 0.5
    PROPAGATING_MARGIN = 1e-12
    BISECTION_MAX_ITER = 200


class EXIT_CODES:
    SUCCESS = 0
    CONFIG_ERROR = 2
    NUMERICAL_FAILURE = 3


class CSV_COLUMNS:
    BANDS = ['k [rad]', 'Re eps+ [E]', 'Im eps+ [E]', 'Re eps- [E]', 'Im eps- [E]', 'phase']
    PHASE_DIAGRAM = ['gamma [E]', 'Re eps [E]', 'region']
    DELTA_DIAGRAM = ['delta [E]', 'Re eps [E]', 'region']
    SPECTRUM = ['Re eps [E]', 'Im eps [E]', 'residual [E]']
    SPECTRUM_VS_GAMMA = ['gamma [E]', 'Re eps [E]', 'Im eps [E]', 'residual [E]']
    TRACK = ['gamma [E]', 'Re eps1 [E]', 'Im eps1 [E]', 'Re eps2 [E]', 'Im eps2 [E]']
    TRANSMIT = ['E [E]', 'T', 'R', 'error']
    TRANSMIT_MAP_GAMMA = ['gamma [E]', 'E [E]', 'T', 'R', 'error']
    TRANSMIT_MAP_DELTA = ['delta [E]', 'E [E]', 'T', 'R', 'error']
    COMPLEX_MAP = ['E_r [E]', 'E_i [E]', 'T', 'error']
    GAMMA_SHIFT = ['Gamma [E]', 'E_r [E]', 'T', 'error']
    FANO_CHECK = ['N', 'eigenvalues', 'max distance [E]', 'tol [E]', 'passed']
