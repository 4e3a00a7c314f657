import copy
import hashlib
import importlib
import json
import time
from enum import Enum
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple
from typing import Union
from typing import get_args
from typing import get_origin
from typing import get_type_hints

import humanize
import numpy as np
from typing_extensions import assert_never
from typing_extensions import is_typeddict

from src.consts import DEFAULTS
from src.consts import FORMATS
from src.consts import TOLERANCES
from src.errors import ConfigError
from src.lattice.params import FiniteLattice
from src.lattice.params import LatticeParams
from src.lattice.params import LeadParams
from src.types import CONFIG_KEYS
from src.types import IConfigName
from src.types import LEAD_ENERGY
from src.types import SUBCOMMAND
from src.utils.config_types import GridsConfig
from src.utils.config_types import GridSpec
from src.utils.config_types import LatticeConfig
from src.utils.config_types import LeadConfig
from src.utils.config_types import RunConfig
from src.utils.config_types import TolerancesConfig

DEFAULT_CONFIG_NAME = IConfigName('default')


def default_config() -> RunConfig:
    return RunConfig(
        lattice=LatticeConfig(t=DEFAULTS.T, d=DEFAULTS.D, delta=DEFAULTS.DELTA, gamma=DEFAULTS.GAMMA),
        lead=LeadConfig(v0=DEFAULTS.V0, g=DEFAULTS.G),
        n_cells=DEFAULTS.N_CELLS,
        overall_loss=DEFAULTS.OVERALL_LOSS,
        grids=GridsConfig(k_points=DEFAULTS.K_POINTS),
        tolerances=TolerancesConfig(
            ep=TOLERANCES.EP,
            eigen_residual=TOLERANCES.EIGEN_RESIDUAL,
            equivalence=TOLERANCES.EQUIVALENCE,
            coalescence=TOLERANCES.COALESCENCE,
            track_max_step=TOLERANCES.TRACK_MAX_STEP,
            peak_threshold=TOLERANCES.PEAK_THRESHOLD,
        ),
        lead_energy=LEAD_ENERGY.ANALYTIC,
        track_seed=None,
        workers=DEFAULTS.WORKERS,
    )


def _load_json(path: Path) -> Dict[str, Any]:
    try:
        with open(path) as f:
            loaded = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f'config file not found: {path}') from e
    except json.JSONDecodeError as e:
        raise ConfigError(f'{path}:{e.lineno}:{e.colno}: {e.msg}') from e
    if not isinstance(loaded, dict):
        raise ConfigError(f'{path}: top level must be an object')
    return loaded


def load_config(config: Optional[str]) -> Tuple[IConfigName, Dict[str, Any]]:
    """
    Resolve --config into (name, raw config).

    A value ending in .json is read as a file; anything else names a recipe module under src.configs.
    """
    if config is None:
        return DEFAULT_CONFIG_NAME, {}
    if config.endswith('.json'):
        path = Path(config)
        return IConfigName(path.stem), _load_json(path)
    # Dynamically import the recipe
    try:
        config_module = importlib.import_module(f'src.configs.{config}')
    except ModuleNotFoundError as e:
        raise ConfigError(f'unknown recipe: {config}') from e
    return IConfigName(config), copy.deepcopy(dict(config_module.config))


def merge_config(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Nested merge; sections merge key by key, scalars and lists in override win."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _check(value: Any, hint: Any, key: str) -> Any:
    if is_typeddict(hint):
        if not isinstance(value, dict):
            raise ConfigError(f'{key}: expected a section, got {type(value).__name__}')
        hints = get_type_hints(hint)
        for unknown in sorted(value.keys() - hints.keys()):
            raise ConfigError(f'unknown key: {key}.{unknown}' if key else f'unknown key: {unknown}')
        for required in sorted(getattr(hint, '__required_keys__', frozenset()) - value.keys()):
            raise ConfigError(f'missing required key: {key}.{required}' if key else f'missing required key: {required}')
        return {
            name: _check(item, hints[name], f'{key}.{name}' if key else name)
            for name, item in value.items()
        }

    origin = get_origin(hint)
    if origin is Union:
        if value is None:
            return None
        inner, = [arg for arg in get_args(hint) if arg is not type(None)]
        return _check(value, inner, key)
    if origin in (list, List):
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f'{key}: expected a list, got {type(value).__name__}')
        item_hint, = get_args(hint)
        return [_check(item, item_hint, f'{key}[{i}]') for i, item in enumerate(value)]
    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f'{key}: expected a number, got {value!r}')
        return float(value)
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f'{key}: expected an integer, got {value!r}')
        return value
    if isinstance(hint, type) and issubclass(hint, Enum):
        try:
            return hint(value)
        except ValueError as e:
            raise ConfigError(f'{key}: expected one of {[str(member) for member in hint]}, got {value!r}') from e
    raise ConfigError(f'{key}: unsupported config type {hint}')


def validate_config(config: Dict[str, Any]) -> RunConfig:
    """Strict schema check; unknown keys, wrong types and malformed grids raise ConfigError."""
    checked: RunConfig = _check(config, RunConfig, '')
    grids = checked.get(CONFIG_KEYS.GRIDS, {})
    for name, spec in grids.items():
        if isinstance(spec, dict):
            if spec['points'] < 2:
                raise ConfigError(f'grids.{name}.points must be >= 2, got {spec["points"]}')
            if not spec['max'] > spec['min']:
                raise ConfigError(f'grids.{name}: max must exceed min')
    if grids.get('k_points', DEFAULTS.K_POINTS) < 2:
        raise ConfigError(f'grids.k_points must be >= 2, got {grids["k_points"]}')
    if checked.get(CONFIG_KEYS.WORKERS, 1) < 1:
        raise ConfigError(f'workers must be >= 1, got {checked["workers"]}')
    seed = checked.get(CONFIG_KEYS.TRACK_SEED)
    if seed is not None and len(seed) != 4:
        raise ConfigError(f'track_seed must be [Re eps1, Im eps1, Re eps2, Im eps2], got {seed}')
    return checked


def required_keys(subcommand: SUBCOMMAND) -> List[Tuple[str, ...]]:
    """Dotted keys each subcommand needs; a tuple lists alternatives of which one must be present."""
    if subcommand == SUBCOMMAND.BANDS:
        return []
    elif subcommand == SUBCOMMAND.PHASE_DIAGRAM:
        return [('grids.energy',), ('grids.gamma', 'grids.delta')]
    elif subcommand == SUBCOMMAND.SPECTRUM:
        return []
    elif subcommand == SUBCOMMAND.TRANSMIT:
        return [('grids.energy',)]
    elif subcommand == SUBCOMMAND.COMPLEX_MAP:
        return [('grids.energy',), ('grids.energy_imag',)]
    elif subcommand == SUBCOMMAND.GAMMA_SHIFT:
        return [('grids.energy',), ('grids.overall_loss_values',)]
    elif subcommand == SUBCOMMAND.FANO_CHECK:
        return []
    assert_never(subcommand)


def _has_key(config: Dict[str, Any], dotted: str) -> bool:
    node: Any = config
    for part in dotted.split('.'):
        if not isinstance(node, dict) or part not in node:
            return False
        node = node[part]
    return True


def resolve_config(subcommand: SUBCOMMAND, *layers: Dict[str, Any]) -> RunConfig:
    """DEFAULTS < recipe or JSON file < flag overrides, validated and checked for the subcommand's keys."""
    merged: Dict[str, Any] = dict(default_config())
    for layer in layers:
        merged = merge_config(merged, layer)
    config = validate_config(merged)
    for alternatives in required_keys(subcommand):
        if not any(_has_key(config, key) for key in alternatives):
            raise ConfigError(f'missing required key for {subcommand}: {" or ".join(alternatives)}')
    return config


def grid_values(spec: GridSpec) -> np.ndarray:
    return np.linspace(spec['min'], spec['max'], spec['points'])


def build_lattice(config: RunConfig) -> FiniteLattice:
    lattice = config[CONFIG_KEYS.LATTICE]
    return FiniteLattice(
        n_cells=config[CONFIG_KEYS.N_CELLS],
        params=LatticeParams(t=lattice['t'], d=lattice['d'], delta=lattice['delta'], gamma=lattice['gamma']),
        overall_loss=config[CONFIG_KEYS.OVERALL_LOSS],
    )


def build_lead(config: RunConfig) -> LeadParams:
    lead = config[CONFIG_KEYS.LEAD]
    return LeadParams(v0=lead['v0'], g=lead['g'])


def construct_experiment_name(config_name: IConfigName, subcommand: SUBCOMMAND) -> str:
    return '__'.join([config_name, subcommand])


def create_run_id(run_id: Optional[str]) -> str:
    return run_id if (run_id is not None) else time.strftime(FORMATS.TIME)


def hashed_view(config: RunConfig) -> Dict[str, Any]:
    """The config as it enters the hash and the metadata: everything but the worker count."""
    return {key: value for key, value in config.items() if key != CONFIG_KEYS.WORKERS}


def config_hash(config: RunConfig) -> str:
    canonical = json.dumps(hashed_view(config), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode()).hexdigest()


def grid_report(config: RunConfig) -> str:
    grids = config.get(CONFIG_KEYS.GRIDS, {})
    lines = [f'k points: {humanize.intcomma(grids.get("k_points", DEFAULTS.K_POINTS))}']
    for name, spec in grids.items():
        if isinstance(spec, dict):
            lines.append(f'{name}: [{spec["min"]}, {spec["max"]}] x {humanize.intcomma(spec["points"])}')
    if 'overall_loss_values' in grids:
        lines.append(f'overall loss values: {grids["overall_loss_values"]}')
    return '\n'.join(lines)
