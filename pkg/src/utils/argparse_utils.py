import argparse
import json
from typing import Any
from typing import Dict
from typing import List
from typing import Optional

# argparse dest -> dotted config key
FLAG_TO_KEY = {
    't': 'lattice.t',
    'd': 'lattice.d',
    'delta': 'lattice.delta',
    'gamma': 'lattice.gamma',
    'Gamma': 'overall_loss',
    'N': 'n_cells',
    'V0': 'lead.v0',
    'g': 'lead.g',
    'k_points': 'grids.k_points',
    'e_min': 'grids.energy.min',
    'e_max': 'grids.energy.max',
    'e_points': 'grids.energy.points',
    'ei_min': 'grids.energy_imag.min',
    'ei_max': 'grids.energy_imag.max',
    'ei_points': 'grids.energy_imag.points',
    'gamma_min': 'grids.gamma.min',
    'gamma_max': 'grids.gamma.max',
    'gamma_points': 'grids.gamma.points',
    'delta_min': 'grids.delta.min',
    'delta_max': 'grids.delta.max',
    'delta_points': 'grids.delta.points',
    'lead_energy': 'lead_energy',
    'workers': 'workers',
}


def set_dotted(config: Dict[str, Any], dotted: str, value: Any):
    *parents, leaf = dotted.split('.')
    node = config
    for part in parents:
        node = node.setdefault(part, {})
    node[leaf] = value


def add_override_flags(parser: argparse.ArgumentParser):
    parser.add_argument('--t', type=float)
    parser.add_argument('--d', type=float)
    parser.add_argument('--delta', type=float)
    parser.add_argument('--gamma', type=float)
    parser.add_argument('--Gamma', type=float, help='overall loss on every lattice site')
    parser.add_argument('--N', type=int, help='number of unit cells')
    parser.add_argument('--V0', type=float)
    parser.add_argument('--g', type=float)
    parser.add_argument('--k-points', type=int)
    for prefix in ['e', 'ei', 'gamma', 'delta']:
        parser.add_argument(f'--{prefix}-min', type=float)
        parser.add_argument(f'--{prefix}-max', type=float)
        parser.add_argument(f'--{prefix}-points', type=int)
    parser.add_argument('--lead-energy', type=str)
    parser.add_argument('--workers', type=int)


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    for dest, dotted in FLAG_TO_KEY.items():
        value = getattr(args, dest, None)
        if value is not None:
            set_dotted(overrides, dotted, value)
    return overrides


def create_dict_from_argparse_remainder(remainder_args: Optional[List[str]]) -> Dict[str, Any]:
    """
    Turn `--set key.path value ...` pairs into a nested override dict.

    Values are parsed as JSON when possible (numbers, lists, null) and kept as strings otherwise.
    """
    kwargs: Dict[str, Any] = {}
    if remainder_args is not None:
        if len(remainder_args) % 2 != 0:
            raise ValueError('Extra args must be key-value pairs')
        for i in range(0, len(remainder_args), 2):
            try:
                value = json.loads(remainder_args[i + 1])
            except json.JSONDecodeError:
                value = remainder_args[i + 1]
            set_dotted(kwargs, remainder_args[i], value)

    return kwargs
