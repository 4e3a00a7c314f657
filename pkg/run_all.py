import argparse
import sys
from pathlib import Path
from typing import List
from typing import Optional

import run_one
from src.consts import EXIT_CODES
from src.consts import PATHS
from src.types import IArgs
from src.types import IConfigName
from src.types import SUBCOMMAND
from src.utils.argparse_utils import create_dict_from_argparse_remainder
from src.utils.experiment_runner import construct_experiment_name

RECIPES = {
    'phase_diagram': SUBCOMMAND.PHASE_DIAGRAM,
    'bands_gamma0': SUBCOMMAND.BANDS,
    'bands_gamma1': SUBCOMMAND.BANDS,
    'bands_gamma2': SUBCOMMAND.BANDS,
    'bands_gamma3': SUBCOMMAND.BANDS,
    'transmission_gamma_map': SUBCOMMAND.TRANSMIT,
    'transmission_gamma0': SUBCOMMAND.TRANSMIT,
    'transmission_gamma05': SUBCOMMAND.TRANSMIT,
    'transmission_gamma1': SUBCOMMAND.TRANSMIT,
    'transmission_gamma15': SUBCOMMAND.TRANSMIT,
    'spectrum_ep_track': SUBCOMMAND.SPECTRUM,
    'complex_plane_gamma0': SUBCOMMAND.COMPLEX_MAP,
    'complex_plane_gamma1': SUBCOMMAND.COMPLEX_MAP,
    'complex_plane_gamma15': SUBCOMMAND.COMPLEX_MAP,
    'delta_phase_diagram': SUBCOMMAND.PHASE_DIAGRAM,
    'transmission_delta_map': SUBCOMMAND.TRANSMIT,
    'overall_loss_shift': SUBCOMMAND.GAMMA_SHIFT,
    'overall_loss_complex_plane': SUBCOMMAND.COMPLEX_MAP,
    'fano_check': SUBCOMMAND.FANO_CHECK,
}


def all_configs(
        out_dir: Path,
        run_id: Optional[str] = None,
        workers: Optional[int] = None,
        recipes: Optional[List[str]] = None,
) -> List[IArgs]:
    return [
        IArgs(
            subcommand=RECIPES[name],
            config=name,
            out=out_dir / f'{name}.csv',
            workers=workers,
            run_id=run_id,
        )
        for name in (recipes or RECIPES)
    ]


def main_parser() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument('--out_dir', type=Path, default=PATHS.RESULTS_DIR / 'recipes')
    parser.add_argument('--run_id', type=str, default=None)
    parser.add_argument('--workers', type=int, default=None)
    parser.add_argument('--recipes', nargs='+', choices=list(RECIPES), default=None)
    parser.add_argument('--set', dest='extra_args', nargs=argparse.REMAINDER)
    args = parser.parse_args()

    overrides = create_dict_from_argparse_remainder(args.extra_args)
    exit_code = EXIT_CODES.SUCCESS
    for main_args in all_configs(args.out_dir, args.run_id, args.workers, args.recipes):
        print(f"{'-' * 30} {construct_experiment_name(IConfigName(main_args.config), main_args.subcommand)} {'-' * 30}")
        exit_code = max(exit_code, run_one.main(main_args, overrides))
    return exit_code


if __name__ == '__main__':
    sys.exit(main_parser())
