import argparse
import sys
from pathlib import Path
from typing import List
from typing import Optional

from src.consts import EXIT_CODES
from src.errors import ConfigError
from src.errors import NumericalError
from src.runner import Runner
from src.types import CONFIG_KEYS
from src.types import IArgs
from src.types import SUBCOMMAND
from src.utils.argparse_utils import add_override_flags
from src.utils.argparse_utils import create_dict_from_argparse_remainder
from src.utils.argparse_utils import overrides_from_args
from src.utils.experiment_runner import load_config
from src.utils.experiment_runner import merge_config
from src.utils.experiment_runner import resolve_config


def run_one(main_args: IArgs, overrides: dict) -> Path:
    config_name, recipe = load_config(main_args.config)
    if main_args.workers is not None:
        overrides = merge_config(overrides, {CONFIG_KEYS.WORKERS: main_args.workers})
    config = resolve_config(main_args.subcommand, recipe, overrides)
    return Runner(
        subcommand=main_args.subcommand,
        config_name=config_name,
        config=config,
        out=main_args.out,
        run_id=main_args.run_id,
    ).run()


def main(main_args: IArgs, overrides: dict) -> int:
    try:
        run_one(main_args, overrides)
    except (ConfigError, ValueError) as e:
        print(f'config error: {e}', file=sys.stderr)
        return EXIT_CODES.CONFIG_ERROR
    except NumericalError as e:
        print(f'numerical failure ({e.__class__.__name__}): {e}', file=sys.stderr)
        return EXIT_CODES.NUMERICAL_FAILURE
    return EXIT_CODES.SUCCESS


def main_parser(argv: Optional[List[str]] = None) -> int:
    # python run_one.py transmit --config transmission_gamma0 --e-points 1024 --workers 4
    parser = argparse.ArgumentParser()
    parser.add_argument('subcommand', type=SUBCOMMAND, choices=list(SUBCOMMAND))
    parser.add_argument('--config', type=str, default=None, help='recipe name under src/configs or a .json path')
    parser.add_argument('--out', type=Path, default=None)
    parser.add_argument('--run_id', type=str, default=None)
    add_override_flags(parser)
    parser.add_argument('--set', dest='extra_args', nargs=argparse.REMAINDER,
                        help='dotted key/value pairs, e.g. --set tolerances.ep 1e-10')
    args = parser.parse_args(argv)

    try:
        extra = create_dict_from_argparse_remainder(args.extra_args)
    except ValueError as e:
        print(f'config error: {e}', file=sys.stderr)
        return EXIT_CODES.CONFIG_ERROR
    overrides = overrides_from_args(args)
    return main(
        main_args=IArgs(
            subcommand=args.subcommand,
            config=args.config,
            out=args.out,
            workers=args.workers,
            run_id=args.run_id,
        ),
        overrides=merge_config(extra, overrides),
    )


if __name__ == '__main__':
    sys.exit(main_parser())
