import json
from pathlib import Path
from typing import Any
from typing import Dict

import numpy as np
import pandas as pd
import scipy

import src
from src.consts import FORMATS
from src.types import SUBCOMMAND
from src.utils.config_types import RunConfig
from src.utils.experiment_runner import config_hash
from src.utils.experiment_runner import hashed_view


def meta_path(path: Path) -> Path:
    return path.with_suffix(FORMATS.META_SUFFIX)


def build_metadata(subcommand: SUBCOMMAND, config: RunConfig, **extra: Any) -> Dict[str, Any]:
    return {
        'subcommand': subcommand,
        'config': hashed_view(config),
        'config_hash': config_hash(config),
        'tolerances': config.get('tolerances', {}),
        'versions': {
            'package': src.__version__,
            'numpy': np.__version__,
            'scipy': scipy.__version__,
            'pandas': pd.__version__,
        },
        **extra,
    }


def write_csv(frame: pd.DataFrame, path: Path, metadata: Dict[str, Any]) -> Path:
    """Write frame as CSV with fixed float formatting plus a .meta.json sidecar."""
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FORMATS.CSV_FLOAT)
    with open(meta_path(path), 'w') as f:
        json.dump(metadata, f, indent=4, sort_keys=True)
    return path
