from concurrent.futures import ProcessPoolExecutor
from typing import Callable
from typing import List
from typing import Sequence
from typing import TypeVar

import numpy as np

T = TypeVar('T')
R = TypeVar('R')


def ordered_map(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """
    Apply fn to every item, preserving input order.

    workers <= 1 runs in-process; otherwise a bounded process pool is used. fn must be picklable
    (module-level function or functools.partial of one).
    """
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(fn, items))


def split_chunks(values: np.ndarray, workers: int) -> List[np.ndarray]:
    """Contiguous chunks of a grid, a few per worker so the pool stays busy."""
    n_chunks = max(1, min(len(values), 4 * max(workers or 1, 1)))
    return [chunk for chunk in np.array_split(np.asarray(values), n_chunks) if len(chunk)]
