import logging
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List

import numpy as np

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(verbosity: int = 0) -> None:
    """Install one stderr handler; -v gives INFO, -vv gives DEBUG."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)


@contextmanager
def stopwatch(costs: Dict[str, int], key: str = "micros") -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        costs[key] = costs.get(key, 0) + int((time.perf_counter() - start) * 1e6)


# Subgroups are stored as Python int bitsets: bit i is element i.

def mask_to_bits(mask: np.ndarray) -> int:
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bits_to_mask(bits: int, size: int) -> np.ndarray:
    nbytes = (size + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def bits_to_indices(bits: int) -> List[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def indices_to_bits(indices) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << int(i)
    return bits
