"""Empirical space accounting in machine words.

Every container slot counts one word, as do scalars held directly by an
object; shared sub-objects are counted once.  Bytes are words times eight.
"""
from __future__ import annotations

import numpy as np

WORD_BYTES = 8


def measure_words(obj) -> int:
    seen = set()
    total = 0
    stack = [obj]
    while stack:
        o = stack.pop()
        if id(o) in seen or o is None or isinstance(o, (int, float, bool, str, type)):
            continue
        if callable(o) and not hasattr(o, "__dict__"):
            continue
        seen.add(id(o))
        if isinstance(o, np.ndarray):
            total += o.size
        elif isinstance(o, (list, tuple, set, frozenset)):
            total += len(o)
            stack.extend(o)
        elif isinstance(o, dict):
            total += 2 * len(o)
            stack.extend(o.keys())
            stack.extend(o.values())
        elif hasattr(o, "__dict__") and not callable(o):
            d = vars(o)
            total += len(d)
            stack.extend(d.values())
    return total


def measure_bytes(obj) -> int:
    return WORD_BYTES * measure_words(obj)
