"""Weight-vector normalisation shared by the public index builders."""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple


def pad_weights(tree, weights: Sequence) -> List[Optional[Tuple[int, ...]]]:
    """Per-node tuples indexed by node id, slot 0 holding None.

    Accepts either ``n`` entries (node ``i`` at position ``i - 1``) or ``n + 1``
    entries already indexed by node id.  Scalars become 1-tuples.
    """
    n = tree.n
    if len(weights) == n + 1:
        body = list(weights[1:])
    elif len(weights) == n:
        body = list(weights)
    else:
        raise ValueError(f"expected {n} weight vectors, got {len(weights)}")
    out = [None]
    d = None
    for x, w in enumerate(body, start=1):
        w = (w,) if isinstance(w, int) else tuple(w)
        if d is None:
            d = len(w)
        elif len(w) != d:
            from .errors import VectorDimensionMismatch
            raise VectorDimensionMismatch(f"node {x} has {len(w)} weights, expected {d}")
        out.append(w)
    return out
