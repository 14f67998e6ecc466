"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from pathqueries.generate import preorder_relabel

T1_PARENTS = [1, 2, 2, 1]
T1_WEIGHTS = [3, 1, 5, 2, 4]
T1_VECTORS = [(3, 2), (1, 5), (5, 1), (2, 4), (4, 3)]


@st.composite
def parent_lists(draw, min_n=1, max_n=40):
    """Preorder-consistent parent lists for nodes 2..n."""
    n = draw(st.integers(min_n, max_n))
    raw = [draw(st.integers(1, i - 1)) for i in range(2, n + 1)]
    return preorder_relabel(raw)


@st.composite
def weighted_trees(draw, d=1, min_n=1, max_n=40, universe=None):
    """``(parents, weights)`` with ``d``-vectors in ``[1, universe]`` (default ``n``)."""
    parents = draw(parent_lists(min_n, max_n))
    n = len(parents) + 1
    u = universe or n
    weights = [tuple(draw(st.integers(1, u)) for _ in range(d)) for _ in range(n)]
    return parents, weights
