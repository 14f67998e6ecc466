"""Multidimensional path queries on weighted ordinal trees.

Counting, reporting, successor and ancestor dominance reporting over trees
whose nodes carry ``d``-dimensional weight vectors, each checked against a
brute-force oracle.
"""
from .counting import CountingBase, PathCountingIndex
from .dominance import AncestorDominanceIndex, PathDominanceBase
from .errors import ParseError, PathQueryError, VectorDimensionMismatch
from .framework import QueryStats
from .harness import EngineConfig, Query, QueryEngine, TreeFile, parse_queries, parse_tree, rank_space_reduce
from .ordinal_tree import LabeledTree, OrdinalTree, build_tree
from .reporting import PathReportingIndex
from .successor import PathSuccessorIndex

__version__ = "0.1.0"

__all__ = [
    "AncestorDominanceIndex", "CountingBase", "ParseError", "PathQueryError",
    "VectorDimensionMismatch", "EngineConfig", "LabeledTree", "OrdinalTree",
    "PathCountingIndex", "PathDominanceBase", "PathReportingIndex", "PathSuccessorIndex",
    "Query", "QueryEngine", "QueryStats", "TreeFile", "build_tree", "parse_queries",
    "parse_tree", "rank_space_reduce",
]
