"""Maximum bicliques of twin-free bipartite graphs via bimodular decomposition."""
from .decomposition import (
    DecompNode,
    DecompositionTree,
    Kind,
    Shape,
    bimodularwidth,
    build_canonical_tree,
    build_lozin_tree,
    canonical_bimodules,
    maximal_canonical_bimodules,
    validate_tree,
)
from .engine import MaxbisizeSet, Objective, reduce_objective, solve, solve_tree
from .errors import *  # noqa: F401,F403
from .graph import BLACK, WHITE, BipartiteGraph, Color, bipartite_complement, find_twins, is_biclique, parse_graph
from .witness import Witness, reconstruct, verify_witness

__all__ = [
    "BLACK", "WHITE", "BipartiteGraph", "Color", "DecompNode", "DecompositionTree", "Kind",
    "MaxbisizeSet", "Objective", "Shape", "Witness", "bimodularwidth", "bipartite_complement",
    "build_canonical_tree", "build_lozin_tree", "canonical_bimodules", "find_twins", "is_biclique",
    "maximal_canonical_bimodules", "parse_graph", "reconstruct", "reduce_objective", "solve",
    "solve_tree", "validate_tree", "verify_witness",
]
