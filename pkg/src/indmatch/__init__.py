"""Exact solvers for deletion to induced matching.

Given a graph ``G`` and a budget ``k``, find at most ``k`` vertices whose
removal leaves a graph in which every component is a single edge.
"""

from .branching import BranchingVector, branching_number
from .dp import solve_dp
from .graph import Graph, degree_profile, delete_vertices, parse_graph, read_graph, serialize_graph
from .oracle import Solution, brute_force_extend, brute_force_ind, is_induced_matching
from .pathdecomp import (
    NicePathDecomposition,
    PathDecomposition,
    base_decompose,
    contract,
    decompose_for_instance,
    expand,
    make_nice,
    validate,
    width,
)
from .pipeline import IndAnswer, solve_extend, solve_ind, verify

__all__ = [
    "BranchingVector", "Graph", "IndAnswer", "NicePathDecomposition", "PathDecomposition",
    "Solution", "base_decompose", "branching_number", "brute_force_extend", "brute_force_ind",
    "contract", "decompose_for_instance", "degree_profile", "delete_vertices", "expand",
    "is_induced_matching", "make_nice", "parse_graph", "read_graph", "serialize_graph",
    "solve_dp", "solve_extend", "solve_ind", "validate", "verify", "width",
]
