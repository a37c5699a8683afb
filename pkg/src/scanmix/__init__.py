"""Systematic-scan block dynamics for proper colourings, with exact influence
parameters, couplings and mixing-time measurement on small instances."""

from .coupling import STRATEGIES, InfluenceReport, edge_case_coupling, rho_matrix
from .dynamics import HeatBathKernel, apply_scan, make_rng, simulate
from .errors import ScanMixError
from .exact import (
    contraction_ratio,
    invariance_residual,
    mixing_time,
    scan_matrix,
    theorem_bound,
    tv_distance,
    worst_start_curve,
)
from .ring import RingSystem, demonstrate_nonmixing
from .spins import Block, BlockSchedule, Graph, SpinSystem, build_graph, cycle_graph, path_graph
from .tree import RootedTree, TreeBlockParams, build_tree_blocks, evaluate_bounds, search_parameters

__all__ = [
    "STRATEGIES", "InfluenceReport", "edge_case_coupling", "rho_matrix",
    "HeatBathKernel", "apply_scan", "make_rng", "simulate", "ScanMixError",
    "contraction_ratio", "invariance_residual", "mixing_time", "scan_matrix",
    "theorem_bound", "tv_distance", "worst_start_curve", "RingSystem",
    "demonstrate_nonmixing", "Block", "BlockSchedule", "Graph", "SpinSystem",
    "build_graph", "cycle_graph", "path_graph", "RootedTree", "TreeBlockParams",
    "build_tree_blocks", "evaluate_bounds", "search_parameters",
]
