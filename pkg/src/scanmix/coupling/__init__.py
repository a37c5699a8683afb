"""Couplings of block updates and the influence parameters built on them."""
from .core import (
    Coupling,
    greedy_coupling,
    identity_coupling,
    maximal_site_coupling,
    min_hamming_coupling,
    two_step_coupling,
)
from .edge import EdgeCoupling, edge_case_coupling, case_bounds, triangle_bound
from .influence import (
    STRATEGIES,
    InfluenceReport,
    discrepancy_pairs,
    local_pairs,
    rho_matrix,
    strategy_coupling,
)
from .recursive import BoundaryPair, RecursiveTreeCoupling, check_tree_block, recursive_tree_coupling

__all__ = [
    "Coupling", "greedy_coupling", "identity_coupling", "maximal_site_coupling",
    "min_hamming_coupling", "two_step_coupling", "EdgeCoupling", "edge_case_coupling",
    "case_bounds", "triangle_bound", "STRATEGIES", "InfluenceReport", "discrepancy_pairs",
    "local_pairs", "rho_matrix", "strategy_coupling", "BoundaryPair", "RecursiveTreeCoupling",
    "check_tree_block", "recursive_tree_coupling",
]
