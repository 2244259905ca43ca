"""Dedicated-sensor placement for structural observability of sparse networks.

The library models the zero/nonzero pattern of a linear network as a state
digraph, computes minimum sensor placements that make the network
structurally observable, and hardens a placement against the loss of any
single sensor or any single (directed or undirected) link by solving
weighted set-covering instances built from back-up and completion sets.
"""

from robsen.digraph import StateDigraph, SccDecomposition, scc_decompose, remove_link
from robsen.pnc import (
    Matching,
    PncDecomposition,
    FeasibleSolution,
    max_matching,
    min_pnc,
    can_force_tips,
    is_feasible,
    minimal_feasible,
)
from robsen.setcover import CoverInstance, CoverSolution, greedy_cover, exact_cover, harmonic
from robsen.srobust import backup_family, build_sensor_cover, srobust_solution, UncoverableError
from robsen.lrobust import sensitive_links, completion_family, build_link_cover, lrobust_solution
from robsen.counters import Counters

__all__ = [
    "StateDigraph",
    "SccDecomposition",
    "scc_decompose",
    "remove_link",
    "Matching",
    "PncDecomposition",
    "FeasibleSolution",
    "max_matching",
    "min_pnc",
    "can_force_tips",
    "is_feasible",
    "minimal_feasible",
    "CoverInstance",
    "CoverSolution",
    "greedy_cover",
    "exact_cover",
    "harmonic",
    "backup_family",
    "build_sensor_cover",
    "srobust_solution",
    "sensitive_links",
    "completion_family",
    "build_link_cover",
    "lrobust_solution",
    "UncoverableError",
    "Counters",
]

__version__ = "0.1.0"
