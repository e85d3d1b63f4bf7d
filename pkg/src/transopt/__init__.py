"""Exact solvers for tree vehicle routing, fuel caching and polygon paths."""

from .errors import (
    BudgetUnreachableError,
    CycleError,
    DisconnectedTreeError,
    InfeasibleError,
    InvalidPolygonError,
    NegativeLengthError,
    PlanInfeasibleError,
    SizeLimitError,
    TransoptError,
    ValidationError,
)
from .fuel import FuelInstance, make_fuel_instance, min_initial_fuel, simulate_route
from .hampath import (
    CurveInstance,
    SimplePolygon,
    curve_ham_path,
    curve_weighted_ham_path,
    shortest_ham_path_fixed_start,
    shortest_ham_path_free_start,
    visibility_matrix,
)
from .jeep import (
    JeepGraph,
    JeepParams,
    Subdivision,
    continuous_optimum,
    equal_subdivision,
    eval_equal_fast,
    eval_equal_naive,
    eval_subdivision_exact,
    graph_free_depots,
    graph_min_gas_backward,
    graph_min_gas_binary_forward,
    graph_vertex_depots_continuous,
    threshold_search,
)
from .ovrp import (
    OvrpInstance,
    OvrpSolution,
    single_vehicle_closed_form,
    solve_greedy,
    solve_knapsack_v1,
    solve_knapsack_v2,
    solve_leaf_interval,
)
from .tree import RootedTree, build_rooted_tree

__version__ = "0.1.0"

__all__ = [
    "BudgetUnreachableError",
    "CurveInstance",
    "CycleError",
    "DisconnectedTreeError",
    "FuelInstance",
    "InfeasibleError",
    "InvalidPolygonError",
    "JeepGraph",
    "JeepParams",
    "NegativeLengthError",
    "OvrpInstance",
    "OvrpSolution",
    "PlanInfeasibleError",
    "RootedTree",
    "SimplePolygon",
    "SizeLimitError",
    "Subdivision",
    "TransoptError",
    "ValidationError",
    "build_rooted_tree",
    "continuous_optimum",
    "curve_ham_path",
    "curve_weighted_ham_path",
    "equal_subdivision",
    "eval_equal_fast",
    "eval_equal_naive",
    "eval_subdivision_exact",
    "graph_free_depots",
    "graph_min_gas_backward",
    "graph_min_gas_binary_forward",
    "graph_vertex_depots_continuous",
    "make_fuel_instance",
    "min_initial_fuel",
    "shortest_ham_path_fixed_start",
    "shortest_ham_path_free_start",
    "simulate_route",
    "single_vehicle_closed_form",
    "solve_greedy",
    "solve_knapsack_v1",
    "solve_knapsack_v2",
    "solve_leaf_interval",
    "threshold_search",
    "visibility_matrix",
]
