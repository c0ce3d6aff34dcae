from .global_discount import discount_table, global_discount_graph, mincost_global_discount
from .gsp import CostGraph, GspResult, generalized_shortest_path, path_cost
from .outcome import Empty, Finite, SolveOutcome, Unbounded
from .solvers import (
    future_discount_graph,
    mincost_copyless_plus,
    mincost_future_discount,
    mincost_inc,
    mincost_minplus,
    mincost_past_discount,
    past_discount_graph,
)

__all__ = [
    "discount_table", "global_discount_graph", "mincost_global_discount",
    "CostGraph", "GspResult", "generalized_shortest_path", "path_cost",
    "Empty", "Finite", "SolveOutcome", "Unbounded",
    "future_discount_graph", "mincost_copyless_plus", "mincost_future_discount",
    "mincost_inc", "mincost_minplus", "mincost_past_discount", "past_discount_graph",
]
