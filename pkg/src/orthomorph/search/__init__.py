"""Brute-force engines that every theorem and construction is checked against."""
from .engine import (
    DEFAULT_NODE_BUDGET,
    Mode,
    SearchResult,
    SearchSpec,
    default_node_budget,
    existence_table,
    naive_oracle,
    search,
)

enumerate = search

__all__ = [
    "DEFAULT_NODE_BUDGET",
    "Mode",
    "SearchResult",
    "SearchSpec",
    "default_node_budget",
    "enumerate",
    "existence_table",
    "naive_oracle",
    "search",
]
