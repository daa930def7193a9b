"""Vietoris-Rips collapses, tree-metric gradients, and Z/2 persistence."""

from ._core import (
    analyze,
    compatible_order,
    gradient,
    grid_sample,
    persistence,
    random_metric,
    random_tree,
    rips_dump,
    verify,
)

__all__ = [
    "analyze",
    "compatible_order",
    "gradient",
    "grid_sample",
    "persistence",
    "random_metric",
    "random_tree",
    "rips_dump",
    "verify",
]
