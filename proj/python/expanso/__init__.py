"""Numerical laboratory for expansiveness of non-autonomous discrete systems.

The heavy lifting lives in the C++ extension; this package re-exports its
surface: grids, catalog systems, dynamical balls, classification and the
property suite.
"""

from expanso._core import (
    SampledSpace,
    System,
    build_grid,
    catalog_names,
    grid_distance,
    refine,
    system,
    verify,
)

__all__ = [
    "SampledSpace",
    "System",
    "build_grid",
    "catalog_names",
    "grid_distance",
    "refine",
    "system",
    "verify",
]
