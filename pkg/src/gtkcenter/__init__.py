"""Exact-arithmetic laboratory for the Grid Tiling to k-Center reduction.

Modules:

* :mod:`gtkcenter.core` - rational graphs, canonical shortest paths, file formats
* :mod:`gtkcenter.gridtiling` - Grid Tiling with Inequality instances and solver
* :mod:`gtkcenter.reduction` - construction of the k-Center graph and solution maps
* :mod:`gtkcenter.kcenter` - exact and 2-approximate k-Center
* :mod:`gtkcenter.params` - skeleton, highway, doubling and pathwidth certificates
* :mod:`gtkcenter.harness` - structural checks, equivalence runs, sweeps, exports
"""

from .core import Graph, distance, dijkstra
from .gridtiling import GTInstance, GTSolution, augment, reduction_input, solve_bruteforce
from .kcenter import CenterSet, approx2, decide, solve_exact
from .reduction import ReducedInstance, build

__version__ = "0.1.0"

__all__ = [
    "CenterSet",
    "GTInstance",
    "GTSolution",
    "Graph",
    "ReducedInstance",
    "approx2",
    "augment",
    "build",
    "decide",
    "dijkstra",
    "distance",
    "reduction_input",
    "solve_bruteforce",
    "solve_exact",
]
