"""Diameters of grid windows of gadgets."""

from __future__ import annotations

from fractions import Fraction

from ..core import diameter, induced_subgraph
from ..reduction import P, PP, ReducedInstance, gadget_of


def window_cells(chi: int, i: int, j: int, d: int) -> set[tuple[int, int]]:
    """Grid cells within L1 distance ``d`` of ``(i, j)``, clipped to the grid."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return {
        (a, b)
        for a in range(1, chi + 1)
        for b in range(1, chi + 1)
        if abs(a - i) + abs(b - j) <= d
    }


def window_vertices(reduced: ReducedInstance, i: int, j: int, d: int) -> list[int]:
    """Vertices of the window's gadgets plus connector interiors joining two of them."""
    if not (1 <= i <= reduced.chi and 1 <= j <= reduced.chi):
        raise ValueError(f"cell ({i}, {j}) lies outside the {reduced.chi}x{reduced.chi} grid")
    cells = window_cells(reduced.chi, i, j, d)
    out = []
    for v, label in enumerate(reduced.graph.labels):
        if isinstance(label, P):
            inside = (label.i, label.j) in cells and (label.i + 1, label.j) in cells
        elif isinstance(label, PP):
            inside = (label.i, label.j) in cells and (label.i, label.j + 1) in cells
        else:
            inside = gadget_of(label) in cells
        if inside:
            out.append(v)
    return out


def window_diameter(reduced: ReducedInstance, i: int, j: int, d: int) -> Fraction:
    """Exact diameter of the subgraph induced by the window around ``(i, j)``."""
    sub, _ = induced_subgraph(reduced.graph, window_vertices(reduced, i, j, d))
    return diameter(sub)
