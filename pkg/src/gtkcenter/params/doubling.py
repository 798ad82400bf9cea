"""Doubling check with vertex-centered balls.

``doubling_check(graph, d)`` asks whether every ball ``B_2r(v)`` is covered by
``2^d`` balls of radius ``r`` centered at vertices. For fixed ``v`` the ball
``B_2r(v)`` only changes when ``2r`` crosses a distance from ``v``, and on each
such piece larger ``r`` only makes covering easier. The hardest radius of a
piece is its left end, so ``r = dist(v, w) / 2`` for every ``w`` suffices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..core import Graph
from ..covering import cover_search
from .highway import VertexBudgetExceeded

DEFAULT_VERTEX_BUDGET = 400


@dataclass(frozen=True)
class DoublingViolation:
    center: int
    radius: Fraction
    ball: frozenset[int]


def _greedy_count(within: np.ndarray, limit: int) -> int:
    # rows: candidate centers, columns: ball vertices still uncovered
    left = np.ones(within.shape[1], dtype=bool)
    used = 0
    while left.any():
        if used == limit:
            return used + 1
        gains = within[:, left].sum(axis=1)
        best = int(gains.argmax())
        left &= ~within[best]
        used += 1
    return used


def _exact_fits(within: np.ndarray, limit: int, node_budget: int | None) -> bool:
    sets = []
    for row in within:
        m = 0
        for col in np.flatnonzero(row):
            m |= 1 << int(col)
        sets.append(m)
    universe = (1 << within.shape[1]) - 1
    return cover_search(sets, universe, limit, node_budget) is not None


def doubling_violation(
    graph: Graph,
    d: int,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    node_budget: int | None = None,
) -> DoublingViolation | None:
    """The first ``(v, r)`` whose ``B_2r(v)`` needs more than ``2^d`` balls."""
    if d < 0:
        raise ValueError("d must be non-negative")
    size = len(graph)
    if size > vertex_budget:
        raise VertexBudgetExceeded(
            "doubling_check", size, vertex_budget, "raise the budget or use a smaller instance"
        )
    limit = 2**d
    dist = np.array(graph.distance_matrix_units(), dtype=np.int64)
    for v in range(size):
        row = dist[v]
        for two_r in sorted(set(row.tolist()) - {0}):
            # r = two_r / 2 exactly; compare doubled distances to stay integral
            target = np.flatnonzero(row <= two_r)
            if len(target) <= limit:
                continue
            cands = np.flatnonzero(2 * row <= 3 * two_r)
            within = 2 * dist[np.ix_(cands, target)] <= two_r
            if _greedy_count(within, limit) <= limit:
                continue
            if not _exact_fits(within, limit, node_budget):
                radius = Fraction(two_r, 2 * graph.scale)
                return DoublingViolation(v, radius, frozenset(int(t) for t in target))
    return None


def doubling_check(
    graph: Graph,
    d: int,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    node_budget: int | None = None,
) -> bool:
    return doubling_violation(graph, d, vertex_budget, node_budget) is None


def smallest_doubling_exponent(
    graph: Graph,
    max_d: int | None = None,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    node_budget: int | None = None,
) -> int:
    """Smallest ``d`` passing :func:`doubling_check`; at most ``ceil(log2 |V|)``."""
    top = max(0, (len(graph) - 1).bit_length()) if max_d is None else max_d
    for d in range(top + 1):
        if doubling_check(graph, d, vertex_budget, node_budget):
            return d
    return top + 1
