"""Exact and 2-approximate k-Center on exact-rational graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Graph, as_rational
from .covering import SearchBudgetExceeded, cover_search

__all__ = [
    "CenterSet",
    "SearchBudgetExceeded",
    "approx2",
    "ball_masks",
    "candidate_radii",
    "center_set",
    "cost",
    "decide",
    "solve_exact",
]


@dataclass(frozen=True)
class CenterSet:
    centers: frozenset[int]
    cost: Fraction

    def __len__(self) -> int:
        return len(self.centers)


def _cost_units(graph: Graph, centers: Iterable[int]) -> int:
    rows = [graph.distance_units(c) for c in centers]
    if not rows:
        raise ValueError("center set must be non-empty")
    return max(min(col) for col in zip(*rows))


def cost(graph: Graph, centers: Iterable[int]) -> Fraction:
    """Covering radius: max over vertices of the distance to the nearest center."""
    return Fraction(_cost_units(graph, centers), graph.scale)


def center_set(graph: Graph, centers: Iterable[int]) -> CenterSet:
    centers = frozenset(centers)
    return CenterSet(centers, cost(graph, centers))


def ball_masks(graph: Graph, r) -> list[int]:
    """``masks[v]``: bitmask of every u with dist(u, v) <= r."""
    # distances are integers in units, so comparing against the floor is exact
    limit = math.floor(as_rational(r) * graph.scale)
    masks = []
    for v in range(len(graph)):
        m = 0
        for u, d in enumerate(graph.distance_units(v)):
            if d <= limit:
                m |= 1 << u
        masks.append(m)
    return masks


def decide(graph: Graph, k: int, r, node_budget: int | None = None) -> CenterSet | None:
    """Find at most ``k`` centers of covering radius at most ``r``, or None.

    Exact covering search over the radius-``r`` balls; see
    :func:`gtkcenter.covering.cover_search` for the branching and pruning
    rules. Raises :class:`SearchBudgetExceeded` when ``node_budget`` runs out.
    """
    if k < 1:
        raise ValueError("k must be positive")
    r = as_rational(r)
    if r < 0:
        raise ValueError("radius must be non-negative")
    balls = ball_masks(graph, r)
    found = cover_search(balls, (1 << len(graph)) - 1, k, node_budget)
    if found is None:
        return None
    return center_set(graph, found)


def candidate_radii(graph: Graph) -> list[Fraction]:
    """All distinct pairwise distances; the optimum is always one of them."""
    values = set()
    for s in range(len(graph)):
        values.update(graph.distance_units(s))
    return [Fraction(v, graph.scale) for v in sorted(values)]


def solve_exact(graph: Graph, k: int, node_budget: int | None = None) -> CenterSet:
    if k < 1:
        raise ValueError("k must be positive")
    radii = candidate_radii(graph)
    lo, hi = 0, len(radii) - 1
    best = decide(graph, k, radii[hi], node_budget)
    assert best is not None
    while lo < hi:
        mid = (lo + hi) // 2
        found = decide(graph, k, radii[mid], node_budget)
        if found is None:
            lo = mid + 1
        else:
            best, hi = found, mid
    return best


def approx2(graph: Graph, k: int) -> CenterSet:
    """Farthest-point traversal starting at vertex 0; ties go to the lowest id."""
    if k < 1:
        raise ValueError("k must be positive")
    n = len(graph)
    centers = [0]
    nearest = list(graph.distance_units(0))
    while len(centers) < min(k, n):
        far = max(range(n), key=lambda v: (nearest[v], -v))
        if nearest[far] == 0:
            break
        centers.append(far)
        nearest = [min(a, b) for a, b in zip(nearest, graph.distance_units(far))]
    return CenterSet(frozenset(centers), Fraction(max(nearest), graph.scale))
