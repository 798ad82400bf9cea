"""Highway dimension: the explicit hitting family of the reduction and an exact
brute-force value for small graphs.

For a radius ``r`` the relevant paths near ``v`` are the shortest paths longer
than ``r`` that stay inside ``B_4r(v)``; ``hd`` is the largest minimum hitting
set over all ``(v, r)``. Shortest paths are the canonical ones from
:func:`gtkcenter.core.canonical_path`, taken from both endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..core import Graph, as_rational
from ..covering import bits, min_cover
from ..reduction import ReducedInstance, U, X, Y, Z

DEFAULT_VERTEX_BUDGET = 40


class VertexBudgetExceeded(RuntimeError):
    def __init__(self, what: str, size: int, budget: int, hint: str):
        super().__init__(f"{what} refuses graphs above {budget} vertices (got {size}); {hint}")
        self.size = size
        self.budget = budget


def q_cover(graph: Graph, path: Sequence[int], q) -> list[int]:
    """Greedy q-cover: start at the first vertex, then repeatedly take the
    first vertex at path distance at least ``q`` from the last member."""
    q = as_rational(q)
    if q <= 0:
        raise ValueError("q must be positive")
    if not path:
        return []
    chosen = [path[0]]
    run = Fraction(0)
    for prev, v in zip(path, path[1:]):
        run += graph.edge_length(prev, v)
        if run >= q:
            chosen.append(v)
            run = Fraction(0)
    return chosen


@dataclass(frozen=True)
class HittingFamily:
    radius: Fraction
    hitters: frozenset[int]
    per_ball_max: int
    ball_center: int

    def __len__(self) -> int:
        return len(self.hitters)


def _gadget_paths(reduced: ReducedInstance):
    for i, j in reduced.gadgets():
        for h in range(1, 5):
            yield reduced.quadrant_path(i, j, h)
        for h in (1, 3):
            yield reduced.portal_path(i, j, h)
        if i < reduced.chi:
            yield reduced.vertical_connector(i, j)
        if j < reduced.chi:
            yield reduced.horizontal_connector(i, j)


def anchor_set(reduced: ReducedInstance) -> set[int]:
    """All hubs, anchors and corners: nine vertices per gadget."""
    out = set()
    for i, j in reduced.gadgets():
        out.add(reduced.vid(Y(i, j)))
        for h in range(1, 5):
            out.add(reduced.vid(X(i, j, h)))
            out.add(reduced.vid(Z(i, j, h)))
    return out


def witness_hitters(reduced: ReducedInstance, r) -> frozenset[int]:
    """The hitting family ``H_r`` of the reduction.

    For ``r >= 2^(n+2)`` it is the anchor set; below, the ``r/4``-covers of all
    quadrant paths, portal paths and connectors are added together with the
    last portal-path vertices ``u^1_n`` and ``u^3_n``.
    """
    r = as_rational(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    hitters = anchor_set(reduced)
    if r >= 2 ** (reduced.n + 2):
        return frozenset(hitters)
    g = reduced.graph
    for path in _gadget_paths(reduced):
        hitters.update(q_cover(g, path, r / 4))
    for i, j in reduced.gadgets():
        for h in (1, 3):
            hitters.add(reduced.vid(U(i, j, h, reduced.n)))
    return frozenset(hitters)


def per_ball_maximum(graph: Graph, hitters: Iterable[int], radius) -> tuple[int, int]:
    """Largest ``|hitters ∩ B_radius(v)|`` over all v, with the first maximizer."""
    limit = math.floor(as_rational(radius) * graph.scale)
    hitters = sorted(hitters)
    best, center = -1, 0
    for v in range(len(graph)):
        row = graph.distance_units(v)
        count = sum(1 for h in hitters if row[h] <= limit)
        if count > best:
            best, center = count, v
    return best, center


def unhit_long_path(graph: Graph, hitters: Iterable[int], r) -> tuple[int, int] | None:
    """A pair ``(s, t)`` whose canonical path is longer than ``r`` but avoids
    every hitter, or None if all such paths are hit."""
    limit = math.floor(as_rational(r) * graph.scale)
    hit_set = set(hitters)
    for s in range(len(graph)):
        spt = graph.spt(s)
        hit = [False] * len(graph)
        for v in spt.order:
            p = spt.parent[v]
            hit[v] = v in hit_set or (p >= 0 and hit[p])
            if not hit[v] and spt.units[v] > limit:
                return (s, v)
    return None


def highway_witness(reduced: ReducedInstance, r) -> HittingFamily:
    r = as_rational(r)
    hitters = witness_hitters(reduced, r)
    best, center = per_ball_maximum(reduced.graph, hitters, 4 * r)
    return HittingFamily(r, hitters, best, center)


def radius_ladder(n: int) -> list[Fraction]:
    """Radii probing every scale of the reduction: powers of two and their
    midpoints from 1/4 up to 2^(n+3)."""
    out = set()
    for e in range(-2, n + 4):
        out.add(Fraction(2) ** e)
        out.add(Fraction(3, 2) * Fraction(2) ** e)
    return sorted(out)


# ---------------------------------------------------------------- exact value


@dataclass(frozen=True)
class HighwayDimension:
    value: int
    center: int
    radius: Fraction
    hitting_set: frozenset[int]


def _canonical_paths(graph: Graph):
    """Every canonical shortest path with at least one edge, as
    ``(length_units, vertex_mask)``, deduplicated by vertex set and length."""
    seen = {}
    for s in range(len(graph)):
        spt = graph.spt(s)
        masks = [0] * len(graph)
        for v in spt.order:
            p = spt.parent[v]
            masks[v] = (masks[p] if p >= 0 else 0) | 1 << v
            if p >= 0:
                key = masks[v]
                if seen.get(key, -1) < spt.units[v]:
                    seen[key] = spt.units[v]
    return [(length, mask) for mask, length in seen.items()]


def _minimal(masks: list[int]) -> list[int]:
    # hitting a subset hits every superset, so supersets can be dropped
    out: list[int] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(o & m == o for o in out):
            out.append(m)
    return out


def highway_dimension_exact(
    graph: Graph, vertex_budget: int = DEFAULT_VERTEX_BUDGET, node_budget: int | None = None
) -> HighwayDimension:
    """Exact ``hd`` by branch and bound over every relevant ``(v, r)``.

    A path ``p`` is relevant at ``(v, r)`` exactly for ``r`` in
    ``[maxdist(v, p) / 4, |p|)``. The family at any radius is contained in the
    family at the largest activation radius below it, so those activation
    radii are the only ones that need solving.
    """
    size = len(graph)
    if size > vertex_budget:
        raise VertexBudgetExceeded(
            "highway_dimension_exact", size, vertex_budget, "use highway_witness for an upper bound"
        )
    paths = _canonical_paths(graph)
    rows = graph.distance_matrix_units()
    best = HighwayDimension(0, 0, Fraction(0), frozenset())
    for v in range(size):
        row = rows[v]
        spans = []  # (activation in quarter units, length in quarter units, mask)
        for length, mask in paths:
            far = max(row[u] for u in bits(mask))
            if far < 4 * length:
                spans.append((far, 4 * length, mask))
        for start in sorted({s for s, _, _ in spans}):
            family = _minimal([m for s, end, m in spans if s <= start < end])
            if len(family) <= best.value:
                continue  # cannot beat the current maximum
            universe = (1 << len(family)) - 1
            sets = [0] * size
            for idx, m in enumerate(family):
                for u in bits(m):
                    sets[u] |= 1 << idx
            cover = min_cover(sets, universe, node_budget)
            assert cover is not None
            if len(cover) > best.value:
                radius = Fraction(start, 4 * graph.scale)
                best = HighwayDimension(len(cover), v, radius, frozenset(cover))
    return best
