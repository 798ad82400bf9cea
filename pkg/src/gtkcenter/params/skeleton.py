"""Skeleton cuts on the geometric realization of canonical shortest-path trees.

A point ``p`` of the tree ``T_s`` belongs to the skeleton when some vertex
``w`` whose tree path passes through ``p`` satisfies
``dist(s, p) <= 2 * dist(p, w)``. Witnesses range over vertices only, so on a
tree edge ``u -> c`` of length ``l`` the skeleton is the prefix ``[0, t*]``
with ``3 t* = 2 (l + f(c)) - dist(s, u)``, where ``f`` is the subtree
eccentricity.

Internally every radius is measured in sixths of a graph unit: ``t*`` needs a
factor 3, midpoints between breakpoints need another factor 2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from ..core import Graph, ShortestPathTree

_FINE = 6


@dataclass(frozen=True)
class SkeletonProfile:
    """Cut sizes of one skeleton as a piecewise-constant function of the radius.

    ``at_breakpoint[k]`` is the cut size at ``breakpoints[k]``; ``between[k]``
    is the size on the open interval ``(breakpoints[k], breakpoints[k+1])``.
    Beyond the last breakpoint the cut is empty.
    """

    source: int
    breakpoints: tuple[Fraction, ...]
    at_breakpoint: tuple[int, ...]
    between: tuple[int, ...]
    max_cut: tuple[Fraction, int]

    def cut_size(self, r) -> int:
        r = Fraction(r)
        bps = self.breakpoints
        if r < 0 or r > bps[-1]:
            return 0
        lo, hi = 0, len(bps) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if bps[mid] <= r:
                lo = mid
            else:
                hi = mid - 1
        if bps[lo] == r:
            return self.at_breakpoint[lo]
        return self.between[lo]


@dataclass(frozen=True)
class SkeletonPieces:
    """Raw skeleton geometry in sixths of a unit.

    ``segments`` holds ``(lo, hi, closed_hi)`` for the interior of each tree
    edge that carries skeleton points; ``points`` the skeleton vertices.
    """

    segments: tuple[tuple[int, int, bool], ...]
    points: tuple[int, ...]
    skeleton_vertices: frozenset[int]


def skeleton_pieces(spt: ShortestPathTree) -> SkeletonPieces:
    units = spt.units
    ecc = spt.eccentricity_units
    segments = []
    vertices = set()
    for v in spt.order:
        if 2 * ecc[v] >= units[v]:
            vertices.add(v)
        u = spt.parent[v]
        if u < 0:
            continue
        length = units[v] - units[u]
        reach3 = 2 * (length + ecc[v]) - units[u]  # 3 * t*
        if reach3 <= 0:
            continue
        full = reach3 >= 3 * length
        t6 = 6 * length if full else 2 * reach3
        lo = _FINE * units[u]
        # a full edge ends at the vertex v, which is counted as a point
        segments.append((lo, lo + t6, not full))
    points = tuple(sorted(_FINE * units[v] for v in vertices))
    return SkeletonPieces(tuple(segments), points, frozenset(vertices))


def skeleton_profile(graph: Graph, s: int) -> SkeletonProfile:
    """Exact cut-size profile of the skeleton rooted at ``s``."""
    spt = graph.spt(s)
    pieces = skeleton_pieces(spt)
    starts: Counter = Counter()
    ends: Counter = Counter()
    closed: Counter = Counter()
    marks = set(pieces.points)
    for lo, hi, closed_hi in pieces.segments:
        starts[lo] += 1
        ends[hi] += 1
        if closed_hi:
            closed[hi] += 1
        marks.add(lo)
        marks.add(hi)
    for v in range(len(graph)):
        marks.add(_FINE * spt.units[v])
    points = Counter(pieces.points)
    ordered = sorted(marks)

    at, between = [], []
    active = 0
    for x in ordered:
        active -= ends[x]
        at.append(active + points[x] + closed[x])
        active += starts[x]
        between.append(active)
    between.pop()  # nothing lies beyond the last breakpoint
    scale = _FINE * graph.scale
    bps = tuple(Fraction(x, scale) for x in ordered)

    # cuts are taken at positive radii only, so the source itself never counts
    best_r, best = Fraction(0), 0
    for k, x in enumerate(bps):
        if k > 0 and at[k] > best:
            best_r, best = x, at[k]
        if k < len(between) and between[k] > best:
            best_r, best = (x + bps[k + 1]) / 2, between[k]
    return SkeletonProfile(s, bps, tuple(at), tuple(between), (best_r, best))


@dataclass(frozen=True)
class SkeletonDimension:
    value: int
    source: int
    radius: Fraction


def skeleton_dimension(graph: Graph) -> SkeletonDimension:
    """Largest cut over all sources; ties go to the smallest source."""
    best = None
    for s in range(len(graph)):
        r, size = skeleton_profile(graph, s).max_cut
        if best is None or size > best.value:
            best = SkeletonDimension(size, s, r)
    assert best is not None
    return best


def in_skeleton(graph: Graph, source: int, w: int) -> bool:
    """Is vertex ``w`` a point of the skeleton of ``source``?"""
    return w in skeleton_pieces(graph.spt(source)).skeleton_vertices
