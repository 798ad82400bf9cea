"""Exact small set cover over bitmasks.

Elements are bit positions of ``universe``; ``sets[i]`` is the bitmask of
elements covered by set ``i``. The same search answers k-Center decisions
(sets are balls), hitting sets (sets are the paths through a vertex) and ball
covers for the doubling check.
"""

from __future__ import annotations

from typing import Sequence


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"covering search exceeded its budget of {nodes} nodes")
        self.nodes = nodes


def bits(mask: int):
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def transpose(sets: Sequence[int], universe: int) -> dict[int, int]:
    """For every element of ``universe``, the bitmask of sets containing it."""
    owners = {e: 0 for e in bits(universe)}
    for idx, s in enumerate(sets):
        for e in bits(s & universe):
            owners[e] |= 1 << idx
    return owners


def cover_search(
    sets: Sequence[int], universe: int, limit: int, node_budget: int | None = None
) -> list[int] | None:
    """Indices of at most ``limit`` sets whose union contains ``universe``, or None.

    Branches on the uncovered element with the fewest remaining candidate
    sets, skipping candidates whose gain is dominated by another candidate.
    Candidates tried at an ancestor are excluded in later siblings. Elements
    whose candidate sets are pairwise disjoint give a packing lower bound;
    when the bound is tight, only sets inside the packed candidates remain
    admissible.
    """
    if limit < 0:
        raise ValueError("limit must be non-negative")
    owners = transpose(sets, universe)
    if any(not o for o in owners.values()):
        return None
    # pack elements whose candidates overlap with few other elements first
    conflicts = {}
    for e, o in owners.items():
        reach = 0
        for u in bits(o):
            reach |= sets[u]
        conflicts[e] = (reach & universe).bit_count()
    packing_order = sorted(owners, key=lambda e: (conflicts[e], owners[e].bit_count(), e))
    nodes = 0

    def search(uncovered: int, excluded: int, left: int) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceeded(node_budget)
        if not uncovered:
            return []
        if left == 0:
            return None
        allowed = ~excluded
        used = 0
        lower = 0
        for e in packing_order:
            if not uncovered >> e & 1:
                continue
            cands = owners[e] & allowed
            if not cands:
                return None
            if not cands & used:
                used |= cands
                lower += 1
                if lower > left:
                    return None
        if lower == left:
            # tight: one set inside each packed candidate group, none elsewhere
            allowed = used
        best_cands, best_count = 0, -1
        for e in bits(uncovered):
            cands = owners[e] & allowed
            c = cands.bit_count()
            if best_count < 0 or c < best_count:
                best_cands, best_count = cands, c
                if c <= 1:
                    break
        if best_count == 0:
            return None
        ranked = [(u, sets[u] & uncovered) for u in bits(best_cands)]
        ranked.sort(key=lambda item: (-item[1].bit_count(), item[0]))
        kept: list[tuple[int, int]] = []
        for u, gain in ranked:
            if any(gain | g == g for _, g in kept):
                continue
            kept.append((u, gain))
        tried = 0
        for u, gain in kept:
            rest = search(uncovered & ~gain, ~allowed | tried, left - 1)
            if rest is not None:
                return [u] + rest
            tried |= 1 << u
        return None

    return search(universe, 0, limit)


def greedy_cover(sets: Sequence[int], universe: int) -> list[int] | None:
    """Classic greedy: repeatedly take the set covering most uncovered elements."""
    left = universe
    chosen = []
    while left:
        best, gain = -1, 0
        for idx, s in enumerate(sets):
            g = (s & left).bit_count()
            if g > gain:
                best, gain = idx, g
        if best < 0:
            return None
        chosen.append(best)
        left &= ~sets[best]
    return chosen


def min_cover(sets: Sequence[int], universe: int, node_budget: int | None = None) -> list[int] | None:
    """A minimum-size cover of ``universe``, or None if none exists."""
    best = greedy_cover(sets, universe)
    if best is None:
        return None
    while best:
        smaller = cover_search(sets, universe, len(best) - 1, node_budget)
        if smaller is None:
            break
        best = smaller
    return best
