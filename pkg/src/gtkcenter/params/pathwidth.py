"""Path decompositions of the contracted reduction graph."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from ..core import Graph
from ..reduction import ReducedInstance, U, X, Y
from .highway import VertexBudgetExceeded

EXACT_VERTEX_LIMIT = 20


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


class DecompositionCheck(NamedTuple):
    valid: bool
    width: int
    violation: str | None


def verify_path_decomposition(graph: Graph, pd: PathDecomposition) -> DecompositionCheck:
    """Check coverage, edge containment and the interval property.

    The interval property is tested per vertex: the bags holding it must be
    consecutive.
    """
    width = pd.width
    where: dict[int, list[int]] = {}
    for idx, bag in enumerate(pd.bags):
        for v in bag:
            if not 0 <= v < len(graph):
                return DecompositionCheck(False, width, f"bag {idx} holds unknown vertex {v}")
            where.setdefault(v, []).append(idx)
    for v in range(len(graph)):
        if v not in where:
            return DecompositionCheck(False, width, f"vertex {v} is in no bag")
    for u, v, _ in graph.edges:
        if not any(u in bag and v in bag for bag in pd.bags):
            return DecompositionCheck(False, width, f"edge ({u}, {v}) is in no bag")
    for v, idxs in where.items():
        if idxs[-1] - idxs[0] + 1 != len(idxs):
            return DecompositionCheck(False, width, f"bags of vertex {v} are not consecutive: {idxs}")
    return DecompositionCheck(True, width, None)


# ---------------------------------------------------------------- contraction


def suppress_degree2(graph: Graph, keep: Iterable[int] = ()) -> Graph:
    """Suppress every degree-2 vertex not in ``keep``.

    The two edges at a suppressed vertex become one edge of summed length.
    If that edge already exists the shorter length is kept, which may create
    new degree-2 vertices; the process repeats until none is left. Labels of
    the surviving vertices are preserved.
    """
    keep = set(keep)
    adj: dict[int, dict[int, Fraction]] = {v: {} for v in range(len(graph))}
    for u, v, length in graph.edges:
        adj[u][v] = length
        adj[v][u] = length
    queue = sorted(v for v in adj if len(adj[v]) == 2 and v not in keep)
    while queue:
        w = queue.pop()
        if w not in adj or len(adj[w]) != 2:
            continue
        (a, la), (b, lb) = sorted(adj.pop(w).items())
        del adj[a][w], adj[b][w]
        joined = la + lb
        if b in adj[a]:
            joined = min(joined, adj[a][b])
        adj[a][b] = adj[b][a] = joined
        for t in (a, b):
            if len(adj[t]) == 2 and t not in keep:
                queue.append(t)
    old = sorted(adj)
    new_id = {v: k for k, v in enumerate(old)}
    edges = [(new_id[u], new_id[v], length) for u in old for v, length in adj[u].items() if u < v]
    return Graph([graph.label(v) for v in old], edges)


def contract_degree2(reduced: ReducedInstance) -> Graph:
    """Suppress the degree-2 vertices of the reduction, keeping the anchors ``x^h``."""
    g = reduced.graph
    return suppress_degree2(g, (v for v in range(len(g)) if isinstance(g.label(v), X)))


# ---------------------------------------------------------------- construction


def build_path_decomposition(reduced: ReducedInstance, contracted: Graph | None = None) -> PathDecomposition:
    """Gadget-by-gadget decomposition of :func:`contract_degree2` output.

    Per gadget the contracted cycle ``c_0 .. c_m`` gets bags
    ``{c_0, c_k, c_k+1}``. Each remaining portal-path vertex joins the bags
    spanning its cycle neighbours; the hub and the gadget's anchors join every
    bag, as do the anchors of the next ``chi`` gadgets in row-major order.
    Bag entries are vertex ids of the contracted graph.
    """
    g = contracted if contracted is not None else contract_degree2(reduced)
    chi = reduced.chi
    order = list(reduced.gadgets())
    anchors = {
        (i, j): {g.vertex(X(i, j, h)) for h in range(1, 5)} for i, j in order
    }
    bags: list[frozenset[int]] = []
    for pos, (i, j) in enumerate(order):
        cycle = []
        for vid, _ in reduced.cycles[i, j]:
            label = reduced.graph.label(vid)
            try:
                cycle.append(g.vertex(label))
            except KeyError:
                continue
        core = [{cycle[0], cycle[k], cycle[k + 1]} for k in range(1, len(cycle) - 1)]
        if not core:
            core = [set(cycle)]
        slot = {}
        for k, bag in enumerate(core):
            for c in bag:
                slot.setdefault(c, []).append(k)
        for b in range(1, reduced.n + 1):
            for h in (1, 3):
                try:
                    u = g.vertex(U(i, j, h, b))
                except KeyError:
                    continue
                spots = [k for nb in g.neighbors(u) for k in slot.get(nb, [])]
                if not spots:
                    continue
                for k in range(min(spots), max(spots) + 1):
                    core[k].add(u)
        shared = {g.vertex(Y(i, j))} | anchors[i, j]
        for later in order[pos + 1 : pos + 1 + chi]:
            shared |= anchors[later]
        bags.extend(frozenset(bag | shared) for bag in core)
    return PathDecomposition(tuple(bags))


# ---------------------------------------------------------------- exact value


def pathwidth_exact_tiny(graph: Graph, vertex_limit: int = EXACT_VERTEX_LIMIT) -> int:
    """Exact pathwidth as the vertex separation number.

    Dynamic programming over vertex subsets ``S`` (the vertices placed first):
    ``vs(S) = max(|boundary(S)|, min_v vs(S - v))`` where the boundary holds
    the members of ``S`` with a neighbour outside ``S``.
    """
    size = len(graph)
    if size > vertex_limit:
        raise VertexBudgetExceeded(
            "pathwidth_exact_tiny", size, vertex_limit, "use build_path_decomposition"
        )
    if size == 0:
        return 0
    subsets = np.arange(1 << size, dtype=np.int64)
    boundary = np.zeros(1 << size, dtype=np.int16)
    for v in range(size):
        nb = sum(1 << w for w in graph.neighbors(v))
        has_v = (subsets >> v) & 1 == 1
        leaks = (subsets & nb) != nb
        boundary += (has_v & leaks).astype(np.int16)
    popcount = np.zeros(1 << size, dtype=np.int8)
    for v in range(size):
        popcount += ((subsets >> v) & 1).astype(np.int8)
    best = np.full(1 << size, np.iinfo(np.int16).max, dtype=np.int16)
    best[0] = 0
    for k in range(1, size + 1):
        layer = subsets[popcount == k]
        low = np.full(len(layer), np.iinfo(np.int16).max, dtype=np.int16)
        for v in range(size):
            bit = np.int64(1) << v
            mask = (layer & bit) != 0
            low[mask] = np.minimum(low[mask], best[layer[mask] ^ bit])
        best[layer] = np.maximum(low, boundary[layer])
    return int(best[-1])

