"""Exact-rational undirected graphs and canonical shortest-path trees.

All lengths are :class:`fractions.Fraction`. Internally every length is
rescaled by the least common multiple of the edge denominators so the
Dijkstra loop runs on plain Python integers; results are converted back to
``Fraction`` at the API boundary, so nothing is ever rounded.

Shortest paths are made unique by comparing candidate paths by
``(length, hop count, vertex-id sequence from the source)``.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

Rational = Fraction

GRAPH_FORMAT_VERSION = 1


class GraphError(ValueError):
    """Raised for malformed graphs (bad lengths, loops, parallel edges)."""


class DisconnectedGraphError(GraphError):
    def __init__(self, source: int, unreachable: int):
        super().__init__(f"vertex {unreachable} is unreachable from {source}")
        self.source = source
        self.unreachable = unreachable


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point lengths are not accepted; use Fraction or 'p/q'")
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def render_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


@dataclass(frozen=True)
class PointOnEdge:
    """A point of the geometric realization, ``offset`` away from ``ref``."""

    u: int
    v: int
    ref: int
    offset: Fraction

    def __post_init__(self):
        if self.ref not in (self.u, self.v):
            raise ValueError("reference endpoint must be an endpoint of the edge")
        if self.offset < 0:
            raise ValueError("offset must be non-negative")


class Graph:
    """Immutable undirected graph with positive rational edge lengths.

    Vertices are ``0..n-1``; ``labels[v]`` is an arbitrary hashable tag that
    the algorithms never look at.
    """

    def __init__(self, labels: Sequence[Hashable], edges: Iterable[tuple[int, int, object]]):
        self._labels = tuple(labels)
        n = len(self._labels)
        seen: set[tuple[int, int]] = set()
        clean: list[tuple[int, int, Fraction]] = []
        for u, v, length in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) references a missing vertex")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"parallel edge between {key[0]} and {key[1]}")
            seen.add(key)
            length = as_rational(length)
            if length <= 0:
                raise GraphError(f"edge {key} has non-positive length {length}")
            clean.append((u, v, length))
        self._edges = tuple(clean)
        self.scale = math.lcm(*(e[2].denominator for e in clean)) if clean else 1
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, length in clean:
            w = int(length * self.scale)
            adj[u].append((v, w))
            adj[v].append((u, w))
        for row in adj:
            row.sort()
        self._adj = tuple(tuple(row) for row in adj)
        self._spt_cache: dict[int, ShortestPathTree] = {}

    def __len__(self) -> int:
        return len(self._labels)

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self)}, |E|={len(self._edges)})"

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def edges(self) -> tuple[tuple[int, int, Fraction], ...]:
        return self._edges

    @property
    def adjacency_units(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Neighbour lists with lengths in units of ``1/scale``."""
        return self._adj

    def label(self, v: int) -> Hashable:
        return self._labels[v]

    @cached_property
    def _label_index(self) -> dict:
        return {label: v for v, label in enumerate(self._labels)}

    def vertex(self, label: Hashable) -> int:
        return self._label_index[label]

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self._adj[v]]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edge_length(self, u: int, v: int) -> Fraction:
        for w, units in self._adj[u]:
            if w == v:
                return Fraction(units, self.scale)
        raise KeyError((u, v))

    def with_edge_length(self, u: int, v: int, length) -> Graph:
        """Return a copy of the graph where edge ``{u, v}`` has a new length."""
        key = {u, v}
        found = False
        edges = []
        for a, b, old in self._edges:
            if {a, b} == key:
                edges.append((a, b, as_rational(length)))
                found = True
            else:
                edges.append((a, b, old))
        if not found:
            raise KeyError((u, v))
        return Graph(self._labels, edges)

    def spt(self, source: int) -> ShortestPathTree:
        """Cached canonical shortest-path tree rooted at ``source``."""
        tree = self._spt_cache.get(source)
        if tree is None:
            tree = dijkstra(self, source)
            self._spt_cache[source] = tree
        return tree

    def distance_units(self, u: int) -> tuple[int, ...]:
        return self.spt(u).units

    def distance_matrix_units(self) -> list[tuple[int, ...]]:
        return [self.spt(s).units for s in range(len(self))]

    def to_units(self, value) -> Fraction:
        return as_rational(value) * self.scale


@dataclass(frozen=True)
class ShortestPathTree:
    """Canonical shortest-path tree.

    ``units[v]`` is the distance in units of ``1/scale``; ``order`` records
    the settle order, which is the canonical order used for tie-breaking.
    """

    source: int
    scale: int
    parent: tuple[int, ...]
    hops: tuple[int, ...]
    units: tuple[int, ...]
    order: tuple[int, ...]

    def dist(self, v: int) -> Fraction:
        return Fraction(self.units[v], self.scale)

    def parent_length_units(self, v: int) -> int:
        p = self.parent[v]
        return 0 if p < 0 else self.units[v] - self.units[p]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v in self.order:
            p = self.parent[v]
            if p >= 0:
                kids[p].append(v)
        return tuple(tuple(sorted(k)) for k in kids)

    @cached_property
    def eccentricity_units(self) -> tuple[int, ...]:
        """For every v, max distance from v to a vertex in its subtree."""
        ecc = [0] * len(self.parent)
        for v in reversed(self.order):
            p = self.parent[v]
            if p >= 0:
                cand = ecc[v] + self.units[v] - self.units[p]
                if cand > ecc[p]:
                    ecc[p] = cand
        return tuple(ecc)

    def path_to(self, v: int) -> list[int]:
        path = [v]
        while path[-1] != self.source:
            path.append(self.parent[path[-1]])
        path.reverse()
        return path


def _lex_smaller(parent: list[int], p1: int, p2: int) -> bool:
    """Is the tree path to ``p1`` lexicographically smaller than to ``p2``?

    Both paths must have the same hop count.
    """
    a, b = p1, p2
    while parent[a] != parent[b]:
        a, b = parent[a], parent[b]
    return a < b


def dijkstra(graph: Graph, source: int) -> ShortestPathTree:
    n = len(graph)
    if not 0 <= source < n:
        raise IndexError(f"no vertex {source}")
    adj = graph.adjacency_units
    units: list[int | None] = [None] * n
    hops = [0] * n
    parent = [-1] * n
    done = [False] * n
    order: list[int] = []
    units[source] = 0
    heap = [(0, 0, source)]
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        d, h, v = pop(heap)
        if done[v] or d != units[v] or h != hops[v]:
            continue
        done[v] = True
        order.append(v)
        nh = h + 1
        for w, length in adj[v]:
            if done[w]:
                continue
            nd = d + length
            cur = units[w]
            if cur is None or nd < cur or (nd == cur and nh < hops[w]):
                units[w] = nd
                hops[w] = nh
                parent[w] = v
                push(heap, (nd, nh, w))
            elif nd == cur and nh == hops[w] and _lex_smaller(parent, v, parent[w]):
                parent[w] = v
    if len(order) != n:
        missing = next(v for v in range(n) if not done[v])
        raise DisconnectedGraphError(source, missing)
    return ShortestPathTree(
        source=source,
        scale=graph.scale,
        parent=tuple(parent),
        hops=tuple(hops),
        units=tuple(units),  # type: ignore[arg-type]
        order=tuple(order),
    )


def distance(graph: Graph, u: int, v: int) -> Fraction:
    return graph.spt(u).dist(v)


def ball(graph: Graph, v: int, r) -> set[int]:
    """All vertices at distance at most ``r`` from ``v`` (closed ball)."""
    r = as_rational(r)
    if r < 0:
        raise ValueError("radius must be non-negative")
    limit = r * graph.scale
    return {w for w, d in enumerate(graph.spt(v).units) if d <= limit}


def canonical_path(graph: Graph, u: int, v: int) -> list[int]:
    return graph.spt(u).path_to(v)


def path_length(graph: Graph, path: Sequence[int]) -> Fraction:
    return sum((graph.edge_length(a, b) for a, b in zip(path, path[1:])), Fraction(0))


def subtree_eccentricity(spt: ShortestPathTree, v: int) -> Fraction:
    return Fraction(spt.eccentricity_units[v], spt.scale)


def eccentricity(graph: Graph, v: int) -> Fraction:
    return Fraction(max(graph.spt(v).units), graph.scale)


def diameter(graph: Graph) -> Fraction:
    return Fraction(max(max(graph.spt(s).units) for s in range(len(graph))), graph.scale)


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices``; returns it with the new-id -> old-id map."""
    keep = sorted(set(vertices))
    new_id = {old: new for new, old in enumerate(keep)}
    edges = [
        (new_id[u], new_id[v], length)
        for u, v, length in graph.edges
        if u in new_id and v in new_id
    ]
    return Graph([graph.label(v) for v in keep], edges), keep


# ---------------------------------------------------------------- file formats


def graph_to_json(graph: Graph, render_label: Callable[[Hashable], str] = str) -> str:
    doc = {
        "version": GRAPH_FORMAT_VERSION,
        "vertices": [{"id": v, "label": render_label(lab)} for v, lab in enumerate(graph.labels)],
        "edges": [{"u": u, "v": v, "len": render_rational(length)} for u, v, length in graph.edges],
    }
    return json.dumps(doc, indent=1) + "\n"


def graph_from_json(text: str, parse_label: Callable[[str], Hashable] = str) -> Graph:
    doc = json.loads(text)
    if doc.get("version") != GRAPH_FORMAT_VERSION:
        raise GraphError(f"unsupported graph format version {doc.get('version')!r}")
    verts = sorted(doc["vertices"], key=lambda item: item["id"])
    if [item["id"] for item in verts] != list(range(len(verts))):
        raise GraphError("vertex ids must be dense 0..n-1")
    labels = [parse_label(item["label"]) for item in verts]
    edges = [(e["u"], e["v"], parse_rational(e["len"])) for e in doc["edges"]]
    return Graph(labels, edges)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(
    graph: Graph,
    render_label: Callable[[Hashable], str] = str,
    cluster_of: Callable[[int], str | None] | None = None,
) -> str:
    lines = ["graph G {"]
    clusters: dict[str, list[int]] = {}
    loose: list[int] = []
    for v in range(len(graph)):
        key = cluster_of(v) if cluster_of else None
        if key is None:
            loose.append(v)
        else:
            clusters.setdefault(key, []).append(v)
    for idx, (key, members) in enumerate(sorted(clusters.items())):
        lines.append(f"  subgraph cluster_{idx} {{")
        lines.append(f"    label={_dot_quote(key)};")
        for v in members:
            lines.append(f"    {v} [label={_dot_quote(render_label(graph.label(v)))}];")
        lines.append("  }")
    for v in loose:
        lines.append(f"  {v} [label={_dot_quote(render_label(graph.label(v)))}];")
    for u, v, length in graph.edges:
        lines.append(f"  {u} -- {v} [label={_dot_quote(render_rational(length))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
