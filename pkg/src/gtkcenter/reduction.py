"""Build the k-Center graph G_I from a b-covered Grid Tiling instance.

Each cell ``(i, j)`` becomes a gadget: a cycle split into four quadrants
``h = 1..4`` starting at corners ``z^h``; per pair ``(a, b)`` a pair vertex
``v^h`` and two sentinels ``psi^h``/``psi'^h`` in every quadrant; a hub ``y``
tied to the corners; anchors ``x^1..x^4``; and portal paths ``u^1_*`` and
``u^3_*`` that encode ``b`` in the distances to ``x^1`` and ``x^3``. Anchors of
neighbouring gadgets are linked by connector paths.

Quadrant successor wraps around: ``succ(4) == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .core import Graph
from .gridtiling import GTInstance, GTSolution, Pair, is_b_covered
from .kcenter import CenterSet, center_set


def succ(h: int) -> int:
    return h % 4 + 1


# ---------------------------------------------------------------- labels


@dataclass(frozen=True, order=True)
class Z:
    i: int
    j: int
    h: int


@dataclass(frozen=True, order=True)
class V:
    i: int
    j: int
    h: int
    a: int
    b: int


@dataclass(frozen=True, order=True)
class Psi:
    i: int
    j: int
    h: int
    a: int
    b: int
    primed: bool = False


@dataclass(frozen=True, order=True)
class Y:
    i: int
    j: int


@dataclass(frozen=True, order=True)
class X:
    i: int
    j: int
    h: int


@dataclass(frozen=True, order=True)
class U:
    i: int
    j: int
    h: int
    b: int


@dataclass(frozen=True, order=True)
class P:
    """Interior vertex of the vertical connector below gadget (i, j)."""

    i: int
    j: int
    idx: int


@dataclass(frozen=True, order=True)
class PP:
    """Interior vertex ``w_idx`` of the horizontal connector right of (i, j)."""

    i: int
    j: int
    idx: int


@dataclass(frozen=True)
class Merged:
    labels: tuple

    @property
    def i(self) -> int:
        return self.labels[0].i

    @property
    def j(self) -> int:
        return self.labels[0].j


VertexLabel = Union[Z, V, Psi, Y, X, U, P, PP, Merged]

_TAGS = {Z: "Z", V: "V", Y: "Y", X: "X", U: "U", P: "P", PP: "PP"}
_BY_TAG = {tag: cls for cls, tag in _TAGS.items()}


def render_label(label: VertexLabel) -> str:
    if isinstance(label, Merged):
        return "+".join(render_label(part) for part in label.labels)
    if isinstance(label, Psi):
        tag = "PsiP" if label.primed else "Psi"
        return "/".join(map(str, (tag, label.i, label.j, label.h, label.a, label.b)))
    fields = [getattr(label, name) for name in label.__dataclass_fields__]
    return "/".join([_TAGS[type(label)]] + [str(x) for x in fields])


def parse_label(text: str) -> VertexLabel:
    if "+" in text:
        return Merged(tuple(parse_label(part) for part in text.split("+")))
    tag, *nums = text.split("/")
    values = [int(x) for x in nums]
    if tag in ("Psi", "PsiP"):
        return Psi(*values, primed=tag == "PsiP")
    if tag not in _BY_TAG:
        raise ValueError(f"unknown label tag {tag!r}")
    return _BY_TAG[tag](*values)


def gadget_of(label: VertexLabel) -> tuple[int, int] | None:
    """Gadget coordinates of a label; connector interiors belong to none."""
    if isinstance(label, (P, PP)):
        return None
    return (label.i, label.j)


# ---------------------------------------------------------------- closed forms


def cycle_offset(a: int, b: int, n: int) -> Fraction:
    """Distance from ``z^h`` to ``v^h_(a,b)`` along quadrant ``h``."""
    return 2**b - 1 + Fraction(a, n)


def quadrant_length(n: int) -> Fraction:
    return 2 ** (n + 2) + Fraction(1, n)


def anchor_distance(h: int, a: int, b: int, n: int) -> Fraction:
    """Closed-form distance between ``x^h`` and ``v^h_(a,b)``."""
    frac = Fraction(a, n)
    if h == 1:
        return 2 ** (n + 1) - frac
    if h == 2:
        return 2**n + 2**b + frac
    if h == 3:
        return 2 ** (n + 1) - 1 + frac
    if h == 4:
        return 2 ** (n + 1) + 1 - 2**b - frac
    raise ValueError(f"quadrant must be in 1..4, got {h}")


def portal_pair(inst: GTInstance, i: int, j: int, h: int, b: int) -> Pair:
    """The pair whose ``v^h`` carries the ``b``-portal.

    For ``h = 1`` the pair with the largest ``a`` (furthest from ``z^1``), for
    ``h = 3`` the one with the smallest ``a`` (closest to ``z^3``).
    """
    if h not in (1, 3):
        raise ValueError("portals exist only in quadrants 1 and 3")
    column = [a for a, bb in inst.cell(i, j) if bb == b]
    if not column:
        raise ValueError(f"cell ({i}, {j}) has no pair with second component {b}")
    return (max(column) if h == 1 else min(column), b)


def portal_route_length(inst: GTInstance, i: int, j: int, h: int, pair: Pair, target_b: int) -> Fraction:
    """Length of the route from ``v^h_(a,b)`` to ``u^h_target_b`` that uses
    portal ``b`` when ``target_b >= b`` and portal ``target_b`` otherwise."""
    a, b = pair
    n = inst.n
    frac = Fraction(a, n)
    if h == 3:
        return 2 ** max(b, target_b) - 1 + frac
    if h != 1:
        raise ValueError("portals exist only in quadrants 1 and 3")
    if target_b >= b:
        return 2**target_b - frac
    a_star, _ = portal_pair(inst, i, j, 1, target_b)
    return 2**b + Fraction(a - 2 * a_star, n)


def offset_order_key(pair: Pair) -> tuple[int, int]:
    # cycle_offset grows with b first, then a
    return (pair[1], pair[0])


# ---------------------------------------------------------------- construction


class ReductionError(ValueError):
    pass


@dataclass
class ReducedInstance:
    graph: Graph
    instance: GTInstance
    chi: int
    n: int
    k: int
    threshold: Fraction
    index: dict
    # per gadget: cycle vertices with their offset from z^1, in cycle order
    cycles: dict = field(default_factory=dict)

    def vid(self, label: VertexLabel) -> int:
        return self.index[label]

    def gadgets(self):
        for i in range(1, self.chi + 1):
            for j in range(1, self.chi + 1):
                yield i, j

    def quadrant_path(self, i: int, j: int, h: int) -> list[int]:
        """Vertices of the cycle from ``z^h`` to ``z^(h+1)`` inclusive."""
        cyc = [v for v, _ in self.cycles[i, j]]
        start = cyc.index(self.vid(Z(i, j, h)))
        stop = cyc.index(self.vid(Z(i, j, succ(h))))
        if stop <= start:
            return cyc[start:] + cyc[: stop + 1]
        return cyc[start : stop + 1]

    def portal_path(self, i: int, j: int, h: int) -> list[int]:
        return [self.vid(U(i, j, h, b)) for b in range(1, self.n + 1)]

    def vertical_connector(self, i: int, j: int) -> list[int]:
        """``x^3_(i,j)``, interior vertices, ``x^1_(i+1,j)``."""
        inner = [self.vid(P(i, j, idx)) for idx in range(1, self.n + 1)]
        return [self.vid(X(i, j, 3))] + inner + [self.vid(X(i + 1, j, 1))]

    def horizontal_connector(self, i: int, j: int) -> list[int]:
        """``w_1 = x^4_(i,j+1)``, ..., ``w_n = x^2_(i,j)``."""
        inner = [self.vid(PP(i, j, idx)) for idx in range(2, self.n)]
        return [self.vid(X(i, j + 1, 4))] + inner + [self.vid(X(i, j, 2))]


def build(inst: GTInstance) -> ReducedInstance:
    chi, n = inst.chi, inst.n
    if n < 2:
        raise ReductionError("the construction needs a bound n >= 2")
    if not inst.is_normalized():
        raise ReductionError("pairs must lie in [n] x [n]")
    if not is_b_covered(inst):
        raise ReductionError("every cell must contain a pair for every b in [n]")

    labels: list = []
    index: dict = {}
    edges: list[tuple[int, int, Fraction]] = []
    cycles: dict = {}

    def add(label) -> int:
        vid = len(labels)
        labels.append(label)
        parts = label.labels if isinstance(label, Merged) else (label,)
        for part in parts:
            if part in index:
                raise ReductionError(f"duplicate label {render_label(part)}")
            index[part] = vid
        return vid

    big = Fraction(2 ** (n + 1))
    quad = quadrant_length(n)
    step = Fraction(1, n)

    for (i, j), cell in inst.cells():
        pairs = sorted(cell, key=offset_order_key)
        points: dict[Fraction, list] = {}
        for h in range(1, 5):
            base = (h - 1) * quad
            points.setdefault(base, []).append(Z(i, j, h))
            for a, b in pairs:
                d = base + cycle_offset(a, b, n)
                points.setdefault(d, []).append(V(i, j, h, a, b))
                points.setdefault(d + big, []).append(Psi(i, j, h, a, b))
                points.setdefault(d + big + step, []).append(Psi(i, j, h, a, b, primed=True))
        ring = []
        for offset in sorted(points):
            group = points[offset]
            if len(group) > 1:
                if any(not isinstance(lab, Psi) for lab in group):
                    raise ReductionError(f"offset collision at {offset}: {group}")
                ring.append((add(Merged(tuple(group))), offset))
            else:
                ring.append((add(group[0]), offset))
        for (u, du), (v, dv) in zip(ring, ring[1:]):
            edges.append((u, v, dv - du))
        edges.append((ring[-1][0], ring[0][0], 4 * quad - ring[-1][1]))
        cycles[i, j] = tuple(ring)

        y = add(Y(i, j))
        for h in range(1, 5):
            edges.append((y, index[Z(i, j, h)], big + 1))

        for h in (1, 3):
            path = [add(U(i, j, h, b)) for b in range(1, n + 1)]
            for lam in range(1, n):
                edges.append((path[lam - 1], path[lam], Fraction(2**lam)))
            x = add(X(i, j, h))
            edges.append((path[-1], x, Fraction(2**n)))
            for b in range(1, n + 1):
                a_star, _ = portal_pair(inst, i, j, h, b)
                if h == 1:
                    length = 2**b - Fraction(a_star, n)
                else:
                    length = 2**b - 1 + Fraction(a_star, n)
                edges.append((index[V(i, j, h, a_star, b)], path[b - 1], length))

        # x^2 hangs off the pair nearest z^2, x^4 off the pair furthest from z^4
        a_lo, b_lo = pairs[0]
        a_hi, b_hi = pairs[-1]
        x2 = add(X(i, j, 2))
        edges.append((x2, index[V(i, j, 2, a_lo, b_lo)], anchor_distance(2, a_lo, b_lo, n)))
        x4 = add(X(i, j, 4))
        edges.append((x4, index[V(i, j, 4, a_hi, b_hi)], anchor_distance(4, a_hi, b_hi, n)))

    for i in range(1, chi):
        for j in range(1, chi + 1):
            chain = [index[X(i, j, 3)]]
            chain += [add(P(i, j, idx)) for idx in range(1, n + 1)]
            chain.append(index[X(i + 1, j, 1)])
            for u, v in zip(chain, chain[1:]):
                edges.append((u, v, Fraction(1, n + 1)))
    for i in range(1, chi + 1):
        for j in range(1, chi):
            w = [index[X(i, j + 1, 4)]]
            w += [add(PP(i, j, idx)) for idx in range(2, n)]
            w.append(index[X(i, j, 2)])
            for lam in range(1, n):
                edges.append((w[lam], w[lam - 1], Fraction(2**lam)))

    graph = Graph(labels, edges)
    return ReducedInstance(
        graph=graph,
        instance=inst,
        chi=chi,
        n=n,
        k=5 * chi * chi,
        threshold=big,
        index=index,
        cycles=cycles,
    )


# ---------------------------------------------------------------- solution maps


class ExtractionError(ValueError):
    """A center set that does not pin down one pair per gadget."""

    def __init__(self, gadget: tuple[int, int], found: list[Pair]):
        msg = f"gadget {gadget}: expected exactly one v^1 center, found {found}"
        super().__init__(msg)
        self.gadget = gadget
        self.found = found


def solution_to_centers(reduced: ReducedInstance, sol: GTSolution) -> CenterSet:
    chosen = []
    for i, j in reduced.gadgets():
        a, b = sol.pair(i, j)
        chosen.append(reduced.vid(Y(i, j)))
        chosen.extend(reduced.vid(V(i, j, h, a, b)) for h in range(1, 5))
    return center_set(reduced.graph, chosen)


def extract_solution(reduced: ReducedInstance, centers: CenterSet | Iterable[int]) -> GTSolution:
    ids = centers.centers if isinstance(centers, CenterSet) else frozenset(centers)
    rows = []
    for i in range(1, reduced.chi + 1):
        row = []
        for j in range(1, reduced.chi + 1):
            found = sorted(
                (a, b)
                for a, b in reduced.instance.cell(i, j)
                if reduced.vid(V(i, j, 1, a, b)) in ids
            )
            if len(found) != 1:
                raise ExtractionError((i, j), found)
            row.append(found[0])
        rows.append(tuple(row))
    return GTSolution(tuple(rows))
