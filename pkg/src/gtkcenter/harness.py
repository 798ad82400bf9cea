"""Experiments: structural checks, the equivalence run, sweeps and exports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable

from .core import Graph, canonical_path, graph_to_dot, graph_to_json, render_rational
from .covering import SearchBudgetExceeded
from .gridtiling import (
    GTInstance,
    check_solution,
    instance_to_json,
    is_solvable,
    random_covered_instance,
    random_instance,
    reduction_input,
    restore_solution,
)
from .kcenter import decide, solve_exact
from .params import (
    build_path_decomposition,
    contract_degree2,
    highway_witness,
    parameter_report,
    radius_ladder,
    skeleton_dimension,
    verify_path_decomposition,
)
from .reduction import (
    Psi,
    ReducedInstance,
    U,
    V,
    X,
    Y,
    Z,
    anchor_distance,
    build,
    extract_solution,
    gadget_of,
    portal_pair,
    portal_route_length,
    quadrant_length,
    render_label,
    succ,
)

DEFAULT_NODE_BUDGET = 200_000
MAX_WITNESSES = 5


# ---------------------------------------------------------------- structure


@dataclass
class Check:
    name: str
    lemma: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, ok: bool, witness: Callable[[], dict]) -> None:
        self.cases += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_WITNESSES:
                self.failures.append(witness())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lemma": self.lemma,
            "passed": self.passed,
            "cases": self.cases,
            "failure_count": self.failure_count,
            "witnesses": self.failures,
        }


@dataclass
class StructureReport:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _w(reduced: ReducedInstance, vertices: Iterable[int], measured, expected, **extra) -> dict:
    doc = {
        "vertices": [render_label(reduced.graph.label(v)) for v in vertices],
        "measured": render_rational(Fraction(measured)),
        "expected": expected if isinstance(expected, str) else render_rational(Fraction(expected)),
    }
    doc.update(extra)
    return doc


def verify_structure(reduced: ReducedInstance) -> StructureReport:
    """Run every structural invariant of the construction on ``reduced``."""
    g = reduced.graph
    n = reduced.n
    inst = reduced.instance
    vid = reduced.vid

    def dist(u: int, v: int) -> Fraction:
        return g.spt(u).dist(v)

    anchors = Check("anchor-distances", "closed-form anchor distances d^h_(a,b)")
    spacing = Check("quadrant-spacing", "dist(v^h, v^(h+1)) = 2^(n+2) + 1/n")
    sentinel = Check("sentinel-spacing", "dist(psi'^h, psi^(h+1)) = 2^(n+2)")
    portal_path = Check("portal-path", "dist(u^h_b, x^h) = 2^(n+1) - 2^b")
    isolation = Check("y-isolation", "every neighbour of y at distance 2^(n+1) + 1")
    yy = Check("y-y-distance", "distance between hubs of adjacent gadgets")
    routes = Check("portal-routes", "shortest pair-to-portal-path routes use the predicted portal and length")
    covering = Check("hub-covering-radius", "every vertex within 2^(n+2) + 2^(n+1) of a hub")
    xsep = Check("x-anchor-separation", "2^(n+2) + 2^n < dist(x^h, x^h') <= 2^(n+3) + 2^(n+1) + 4")
    xy = Check("x-y-bound", "dist(x^h, y) <= 2^(n+2) + 2^n + 2")
    denominators = Check("edge-denominators", "edge lengths positive with denominator dividing n(n+1)")

    quad = quadrant_length(n)
    for i, j in reduced.gadgets():
        cell = sorted(inst.cell(i, j))
        y = vid(Y(i, j))
        for h in range(1, 5):
            x = vid(X(i, j, h))
            for a, b in cell:
                v = vid(V(i, j, h, a, b))
                want = anchor_distance(h, a, b, n)
                got = dist(x, v)
                anchors.record(got == want, lambda: _w(reduced, (x, v), got, want))
                w = vid(V(i, j, succ(h), a, b))
                got = dist(v, w)
                spacing.record(got == quad, lambda: _w(reduced, (v, w), got, quad))
                p = vid(Psi(i, j, h, a, b, primed=True))
                q = vid(Psi(i, j, succ(h), a, b))
                got = dist(p, q)
                want = Fraction(2 ** (n + 2))
                sentinel.record(got == want, lambda: _w(reduced, (p, q), got, want))
            got = dist(x, y)
            bound = Fraction(2 ** (n + 2) + 2**n + 2)
            xy.record(got <= bound, lambda: _w(reduced, (x, y), got, f"<= {bound}"))
        for h in (1, 3):
            x = vid(X(i, j, h))
            for b in range(1, n + 1):
                u = vid(U(i, j, h, b))
                got = dist(u, x)
                want = Fraction(2 ** (n + 1) - 2**b)
                portal_path.record(got == want, lambda: _w(reduced, (u, x), got, want))

        # hub isolation: the corners sit at exactly 2^(n+1)+1 and nothing is closer
        gap = Fraction(2 ** (n + 1) + 1)
        tree = g.spt(y)
        nearest = min(tree.dist(v) for v in range(len(g)) if v != y)
        isolation.record(nearest == gap, lambda: _w(reduced, (y,), nearest, gap))
        for h in range(1, 5):
            z = vid(Z(i, j, h))
            got = tree.dist(z)
            isolation.record(got == gap, lambda: _w(reduced, (y, z), got, gap))

        vert = 2 ** (n + 3) + 2 + min(2**b + Fraction(2 * a, n) for a, b in cell)
        horiz = 2 ** (n + 3) - 1 + min(2 ** (b + 1) + Fraction(2 * a, n) for a, b in cell)
        for (di, dj), want in (((1, 0), vert), ((0, 1), horiz)):
            if i + di <= reduced.chi and j + dj <= reduced.chi:
                other = vid(Y(i + di, j + dj))
                got = tree.dist(other)
                yy.record(got == want, lambda: _w(reduced, (y, other), got, want))

        for h in (1, 3):
            portal_of = {}
            for b in range(1, n + 1):
                a_star, _ = portal_pair(inst, i, j, h, b)
                rho, u = vid(V(i, j, h, a_star, b)), vid(U(i, j, h, b))
                portal_of[rho, u] = portal_of[u, rho] = b
            for a, b in cell:
                v = vid(V(i, j, h, a, b))
                for b2 in range(1, n + 1):
                    target = vid(U(i, j, h, b2))
                    path = canonical_path(g, v, target)
                    used = [portal_of[e] for e in zip(path, path[1:]) if e in portal_of]
                    want = b if b2 >= b else b2
                    got = dist(v, target)
                    length = portal_route_length(inst, i, j, h, (a, b), b2)
                    routes.record(
                        used == [want] and got == length,
                        lambda: {
                            "vertices": [render_label(g.label(t)) for t in (v, target)],
                            "portals_used": used,
                            "expected_portal": want,
                            "measured": render_rational(got),
                            "expected": render_rational(length),
                        },
                    )

        lo = Fraction(2 ** (n + 2) + 2**n)
        hi = Fraction(2 ** (n + 3) + 2 ** (n + 1) + 4)
        for h1, h2 in combinations(range(1, 5), 2):
            x1, x2 = vid(X(i, j, h1)), vid(X(i, j, h2))
            got = dist(x1, x2)
            xsep.record(lo < got <= hi, lambda: _w(reduced, (x1, x2), got, f"in ({lo}, {hi}]"))

    hubs = [vid(Y(i, j)) for i, j in reduced.gadgets()]
    rows = [g.spt(y).units for y in hubs]
    bound = Fraction(2 ** (n + 2) + 2 ** (n + 1))
    for v in range(len(g)):
        k = min(range(len(hubs)), key=lambda t: rows[t][v])
        got = Fraction(rows[k][v], g.scale)
        covering.record(got <= bound, lambda: _w(reduced, (v, hubs[k]), got, f"<= {bound}"))

    for u, v, length in g.edges:
        ok = length > 0 and (n * (n + 1)) % length.denominator == 0
        denominators.record(ok, lambda: _w(reduced, (u, v), length, f"denominator | {n * (n + 1)}"))

    return StructureReport(
        [anchors, spacing, sentinel, portal_path, isolation, yy, routes, covering, xsep, xy, denominators]
    )


# ---------------------------------------------------------------- equivalence


@dataclass
class Verdict:
    instance_id: str
    gt_solvable: bool
    kcenter_within_threshold: bool | None
    inconclusive: bool
    optimum_cost: Fraction | None = None
    roundtrip: bool | None = None
    centers: list[str] | None = None
    vertices: int = 0
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return not self.inconclusive and self.gt_solvable == self.kcenter_within_threshold

    def to_dict(self) -> dict:
        # timings are left out so reports stay byte-identical across runs
        return {
            "instance_id": self.instance_id,
            "gt_solvable": self.gt_solvable,
            "kcenter_within_threshold": self.kcenter_within_threshold,
            "agree": self.agree,
            "inconclusive": self.inconclusive,
            "optimum_cost": None if self.optimum_cost is None else render_rational(self.optimum_cost),
            "roundtrip": self.roundtrip,
            "centers": self.centers,
            "vertices": self.vertices,
        }


def verify_equivalence(
    inst: GTInstance,
    instance_id: str = "",
    node_budget: int | None = DEFAULT_NODE_BUDGET,
    optimum: bool = False,
) -> Verdict:
    """Solve the instance directly and through the reduction, then compare.

    When both sides find a solution, the k-Center centers are mapped back to a
    tiling which must solve the reduced input and, after undoing the
    augmentation, the original instance.
    """
    timings = {}
    t0 = time.perf_counter()
    reduced = build(reduction_input(inst))
    timings["build"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    gt = is_solvable(inst)
    timings["gt"] = time.perf_counter() - t0

    verdict = Verdict(instance_id, gt, None, False, vertices=len(reduced.graph), timings=timings)
    t0 = time.perf_counter()
    try:
        found = decide(reduced.graph, reduced.k, reduced.threshold, node_budget)
    except SearchBudgetExceeded:
        verdict.inconclusive = True
        timings["decide"] = time.perf_counter() - t0
        return verdict
    timings["decide"] = time.perf_counter() - t0
    verdict.kcenter_within_threshold = found is not None

    if found is not None:
        verdict.centers = sorted(render_label(reduced.graph.label(c)) for c in found.centers)
        if gt:
            sol = extract_solution(reduced, found)
            ok = check_solution(reduced.instance, sol)
            verdict.roundtrip = ok and check_solution(inst, restore_solution(inst, sol))
    if optimum:
        t0 = time.perf_counter()
        try:
            verdict.optimum_cost = solve_exact(reduced.graph, reduced.k, node_budget).cost
        except SearchBudgetExceeded:
            pass
        timings["optimum"] = time.perf_counter() - t0
    return verdict


# ---------------------------------------------------------------- sweeps


class DisagreementError(RuntimeError):
    def __init__(self, verdict: Verdict, dump: Path):
        super().__init__(f"instance {verdict.instance_id}: GT and k-Center disagree (dump: {dump})")
        self.verdict = verdict
        self.dump = dump


def instance_id(chi: int, n: int, pairs: int, seed: int) -> str:
    return f"chi{chi}-n{n}-p{pairs}-s{seed}"


def sweep(
    chi_list: Iterable[int],
    n_list: Iterable[int],
    seeds: Iterable[int],
    out_dir: str | Path,
    pairs: int = 2,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
    with_params: bool = True,
    hd_budget: int = 40,
    doubling_budget: int = 200,
) -> list[dict]:
    """Run the full pipeline on random instances and write one report per
    instance plus ``summary.tsv``. A disagreement aborts with an instance dump."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    seeds = list(seeds)
    for chi in chi_list:
        for n in n_list:
            for seed in seeds:
                name = instance_id(chi, n, pairs, seed)
                inst = random_instance(chi, n, min(pairs, n * n), seed)
                verdict = verify_equivalence(inst, name, node_budget)
                if not verdict.inconclusive and not verdict.agree:
                    dump = out / f"disagreement-{name}.json"
                    dump.write_text(
                        json.dumps(
                            {"instance": json.loads(instance_to_json(inst)), "verdict": verdict.to_dict()},
                            indent=1,
                            sort_keys=True,
                        )
                        + "\n"
                    )
                    raise DisagreementError(verdict, dump)
                reduced = build(reduction_input(inst))
                structure = verify_structure(reduced)
                doc = {
                    "instance": json.loads(instance_to_json(inst)),
                    "verdict": verdict.to_dict(),
                    "structure": structure.to_dict(),
                }
                row = {
                    "id": name,
                    "chi": chi,
                    "n": n,
                    "seed": seed,
                    "vertices": verdict.vertices,
                    "gt": verdict.gt_solvable,
                    "kcenter": verdict.kcenter_within_threshold,
                    "agree": verdict.agree,
                    "inconclusive": verdict.inconclusive,
                    "structure_ok": structure.passed,
                }
                if with_params:
                    report = parameter_report(reduced, hd_budget, doubling_budget, node_budget)
                    doc["params"] = report
                    row["kappa"] = report["kappa"]["value"]
                    row["hd_witness"] = report["hd"]["witness_bound"]
                    row["pw_width"] = report["pathwidth"]["constructive_width"]
                (out / f"{name}.json").write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
                rows.append(row)
    columns = list(rows[0]) if rows else []
    lines = ["\t".join(columns)]
    lines += ["\t".join(str(r[c]) for c in columns) for r in rows]
    (out / "summary.tsv").write_text("\n".join(lines) + "\n")
    return rows


@dataclass(frozen=True)
class TrendRow:
    chi: int
    vertices: int
    kappa: int
    hd_witness: int
    pw_width: int
    pw_valid: bool


def parameter_trend(chis: Iterable[int], n: int = 2, seed: int = 0, extra_pairs: int = 1) -> list[TrendRow]:
    """Parameters of reductions built directly on b-covered instances, so that
    ``n`` stays fixed while ``chi`` grows."""
    rows = []
    for chi in chis:
        reduced = build(random_covered_instance(chi, n, extra_pairs, seed))
        kappa = skeleton_dimension(reduced.graph).value
        hd = max(highway_witness(reduced, r).per_ball_max for r in radius_ladder(n))
        contracted = contract_degree2(reduced)
        pd = build_path_decomposition(reduced, contracted)
        valid = verify_path_decomposition(contracted, pd).valid
        rows.append(TrendRow(chi, len(reduced.graph), kappa, hd, pd.width, valid))
    return rows


# ---------------------------------------------------------------- export


def _cluster(graph: Graph) -> Callable[[int], str | None]:
    def cluster_of(v: int) -> str | None:
        cell = gadget_of(graph.label(v))
        return None if cell is None else f"G_{cell[0]},{cell[1]}"

    return cluster_of


def export(reduced: ReducedInstance, fmt: str = "json") -> str:
    """Serialize the reduced graph; output depends only on the instance."""
    if fmt == "json":
        return graph_to_json(reduced.graph, render_label)
    if fmt == "dot":
        return graph_to_dot(reduced.graph, render_label, _cluster(reduced.graph))
    raise ValueError(f"unknown export format {fmt!r}; expected 'json' or 'dot'")
