from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtkcenter.core import Graph, canonical_path, path_length
from gtkcenter.gridtiling import random_covered_instance
from gtkcenter.params import (
    PathDecomposition,
    VertexBudgetExceeded,
    build_path_decomposition,
    contract_degree2,
    doubling_check,
    doubling_violation,
    highway_dimension_exact,
    highway_witness,
    in_skeleton,
    parameter_report,
    pathwidth_exact_tiny,
    q_cover,
    radius_ladder,
    skeleton_dimension,
    skeleton_profile,
    smallest_doubling_exponent,
    suppress_degree2,
    unhit_long_path,
    verify_path_decomposition,
    window_cells,
    window_diameter,
    window_vertices,
)
from gtkcenter.reduction import U, X, Y, Z, build

from conftest import cycle_graph, path_graph, random_graph, star_graph
from oracles import highway_dimension, skeleton_cut, skeleton_samples


@pytest.fixture(scope="module")
def covered2():
    return build(random_covered_instance(2, 2, 1, 0))


@pytest.fixture(scope="module")
def covered3():
    return build(random_covered_instance(3, 2, 1, 0))


# ---------------------------------------------------------------- skeleton


def test_skeleton_of_path():
    assert skeleton_profile(path_graph(3), 0).max_cut[1] == 1


def test_skeleton_of_star():
    prof = skeleton_profile(star_graph(3), 0)
    assert prof.cut_size(Fraction(1, 100)) == 3
    assert prof.cut_size(Fraction(2, 3)) == 3
    assert prof.cut_size(Fraction(7, 10)) == 0
    assert prof.max_cut[1] == 3


def test_skeleton_small_graphs(t1):
    assert skeleton_dimension(path_graph(2)).value == 1
    assert skeleton_dimension(cycle_graph(4)).value <= 2
    kappa = skeleton_dimension(t1.graph)
    assert kappa.value >= max(t1.graph.degree(v) for v in range(len(t1.graph))) == 4
    assert skeleton_profile(t1.graph, kappa.source).cut_size(kappa.radius) == kappa.value


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 7))
def test_skeleton_profile_matches_pointwise_definition(seed, size):
    g = random_graph(random.Random(seed), size, size // 2)
    for s in range(len(g)):
        prof = skeleton_profile(g, s)
        samples = skeleton_samples(g, s)
        cuts = [skeleton_cut(g, s, r) for r in samples]
        assert [prof.cut_size(r) for r in samples] == cuts
        assert prof.max_cut[1] == max(cuts)


def test_skeleton_monotone_along_paths(t1):
    g = t1.graph
    rng = random.Random(5)
    checked = 0
    for _ in range(200):
        u, w = rng.sample(range(len(g)), 2)
        if not in_skeleton(g, u, w):
            continue
        for v in canonical_path(g, u, w):
            assert in_skeleton(g, v, w)
        checked += 1
    assert checked > 20


# ---------------------------------------------------------------- highway


def test_q_cover_examples():
    g = path_graph(5)
    assert q_cover(g, list(range(5)), 10) == [0]
    assert q_cover(g, list(range(5)), 2) == [0, 2, 4]
    with pytest.raises(ValueError):
        q_cover(g, [0, 1], 0)


@given(
    st.lists(st.integers(1, 5), min_size=1, max_size=12),
    st.fractions(min_value=Fraction(1, 4), max_value=12),
)
def test_q_cover_hits_long_subpaths(lengths, q):
    g = Graph(range(len(lengths) + 1), [(v, v + 1, w) for v, w in enumerate(lengths)])
    path = list(range(len(g)))
    chosen = set(q_cover(g, path, q))
    for lo in range(len(path)):
        for hi in range(lo + 1, len(path)):
            if path_length(g, path[lo : hi + 1]) >= q:
                assert chosen & set(path[lo : hi + 1])


def test_witness_family_large_radius(t1):
    fam = highway_witness(t1, 2 ** (t1.n + 2))
    assert len(fam) == 9
    want = {t1.vid(Y(1, 1))} | {t1.vid(L(1, 1, h)) for L in (X, Z) for h in range(1, 5)}
    assert fam.hitters == want


def test_witness_family_hits_all_long_paths(t1, t2, grid):
    for reduced in (t1, t2, grid):
        for r in radius_ladder(reduced.n):
            fam = highway_witness(reduced, r)
            assert unhit_long_path(reduced.graph, fam.hitters, r) is None
            assert reduced.vid(U(1, 1, 1, reduced.n)) in fam.hitters or r >= 2 ** (reduced.n + 2)


def test_witness_family_brute_force_on_t1(t1):
    g = t1.graph
    for r in (Fraction(1, 2), Fraction(3), Fraction(12)):
        hitters = highway_witness(t1, r).hitters
        for s in range(len(g)):
            for t in range(len(g)):
                path = canonical_path(g, s, t)
                if path_length(g, path) > r:
                    assert hitters & set(path)


def test_unhit_path_is_reported(t1):
    assert unhit_long_path(t1.graph, set(), 1) is not None


def test_highway_exact_small():
    assert highway_dimension_exact(path_graph(2)).value == 1
    g = path_graph(5)
    assert highway_dimension_exact(g).value == highway_dimension(g)
    with pytest.raises(VertexBudgetExceeded):
        highway_dimension_exact(path_graph(6), vertex_budget=5)


def test_highway_exact_below_witness(t1):
    exact = highway_dimension_exact(t1.graph).value
    witness = max(highway_witness(t1, r).per_ball_max for r in radius_ladder(t1.n))
    assert exact <= witness


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 7))
def test_highway_exact_matches_brute_force(seed, size):
    g = random_graph(random.Random(seed), size, size // 3)
    assert highway_dimension_exact(g).value == highway_dimension(g)


# ---------------------------------------------------------------- doubling


def test_doubling_examples():
    g = path_graph(5)
    assert doubling_check(g, 2)
    v = doubling_violation(g, 1)
    assert v is not None and len(v.ball) == 3 and v.radius == Fraction(1, 2)
    assert smallest_doubling_exponent(g) == 2
    assert doubling_check(g, (len(g) - 1).bit_length())
    with pytest.raises(VertexBudgetExceeded):
        doubling_check(g, 1, vertex_budget=4)


def test_doubling_constant_across_reductions(t1, covered2):
    assert smallest_doubling_exponent(t1.graph) == smallest_doubling_exponent(covered2.graph)


# ---------------------------------------------------------------- pathwidth


def test_verify_path_decomposition():
    tri = Graph("abc", [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert verify_path_decomposition(tri, PathDecomposition((frozenset({0, 1, 2}),))) == (True, 2, None)
    g = path_graph(4)
    assert verify_path_decomposition(g, PathDecomposition((frozenset(range(4)),))).width == 3
    missing = PathDecomposition((frozenset({0, 1}), frozenset({3})))
    check = verify_path_decomposition(g, missing)
    assert not check.valid and check.violation == "vertex 2 is in no bag"
    edge = PathDecomposition((frozenset({0, 1}), frozenset({2}), frozenset({2, 3})))
    assert verify_path_decomposition(g, edge).violation == "edge (1, 2) is in no bag"
    gap = PathDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3}), frozenset({0})))
    assert "not consecutive" in verify_path_decomposition(g, gap).violation


def test_exact_pathwidth_small():
    assert pathwidth_exact_tiny(path_graph(6)) == 1
    assert pathwidth_exact_tiny(cycle_graph(7)) == 2
    assert pathwidth_exact_tiny(star_graph(5)) == 1
    complete = Graph(range(5), [(u, v, 1) for u in range(5) for v in range(u + 1, 5)])
    assert pathwidth_exact_tiny(complete) == 4
    with pytest.raises(VertexBudgetExceeded):
        pathwidth_exact_tiny(path_graph(21))


def test_suppress_path_vertex():
    g = suppress_degree2(Graph("abc", [(0, 1, 1), (1, 2, Fraction(1, 2))]))
    assert g.labels == ("a", "c")
    assert g.edges == ((0, 1, Fraction(3, 2)),)


def test_contraction_keeps_anchors(t1):
    g = contract_degree2(t1)
    labels = set(g.labels)
    assert all(X(1, 1, h) in labels for h in range(1, 5))
    assert all(g.degree(v) != 2 or isinstance(g.label(v), X) for v in range(len(g)))
    # every quadrant collapses to corners, portal vertices and portal-path ends
    assert len(g) <= 20


def test_constructive_decompositions(t1, grid, covered2, covered3):
    widths = {}
    for reduced in (t1, grid, covered2, covered3):
        contracted = contract_degree2(reduced)
        pd = build_path_decomposition(reduced, contracted)
        check = verify_path_decomposition(contracted, pd)
        assert check.valid, check.violation
        widths[reduced.chi] = pd.width
    assert widths[2] <= widths[1] + 8
    assert widths[3] <= widths[1] + 16
    small = contract_degree2(t1)
    assert pathwidth_exact_tiny(small) <= build_path_decomposition(t1, small).width


# ---------------------------------------------------------------- windows


def test_window_cells():
    assert window_cells(3, 2, 2, 1) == {(2, 2), (1, 2), (3, 2), (2, 1), (2, 3)}
    assert window_cells(2, 1, 1, 5) == {(1, 1), (1, 2), (2, 1), (2, 2)}
    with pytest.raises(ValueError):
        window_cells(2, 1, 1, -1)


def test_window_diameters(t1, covered3):
    n = t1.n
    assert window_diameter(t1, 1, 1, 0) <= 2 ** (n + 3) + 2 ** (n + 1) + 4
    d = window_diameter(covered3, 2, 2, 1)
    assert (2 ** (n + 2) + 2**n) * 3 <= d <= (2 ** (n + 3) + 2 ** (n + 1) + 2**n + 2) * 3
    clipped = window_diameter(covered3, 1, 1, 1)
    assert clipped <= (2 ** (n + 3) + 2 ** (n + 1) + 2**n + 2) * 3
    whole = window_vertices(covered3, 2, 2, 4)
    assert len(whole) == len(covered3.graph)
    with pytest.raises(ValueError):
        window_vertices(covered3, 4, 1, 0)


# ---------------------------------------------------------------- report


def test_parameter_report(t1):
    report = parameter_report(t1)
    assert report["vertices"] == 37
    assert report["kappa"]["value"] >= 4
    assert report["kappa"]["witness_source"].count("/") >= 2
    assert report["hd"]["exact"] <= report["hd"]["witness_bound"]
    assert report["hd"]["unhit_paths"] == {}
    assert report["doubling"]["passes_d"] == 3
    pw = report["pathwidth"]
    assert pw["constructive_valid"] and pw["exact_tiny"] <= pw["constructive_width"]
    assert parameter_report(t1) == report
