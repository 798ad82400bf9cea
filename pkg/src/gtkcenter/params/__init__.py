"""Graph parameters of reduced instances: skeleton dimension, highway
dimension, doubling behaviour and pathwidth."""

from __future__ import annotations

from ..core import render_rational
from ..reduction import ReducedInstance, render_label
from .doubling import DoublingViolation, doubling_check, doubling_violation, smallest_doubling_exponent
from .highway import (
    HighwayDimension,
    HittingFamily,
    VertexBudgetExceeded,
    highway_dimension_exact,
    highway_witness,
    per_ball_maximum,
    q_cover,
    radius_ladder,
    unhit_long_path,
    witness_hitters,
)
from .pathwidth import (
    DecompositionCheck,
    PathDecomposition,
    build_path_decomposition,
    contract_degree2,
    pathwidth_exact_tiny,
    suppress_degree2,
    verify_path_decomposition,
)
from .skeleton import SkeletonDimension, SkeletonProfile, in_skeleton, skeleton_dimension, skeleton_profile
from .window import window_cells, window_diameter, window_vertices

__all__ = [
    "DecompositionCheck",
    "DoublingViolation",
    "HighwayDimension",
    "HittingFamily",
    "PathDecomposition",
    "SkeletonDimension",
    "SkeletonProfile",
    "VertexBudgetExceeded",
    "build_path_decomposition",
    "contract_degree2",
    "doubling_check",
    "doubling_violation",
    "highway_dimension_exact",
    "highway_witness",
    "in_skeleton",
    "parameter_report",
    "pathwidth_exact_tiny",
    "per_ball_maximum",
    "q_cover",
    "radius_ladder",
    "skeleton_dimension",
    "skeleton_profile",
    "smallest_doubling_exponent",
    "suppress_degree2",
    "unhit_long_path",
    "verify_path_decomposition",
    "window_cells",
    "window_diameter",
    "window_vertices",
    "witness_hitters",
]

HD_EXACT_BUDGET = 40
DOUBLING_BUDGET = 200


def parameter_report(
    reduced: ReducedInstance,
    hd_budget: int = HD_EXACT_BUDGET,
    doubling_budget: int = DOUBLING_BUDGET,
    node_budget: int | None = None,
) -> dict:
    """JSON-ready summary of every parameter; budget-guarded values are null
    when the graph is too large for them."""
    g = reduced.graph
    kappa = skeleton_dimension(g)

    per_ball = {}
    unhit = {}
    for r in radius_ladder(reduced.n):
        fam = highway_witness(reduced, r)
        per_ball[render_rational(r)] = fam.per_ball_max
        miss = unhit_long_path(g, fam.hitters, r)
        if miss is not None:
            unhit[render_rational(r)] = [render_label(g.label(v)) for v in miss]
    exact_hd = None
    if len(g) <= hd_budget:
        exact_hd = highway_dimension_exact(g, hd_budget, node_budget).value

    passes_d = None
    if len(g) <= doubling_budget:
        passes_d = smallest_doubling_exponent(g, vertex_budget=doubling_budget, node_budget=node_budget)

    contracted = contract_degree2(reduced)
    pd = build_path_decomposition(reduced, contracted)
    check = verify_path_decomposition(contracted, pd)
    exact_pw = None
    if len(contracted) <= 20:
        exact_pw = pathwidth_exact_tiny(contracted)

    return {
        "vertices": len(g),
        "kappa": {
            "value": kappa.value,
            "witness_source": render_label(g.label(kappa.source)),
            "witness_radius": render_rational(kappa.radius),
        },
        "hd": {
            "exact": exact_hd,
            "witness_bound": max(per_ball.values()),
            "per_ball_max": per_ball,
            "unhit_paths": unhit,
        },
        "doubling": {"passes_d": passes_d},
        "pathwidth": {
            "constructive_width": pd.width,
            "constructive_valid": check.valid,
            "contracted_vertices": len(contracted),
            "exact_tiny": exact_pw,
        },
    }
