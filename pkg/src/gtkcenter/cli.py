"""Command-line front end.

Exit codes: 0 success, 1 disagreement or structural failure, 2 invalid input,
3 inconclusive because a search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import GraphError, graph_from_json, parse_rational, render_rational
from .covering import SearchBudgetExceeded
from .gridtiling import (
    GTInstance,
    augment,
    instance_from_json,
    instance_to_json,
    random_covered_instance,
    random_instance,
    reduction_input,
    solution_to_json,
    solve_bruteforce,
)
from .harness import DEFAULT_NODE_BUDGET, DisagreementError, export, sweep, verify_equivalence, verify_structure
from .kcenter import approx2, decide, solve_exact
from .params import VertexBudgetExceeded, parameter_report
from .reduction import ReductionError, build, parse_label, render_label

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_instance(args) -> GTInstance:
    if getattr(args, "instance", None):
        return instance_from_json(Path(args.instance).read_text())
    if args.chi is None or args.n is None:
        raise InputError("give an instance file or --chi and --n to generate one")
    if getattr(args, "covered", False):
        return random_covered_instance(args.chi, args.n, args.pairs, args.seed)
    return random_instance(args.chi, args.n, args.pairs, args.seed)


def _reduce(args, inst: GTInstance):
    return build(inst if getattr(args, "direct", False) else reduction_input(inst))


def _add_instance_args(p: argparse.ArgumentParser, direct: bool = False) -> None:
    p.add_argument("instance", nargs="?", help="instance file (JSON); omit to generate one")
    p.add_argument("--chi", type=int, help="grid side when generating")
    p.add_argument("--n", type=int, help="value bound when generating")
    p.add_argument("--pairs", type=int, default=2, help="pairs per cell when generating")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--covered", action="store_true", help="generate a b-covered instance")
    if direct:
        p.add_argument(
            "--direct",
            action="store_true",
            help="build on the instance as given (must be b-covered) instead of augmenting it",
        )


def cmd_gen(args) -> int:
    _emit(args, instance_to_json(_load_instance(args)))
    return EXIT_OK


def cmd_augment(args) -> int:
    inst = _load_instance(args)
    _emit(args, instance_to_json(augment(inst) if inst.chi >= 2 else reduction_input(inst)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    _emit(args, export(_reduce(args, _load_instance(args)), args.format))
    return EXIT_OK


cmd_export = cmd_reduce


def cmd_solve_gt(args) -> int:
    sol = solve_bruteforce(_load_instance(args))
    _emit(args, solution_to_json(sol) if sol else json.dumps({"chosen": None}) + "\n")
    return EXIT_OK


def cmd_solve_kcenter(args) -> int:
    if args.graph:
        graph = graph_from_json(Path(args.graph).read_text(), parse_label)
        k = args.k
        if k is None:
            raise InputError("--k is required with a graph file")
    else:
        reduced = _reduce(args, _load_instance(args))
        graph = reduced.graph
        k = args.k if args.k is not None else reduced.k
    if args.approx:
        found = approx2(graph, k)
    elif args.radius is not None:
        found = decide(graph, k, parse_rational(args.radius), args.budget_nodes)
    else:
        found = solve_exact(graph, k, args.budget_nodes)
    if found is None:
        doc = {"centers": None, "cost": None}
    else:
        labels = sorted(render_label(graph.label(c)) for c in found.centers)
        doc = {"centers": labels, "cost": render_rational(found.cost)}
    _emit(args, json.dumps(doc, indent=1) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args)
    structure = verify_structure(build(reduction_input(inst)))
    verdict = verify_equivalence(inst, args.id, args.budget_nodes, optimum=args.optimum)
    doc = {"structure": structure.to_dict(), "verdict": verdict.to_dict()}
    _emit(args, json.dumps(doc, indent=1, sort_keys=True) + "\n")
    if verdict.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if structure.passed and verdict.agree else EXIT_FAIL


def cmd_params(args) -> int:
    reduced = _reduce(args, _load_instance(args))
    report = parameter_report(
        reduced,
        hd_budget=args.budget_vertices,
        doubling_budget=args.budget_doubling,
        node_budget=args.budget_nodes,
    )
    _emit(args, json.dumps(report, indent=1, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.out:
        raise InputError("sweep needs --out DIR")
    try:
        rows = sweep(
            args.chi,
            args.n,
            args.seeds,
            args.out,
            pairs=args.pairs,
            node_budget=args.budget_nodes,
            with_params=not args.no_params,
            hd_budget=args.budget_vertices,
            doubling_budget=args.budget_doubling,
        )
    except DisagreementError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    print(Path(args.out, "summary.tsv").read_text(), end="")
    if any(r["inconclusive"] for r in rows):
        return EXIT_INCONCLUSIVE
    return EXIT_OK if all(r["structure_ok"] for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gtkcenter",
        description="Grid Tiling to k-Center reduction laboratory (exact rational arithmetic).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budgets=True):
        p.add_argument("--out", help="output file (directory for sweep); default stdout")
        if budgets:
            p.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET, help="search node limit")
            p.add_argument("--budget-vertices", type=int, default=40, help="vertex cap for exact highway dimension")
            p.add_argument("--budget-doubling", type=int, default=200, help="vertex cap for the doubling check")

    p = sub.add_parser("gen", help="generate a random instance")
    _add_instance_args(p)
    common(p, budgets=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("augment", help="normalize and augment an instance")
    _add_instance_args(p)
    common(p, budgets=False)
    p.set_defaults(func=cmd_augment)

    for name, func, doc in (("reduce", cmd_reduce, "build the k-Center graph"), ("export", cmd_export, "export the k-Center graph")):
        p = sub.add_parser(name, help=doc)
        _add_instance_args(p, direct=True)
        p.add_argument("--format", choices=("json", "dot"), default="json")
        common(p, budgets=False)
        p.set_defaults(func=func)

    p = sub.add_parser("solve-gt", help="brute-force Grid Tiling solver")
    _add_instance_args(p)
    common(p, budgets=False)
    p.set_defaults(func=cmd_solve_gt)

    p = sub.add_parser("solve-kcenter", help="exact, decision or 2-approximate k-Center")
    _add_instance_args(p, direct=True)
    p.add_argument("--graph", help="graph file instead of an instance")
    p.add_argument("--k", type=int, help="number of centers (default 5 chi^2 for instances)")
    p.add_argument("--radius", help="decide radius p/q instead of optimizing")
    p.add_argument("--approx", action="store_true", help="farthest-point 2-approximation")
    common(p)
    p.set_defaults(func=cmd_solve_kcenter)

    p = sub.add_parser("verify", help="structure checks and the equivalence verdict")
    _add_instance_args(p)
    p.add_argument("--id", default="", help="instance id recorded in the verdict")
    p.add_argument("--optimum", action="store_true", help="also compute the exact k-Center optimum")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("params", help="parameter report")
    _add_instance_args(p, direct=True)
    common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("sweep", help="run the pipeline over many random instances")
    p.add_argument("--chi", type=_int_list, default=[1, 2], help="comma-separated grid sides")
    p.add_argument("--n", type=_int_list, default=[2], help="comma-separated value bounds")
    p.add_argument("--seeds", type=lambda t: range(int(t)), default=range(3), help="number of seeds")
    p.add_argument("--pairs", type=int, default=2)
    p.add_argument("--no-params", action="store_true", help="skip parameter reports")
    common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SearchBudgetExceeded, VertexBudgetExceeded) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (
        InputError,
        GraphError,
        ReductionError,
        json.JSONDecodeError,
        KeyError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
