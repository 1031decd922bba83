"""Command line front end.

Exit codes: 0 ok/found, 1 usage or input error, 2 falsified property,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Any, Callable

from .digraph import is_strongly_connected, period, periodic_partition, support_graph
from .exceptions import GrcpError, InvalidInput, PropertyViolated, ResourceCapExceeded
from .formats import AnalysisReport, digest, graph_to_json, load_coloring, load_graph, load_matrix
from .grcp import DEFAULT_MAX_COLORINGS, find_t_synchronizing_coloring
from .semigroup import DEFAULT_MAX_SEMIGROUP, generate, is_right_group, maximal_group, quotient_graph, stability_classes
from .spectral import (
    class_probability_report,
    fixed_space,
    invariant_measure,
    level2_determinant,
    pair_index,
    periodic_classes,
    sym_square,
)
from .validation import check_stochastic

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FALSIFIED = 2
EXIT_CAP = 3

ENV_MAX_COLORINGS = "GRCPKIT_MAX_COLORINGS"
ENV_MAX_SEMIGROUP = "GRCPKIT_MAX_SEMIGROUP"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"{name} must be an integer, got {raw!r}") from None


def _read_bytes(*paths: str) -> str:
    return digest(*(Path(p).read_bytes() for p in paths))


def _spectral_side(A) -> dict[str, Any]:
    det = level2_determinant(A)
    basis = fixed_space(A)
    try:
        classes = periodic_classes(A, cross_check=False).as_lists(one_based=True)
    except PropertyViolated:
        classes = None
    return {
        "determinant": str(det),
        "periodic": det == 0,
        "fixed_space_dimension": len(basis),
        "classes": classes,
    }


def cmd_period(graph_path: str) -> tuple[dict[str, Any], int]:
    g = load_graph(graph_path)
    t = period(g)
    oracle = periodic_partition(g).as_lists(one_based=True)
    spectral = _spectral_side(g.transition_matrix())
    agreement = spectral["periodic"] == (t >= 2) and spectral["classes"] == oracle
    results = {
        "n": g.n,
        "t": t,
        "classes": oracle,
        "bfs": {"t": t, "classes": oracle},
        "spectral": spectral,
        "agreement": agreement,
    }
    return results, EXIT_OK if agreement else EXIT_FALSIFIED


def cmd_grcp(graph_path: str, max_colorings: int, max_semigroup: int) -> tuple[dict[str, Any], int]:
    g = load_graph(graph_path)
    report = find_t_synchronizing_coloring(g, max_colorings=max_colorings, max_semigroup=max_semigroup)
    return report.to_dict(), EXIT_OK if report.found else EXIT_FALSIFIED


def cmd_spectral(matrix_path: str, emit_sym_square: bool = False) -> tuple[dict[str, Any], int]:
    A = check_stochastic(load_matrix(matrix_path))
    n = A.nrows
    det = level2_determinant(A)
    basis = fixed_space(A)
    classes = periodic_classes(A, cross_check=False)
    oracle = periodic_partition(support_graph(A))
    agreement = (det == 0) == (len(oracle) >= 2) and classes == oracle
    pi = invariant_measure(A)
    results: dict[str, Any] = {
        "n": n,
        "determinant": str(det),
        "periodic": det == 0,
        "period": len(classes),
        "fixed_space": {
            "dimension": len(basis),
            "pairs": [[i + 1, j + 1] for i, j in pair_index(n)],
            "basis": [[str(x) for x in v.coords] for v in basis],
        },
        "classes": classes.as_lists(one_based=True),
        "invariant_measure": [str(x) for x in pi],
        "class_probabilities": class_probability_report(pi, classes).to_dict(),
        "oracle_agreement": agreement,
    }
    if emit_sym_square:
        results["sym_square"] = sym_square(A).to_strings()
    return results, EXIT_OK if agreement else EXIT_FALSIFIED


def cmd_semigroup(graph_path: str, coloring_path: str, max_semigroup: int) -> tuple[dict[str, Any], int]:
    g = load_graph(graph_path)
    c = load_coloring(coloring_path, g)
    s = generate(c, max_size=max_semigroup)
    k = s.kernel
    e = k.shortest_element()
    grp = maximal_group(k, e, e)
    stab = stability_classes(s)
    quotient = None
    if not stab.is_discrete():
        qg, _ = quotient_graph(g, c, stab)
        strong = is_strongly_connected(qg)
        quotient = {
            "n": qg.n,
            "graph": graph_to_json(qg),
            "strongly_connected": strong,
            "period": period(qg) if strong else None,
        }
    results = {
        "n": g.n,
        "d": c.d,
        "semigroup_size": len(s),
        "kernel": {
            "rank": k.rank,
            "size": len(k),
            "num_ranges": len(k.ranges),
            "num_partitions": len(k.partitions),
            "ranges": [sorted(v + 1 for v in b) for b in k.ranges],
            "partitions": [p.as_lists(one_based=True) for p in k.partitions],
            "idempotents": len(k.idempotents),
            "is_right_group": is_right_group(k),
            "group_order": grp.order,
            "group_is_cyclic": grp.is_cyclic,
            "shortest_word": [x + 1 for x in s.word(e)],
        },
        "stability_classes": stab.as_lists(one_based=True),
        "period": period(g) if is_strongly_connected(g) else None,
        "quotient": quotient,
    }
    return results, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grcpkit", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit the full JSON report")

    p = sub.add_parser("period", help="period and periodic classes, BFS and spectral")
    p.add_argument("graph")
    common(p)

    p = sub.add_parser("grcp", help="search for a t-synchronizing coloring")
    p.add_argument("graph")
    p.add_argument("--max-colorings", type=int, default=None)
    p.add_argument("--max-semigroup", type=int, default=None)
    common(p)

    p = sub.add_parser("spectral", help="level-2 analysis of an exact stochastic matrix")
    p.add_argument("matrix")
    p.add_argument("--emit-sym-square", action="store_true")
    common(p)

    p = sub.add_parser("semigroup", help="kernel structure of a coloring semigroup")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--max-semigroup", type=int, default=None)
    common(p)
    return parser


def _dispatch(args: argparse.Namespace) -> tuple[Callable[[], tuple[dict, int]], tuple[str, ...]]:
    if args.command == "period":
        return (lambda: cmd_period(args.graph)), (args.graph,)
    if args.command == "spectral":
        return (lambda: cmd_spectral(args.matrix, args.emit_sym_square)), (args.matrix,)
    max_sg = args.max_semigroup if args.max_semigroup is not None else _env_int(ENV_MAX_SEMIGROUP, DEFAULT_MAX_SEMIGROUP)
    if args.command == "grcp":
        max_col = (
            args.max_colorings if args.max_colorings is not None else _env_int(ENV_MAX_COLORINGS, DEFAULT_MAX_COLORINGS)
        )
        return (lambda: cmd_grcp(args.graph, max_col, max_sg)), (args.graph,)
    return (lambda: cmd_semigroup(args.graph, args.coloring, max_sg)), (args.graph, args.coloring)


def _print_summary(report: AnalysisReport) -> None:
    print(f"{report.command}:")
    for key, value in report.results.items():
        print(f"  {key}: {json.dumps(value, sort_keys=True)}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter_ns()
    try:
        run, paths = _dispatch(args)
        input_digest = _read_bytes(*paths)
        results, code = run()
    except ResourceCapExceeded as exc:
        print(f"grcpkit: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PropertyViolated as exc:
        print(f"grcpkit: property violated: {exc}", file=sys.stderr)
        print(json.dumps(exc.evidence, indent=2, sort_keys=True, default=str), file=sys.stderr)
        return EXIT_FALSIFIED
    except (GrcpError, ValueError, OSError) as exc:
        print(f"grcpkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed_ms = (time.perf_counter_ns() - start) // 1_000_000
    report = AnalysisReport(args.command, input_digest, results, timing={"elapsed_ms": elapsed_ms})
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        _print_summary(report)
    if code == EXIT_FALSIFIED and not args.json:
        print("grcpkit: falsified; rerun with --json for the evidence dump", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
