"""Command-line front end: file formats, subcommand dispatch, JSON/text
emission, and SVG rendering of square two-colorings.

File formats (UTF-8 text, ``#`` starts a comment):
  graph    one edge per line, ``u v w``; ``u u w`` declares a loop
  demands  lines ``u a b``; vertices not listed default to a = b = 0
  cells    lines ``i j`` with integer coordinates

Exit codes: 0 success with stable output, 1 infeasible or no-partition
outcome, 2 input error (one machine-parsable JSON line on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import (
    DegsplitError,
    GenerationFailedError,
    SolverError,
    TooFewCellsError,
    TooLargeError,
)
from .geometry import DemandScheme, GridInstance, solve_squares
from .graph import Demands, LoopMode, WeightedGraph, build_graph
from .oracle import brute_force_solve, random_feasible_instance
from .solver import DEFAULT_MAX_MOVES, Partition, solve, verify_partition

EXIT_OK = 0
EXIT_NO_PARTITION = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _read_lines(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = handle.readlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    out = []
    for lineno, line in enumerate(raw, start=1):
        text = line.split("#", 1)[0].strip()
        if text:
            out.append((lineno, text))
    return out


def parse_graph_file(path, loop_mode: LoopMode) -> WeightedGraph:
    edges = []
    for lineno, text in _read_lines(path):
        parts = text.split()
        if len(parts) != 3:
            raise InputError(f"{path}:{lineno}: expected 'u v w'")
        u, v, w_text = parts
        try:
            w = float(w_text)
        except ValueError:
            raise InputError(f"{path}:{lineno}: bad weight {w_text!r}") from None
        edges.append((u, v, w))
    if not edges:
        raise InputError(f"{path}: no edges")
    return build_graph(edges, loop_mode)


def parse_demands_file(path, graph: WeightedGraph) -> Demands:
    a = [0.0] * graph.n
    b = [0.0] * graph.n
    for lineno, text in _read_lines(path):
        parts = text.split()
        if len(parts) != 3:
            raise InputError(f"{path}:{lineno}: expected 'u a b'")
        label, a_text, b_text = parts
        if label not in graph.label_index:
            raise InputError(f"{path}:{lineno}: unknown vertex {label!r}")
        x = graph.label_index[label]
        try:
            a[x] = float(a_text)
            b[x] = float(b_text)
        except ValueError:
            raise InputError(f"{path}:{lineno}: bad demand value") from None
    try:
        return Demands(tuple(a), tuple(b))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_cells_file(path) -> list[tuple[int, int]]:
    cells = []
    for lineno, text in _read_lines(path):
        parts = text.split()
        if len(parts) != 2:
            raise InputError(f"{path}:{lineno}: expected 'i j'")
        try:
            cells.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InputError(f"{path}:{lineno}: cell coordinates must be integers") from None
    if not cells:
        raise InputError(f"{path}: no cells")
    return cells


def parse_partition_file(path, graph: WeightedGraph) -> Partition:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON: {exc}") from exc
    try:
        side_a = [graph.label_index[str(u)] for u in payload["A"]]
        side_b = [graph.label_index[str(u)] for u in payload["B"]]
    except KeyError as exc:
        raise InputError(f"{path}: missing or unknown vertex {exc}") from exc
    try:
        return Partition(frozenset(side_a), frozenset(side_b))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def format_graph_file(graph: WeightedGraph) -> str:
    """Canonical graph text: loops then edges, each line ``u v w`` with the
    endpoint labels sorted, lines sorted, weights in shortest repr."""
    lines = []
    for x in range(graph.n):
        if graph.loops[x] > 0.0:
            label = str(graph.labels[x])
            lines.append((label, label, graph.loops[x]))
    for x in range(graph.n):
        for y, w in graph.adjacency[x]:
            if x < y:
                u, v = str(graph.labels[x]), str(graph.labels[y])
                if v < u:
                    u, v = v, u
                lines.append((u, v, w))
    lines.sort()
    return "".join(f"{u} {v} {w!r}\n" for u, v, w in lines)


def format_demands_file(graph: WeightedGraph, demands: Demands) -> str:
    lines = sorted(
        (str(graph.labels[x]), demands.a[x], demands.b[x]) for x in range(graph.n)
    )
    return "".join(f"{u} {a!r} {b!r}\n" for u, a, b in lines)


def _labels(graph: WeightedGraph, members) -> list[str]:
    return [str(graph.labels[x]) for x in sorted(members)]


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
        return
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list) and all(not isinstance(v, (list, dict)) for v in value):
            sys.stdout.write(f"{key}: {' '.join(str(v) for v in value)}\n")
        else:
            sys.stdout.write(f"{key}: {value}\n")


def _violation_payload(graph, violations):
    return [
        {
            "vertex": str(graph.labels[v.vertex]),
            "side": v.side,
            "degree": v.degree,
            "demand": v.demand,
        }
        for v in violations
    ]


def render_squares_svg(path, instance, side_a, r, show_circle=None, scale=20):
    """One unit rect per cell: side A ``#1f77b4``, side B ``#ff7f0e``, 1px
    grid stroke; optionally overlay the radius-r circle of one cell."""
    cells = instance.cells
    in_a = set(side_a)
    min_i = min(i for i, _ in cells)
    max_i = max(i for i, _ in cells)
    min_j = min(j for _, j in cells)
    max_j = max(j for _, j in cells)
    pad = math.ceil(r) + 1 if show_circle else 1
    width = (max_i - min_i + 1 + 2 * pad) * scale
    height = (max_j - min_j + 1 + 2 * pad) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    for i, j in cells:
        x = (i - min_i + pad) * scale
        y = (max_j - j + pad) * scale
        fill = "#1f77b4" if (i, j) in in_a else "#ff7f0e"
        parts.append(
            f'<rect x="{x}" y="{y}" width="{scale}" height="{scale}" '
            f'fill="{fill}" stroke="#000000" stroke-width="1"/>'
        )
    if show_circle is not None:
        ci, cj = show_circle
        cx = (ci - min_i + pad + 0.5) * scale
        cy = (max_j - cj + pad + 0.5) * scale
        parts.append(
            f'<circle cx="{cx}" cy="{cy}" r="{r * scale}" '
            'fill="none" stroke="#555555" stroke-width="1"/>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(parts) + "\n")


def _cmd_solve(args) -> int:
    graph = parse_graph_file(args.graph, args.loop_mode)
    demands = parse_demands_file(args.demands, graph)
    try:
        partition, cert = solve(graph, demands, max_moves=args.max_moves)
    except SolverError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.format)
        return EXIT_NO_PARTITION
    violations = verify_partition(graph, demands, partition, tol=args.tolerance)
    payload = {
        "A": _labels(graph, partition.a),
        "B": _labels(graph, partition.b),
        "h_trace": cert.h_trace,
        "moves": len(cert.moves),
        "violations": _violation_payload(graph, violations),
        "feasible": cert.feasibility.feasible,
    }
    _emit(payload, args.format)
    return EXIT_OK if not violations else EXIT_NO_PARTITION


def _cmd_oracle(args) -> int:
    graph = parse_graph_file(args.graph, args.loop_mode)
    demands = parse_demands_file(args.demands, graph)
    result = brute_force_solve(graph, demands)
    payload = {"exists": result.exists, "count": result.count}
    if result.witness is not None:
        payload["witness"] = {
            "A": _labels(graph, result.witness.a),
            "B": _labels(graph, result.witness.b),
        }
    else:
        payload["witness"] = None
    _emit(payload, args.format)
    return EXIT_OK if result.exists else EXIT_NO_PARTITION


def _cmd_verify(args) -> int:
    graph = parse_graph_file(args.graph, args.loop_mode)
    demands = parse_demands_file(args.demands, graph)
    partition = parse_partition_file(args.partition, graph)
    violations = verify_partition(graph, demands, partition, tol=args.tolerance)
    payload = {
        "stable": not violations,
        "violations": _violation_payload(graph, violations),
    }
    _emit(payload, args.format)
    return EXIT_OK if not violations else EXIT_NO_PARTITION


def _cmd_squares(args) -> int:
    cells = parse_cells_file(args.cells)
    try:
        instance = GridInstance(tuple(cells), args.radius)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    scheme = (
        DemandScheme.HALF_DEGREE
        if args.scheme == "half-degree"
        else DemandScheme.PHYSICAL_MAJORITY
    )
    try:
        result = solve_squares(
            instance, scheme, loop_mode=args.loop_mode, max_moves=args.max_moves
        )
    except SolverError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.format)
        return EXIT_NO_PARTITION
    payload = {
        "A": [list(c) for c in result.side_a],
        "B": [list(c) for c in result.side_b],
        "margins": [[i, j, result.margins[(i, j)]] for i, j in instance.cells],
        "strict_majority_cells": result.strict_majority_cells,
        "precondition_ok": result.precondition_ok,
        "moves": len(result.certificate.moves),
    }
    if args.svg:
        show = None
        if args.show_circle:
            try:
                ci, cj = (int(p) for p in args.show_circle.split(","))
            except ValueError:
                raise InputError("--show-circle expects 'i,j'") from None
            show = (ci, cj)
        render_squares_svg(args.svg, instance, set(result.side_a), instance.r, show)
        payload["svg"] = args.svg
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_gen(args) -> int:
    try:
        graph, demands = random_feasible_instance(
            args.n,
            args.edge_probability,
            (args.weight_min, args.weight_max),
            args.seed,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    graph_text = format_graph_file(graph)
    demands_text = format_demands_file(graph, demands)
    with open(args.out_graph, "w", encoding="utf-8") as handle:
        handle.write(graph_text)
    with open(args.out_demands, "w", encoding="utf-8") as handle:
        handle.write(demands_text)
    edge_count = sum(len(row) for row in graph.adjacency) // 2
    _emit(
        {
            "graph": args.out_graph,
            "demands": args.out_demands,
            "n": graph.n,
            "edges": edge_count,
        },
        args.format,
    )
    return EXIT_OK


def _loop_mode(text: str) -> LoopMode:
    if text == "once":
        return LoopMode.ONCE
    if text == "double":
        return LoopMode.DOUBLE
    raise argparse.ArgumentTypeError(f"expected 'once' or 'double', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degsplit",
        description="Split a weighted graph into two sides meeting degree demands.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph_files=True):
        if graph_files:
            p.add_argument("--graph", required=True, help="edge list file")
            p.add_argument("--demands", required=True, help="demands file")
        p.add_argument(
            "--loop-mode",
            dest="loop_mode",
            type=_loop_mode,
            default=LoopMode.DOUBLE,
            metavar="once|double",
            help="loop degree convention (default: double)",
        )
        p.add_argument("--tolerance", type=float, default=0.0)
        p.add_argument("--max-moves", dest="max_moves", type=int, default=DEFAULT_MAX_MOVES)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="json")

    p_solve = sub.add_parser("solve", help="compute a stable partition")
    common(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_oracle = sub.add_parser("oracle", help="brute-force stable-partition existence")
    common(p_oracle)
    p_oracle.set_defaults(func=_cmd_oracle)

    p_verify = sub.add_parser("verify", help="check a partition against demands")
    common(p_verify)
    p_verify.add_argument("--partition", required=True, help="JSON file with A/B label lists")
    p_verify.set_defaults(func=_cmd_verify)

    p_squares = sub.add_parser("squares", help="two-color grid cells")
    common(p_squares, graph_files=False)
    p_squares.add_argument("--cells", required=True, help="cell list file")
    p_squares.add_argument("--radius", type=float, required=True)
    p_squares.add_argument("--scheme", choices=("half-degree", "physical"), default="half-degree")
    p_squares.add_argument("--svg", help="write an SVG rendering here")
    p_squares.add_argument("--show-circle", dest="show_circle", help="overlay circle at cell 'i,j'")
    p_squares.set_defaults(func=_cmd_squares)

    p_gen = sub.add_parser("gen", help="generate a random feasible instance")
    common(p_gen, graph_files=False)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--edge-probability", dest="edge_probability", type=float, default=0.5)
    p_gen.add_argument("--weight-min", dest="weight_min", type=float, default=0.5)
    p_gen.add_argument("--weight-max", dest="weight_max", type=float, default=1.0)
    p_gen.add_argument("--out-graph", dest="out_graph", required=True)
    p_gen.add_argument("--out-demands", dest="out_demands", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(json.dumps({"error": "InputError", "message": str(exc)}) + "\n")
        return EXIT_INPUT
    except (TooLargeError, TooFewCellsError, GenerationFailedError) as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return EXIT_INPUT
    except SolverError as exc:
        # solver failures outside command handlers (e.g. single-vertex input)
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return EXIT_NO_PARTITION
    except DegsplitError as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
