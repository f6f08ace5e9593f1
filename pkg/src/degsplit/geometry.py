"""Disk-square overlap areas, grid graphs, and the square two-coloring
application.

A grid instance is a set of unit cells and a radius r.  Each cell becomes a
vertex; the weight between x and y is the area of y's square lying within
distance r of x's center, and the loop weight is the overlap with x's own
square.  Demands of half the degree ask every cell's disk to cover at least
as much weight on its own side as on the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import TooFewCellsError, UnstablePartitionError
from .graph import Demands, LoopMode, WeightedGraph, build_graph, without_loops
from .solver import (
    DEFAULT_MAX_MOVES,
    SolveCertificate,
    check_feasibility,
    reduce_loops,
    solve,
    verify_partition,
)

Cell = tuple[int, int]

# overlaps below this are tangency roundoff; the graph model wants w > 0 strictly
MIN_EDGE_WEIGHT = 1e-12


@dataclass(frozen=True)
class GridInstance:
    """Distinct unit cells (i, j), each the square [i,i+1] x [j,j+1], plus a
    disk radius r > 0.  Cells are stored in row-major sorted order."""

    cells: tuple[Cell, ...]
    r: float

    def __post_init__(self):
        cells = tuple(sorted((int(i), int(j)) for i, j in self.cells))
        if len(set(cells)) != len(cells):
            raise ValueError("cells must be distinct")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "r", float(self.r))
        if not (self.r > 0.0) or math.isinf(self.r):
            raise ValueError("radius must be positive and finite")

    @classmethod
    def rectangle(cls, width: int, height: int, r: float) -> "GridInstance":
        return cls(tuple((i, j) for i in range(width) for j in range(height)), r)


def _segment_integral(x: float, r: float) -> float:
    # integral of sqrt(r^2 - t^2) dt from 0 to x, for 0 <= x <= r, in angle
    # form: the naive sqrt/asin expressions lose ~1e-8 absolute accuracy to
    # cancellation when x approaches r (tangent squares)
    theta = math.acos(min(1.0, max(0.0, x / r)))
    return 0.5 * r * r * (0.5 * math.pi - theta + math.sin(theta) * math.cos(theta))


def _quadrant_box(u: float, v: float, r: float) -> float:
    # area of disk(0, r) intersected with the box [0,u] x [0,v], u,v >= 0
    u = min(u, r)
    v = min(v, r)
    if u <= 0.0 or v <= 0.0:
        return 0.0
    if u * u + v * v <= r * r:
        return u * v
    xc = math.sqrt(max((r - v) * (r + v), 0.0))
    return v * xc + _segment_integral(u, r) - _segment_integral(xc, r)


def _signed_box(x: float, y: float, r: float) -> float:
    s = 1.0
    if x < 0.0:
        x, s = -x, -s
    if y < 0.0:
        y, s = -y, -s
    return s * _quadrant_box(x, y, r)


def circle_square_area(dx: float, dy: float, r: float) -> float:
    """Area of the disk of radius r at the origin intersected with the unit
    square centered at (dx, dy).

    Closed form: split the square on the axes and combine the four
    origin-anchored boxes by inclusion-exclusion; each box is a rectangle
    part plus a circular-segment integral.  Symmetric in the signs of dx and
    dy and in swapping them; exact up to roundoff, clamped to [0, 1].
    """
    if r <= 0.0:
        return 0.0
    dx, dy = abs(dx), abs(dy)
    x0, x1 = dx - 0.5, dx + 0.5
    y0, y1 = dy - 0.5, dy + 0.5
    near_x, near_y = max(x0, 0.0), max(y0, 0.0)
    if near_x * near_x + near_y * near_y >= r * r:
        return 0.0
    if x1 * x1 + y1 * y1 <= r * r:
        return 1.0
    area = (
        _signed_box(x1, y1, r)
        - _signed_box(x0, y1, r)
        - _signed_box(x1, y0, r)
        + _signed_box(x0, y0, r)
    )
    return min(1.0, max(0.0, area))


def build_grid_graph(instance: GridInstance, loop_mode: LoopMode = LoopMode.DOUBLE) -> WeightedGraph:
    """Grid graph of an instance: one vertex per cell labelled by the cell
    pair, w_xy the overlap of x's disk with square y, loops the overlap with
    the cell's own square.

    Only cells with center distance < r + sqrt(1/2) can overlap; beyond that
    the weight is exactly zero and no edge is created.
    """
    cells = instance.cells
    if len(cells) < 2:
        raise TooFewCellsError("a grid instance needs at least two cells")
    r = instance.r
    reach2 = (r + math.sqrt(0.5)) ** 2
    loop_w = circle_square_area(0.0, 0.0, r)

    edges: list[tuple[Cell, Cell, float]] = []
    for idx, (i, j) in enumerate(cells):
        if loop_w > MIN_EDGE_WEIGHT:
            edges.append(((i, j), (i, j), loop_w))
        for k, l in cells[idx + 1:]:
            ddx, ddy = k - i, l - j
            if ddx * ddx + ddy * ddy >= reach2:
                continue
            w = circle_square_area(ddx, ddy, r)
            if w > MIN_EDGE_WEIGHT:
                edges.append(((i, j), (k, l), w))
    return build_graph(edges, loop_mode, vertices=cells)


class DemandScheme(Enum):
    HALF_DEGREE = "half-degree"
    PHYSICAL_MAJORITY = "physical"


def _covered_area(graph: WeightedGraph, x: int) -> float:
    # total area of the disk around x lying over existing cells, own square once
    factor = graph.loop_mode.factor
    return graph.d[x] - (factor - 1) * graph.loops[x]


def squares_demands(graph: WeightedGraph, scheme: DemandScheme) -> Demands:
    """Demands for a grid graph.

    HALF_DEGREE sets a = b = d/2 under the graph's loop convention.
    PHYSICAL_MAJORITY encodes "at least half of the covered area is on my
    side" directly on the loopless reduced graph: a = b =
    max(0, T/2 - w_xx) with T the total covered area (own square once).
    """
    if scheme is DemandScheme.HALF_DEGREE:
        vals = tuple(d / 2.0 for d in graph.d)
        return Demands(vals, vals)
    vals = tuple(
        max(0.0, 0.5 * _covered_area(graph, x) - graph.loops[x]) for x in range(graph.n)
    )
    return Demands(vals, vals)


@dataclass(frozen=True)
class SquaresResult:
    """Two-coloring of the cells plus diagnostics.

    ``margins`` maps each cell to its physical margin: same-colored covered
    area minus other-colored covered area within its disk (own square counted
    once).  Graph-sense stability is gated exactly; physical margins are
    reported, not gated.
    """

    side_a: tuple[Cell, ...]
    side_b: tuple[Cell, ...]
    margins: dict[Cell, float]
    strict_majority_cells: int
    precondition_ok: bool
    certificate: SolveCertificate


def solve_squares(
    instance: GridInstance,
    scheme: DemandScheme = DemandScheme.HALF_DEGREE,
    loop_mode: LoopMode = LoopMode.DOUBLE,
    max_moves: int = DEFAULT_MAX_MOVES,
) -> SquaresResult:
    """Build the grid graph, derive demands, strip loops, solve, and report
    per-cell physical margins."""
    graph = build_grid_graph(instance, loop_mode)
    demands = squares_demands(graph, scheme)

    if scheme is DemandScheme.HALF_DEGREE:
        reduction = reduce_loops(graph, demands)
        reduced_graph, reduced_demands = reduction.graph, reduction.demands
        report = reduction.precondition
    else:
        # physical demands already account for the loop; just drop it
        reduced_graph = without_loops(graph)
        reduced_demands = demands
        report = check_feasibility(reduced_graph, reduced_demands)

    partition, cert = solve(reduced_graph, reduced_demands, max_moves=max_moves)

    if scheme is DemandScheme.HALF_DEGREE:
        residual = verify_partition(graph, demands, partition)
        if residual:
            raise UnstablePartitionError(
                "reduced solution failed to verify on the original grid graph"
            )

    cells = instance.cells
    margins: dict[Cell, float] = {}
    strict = 0
    for x in range(graph.n):
        same_side = partition.a if x in partition.a else partition.b
        cov_same = graph.loops[x]
        for y, w in graph.adjacency[x]:
            if y in same_side:
                cov_same += w
        margin = 2.0 * cov_same - _covered_area(graph, x)
        margins[cells[x]] = margin
        if margin > 0.0:
            strict += 1

    side_a = tuple(cells[x] for x in sorted(partition.a))
    side_b = tuple(cells[x] for x in sorted(partition.b))
    return SquaresResult(side_a, side_b, margins, strict, report.feasible, cert)
