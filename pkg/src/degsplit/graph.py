"""Weighted undirected graph model.

Vertices are dense indices 0..n-1 behind arbitrary hashable labels.  The
graph caches, per vertex, the degree ``d`` (sum of incident weights, with a
declared convention for how loops count) and ``W`` (largest non-loop incident
weight).  Both caches are summed in ascending-neighbor order so that
rebuilding the same graph from a shuffled edge list reproduces them bit for
bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterable

from .errors import DuplicateEdgeError, NonPositiveWeightError, VertexNotInSetError

Label = Hashable


class LoopMode(Enum):
    """Loop-degree convention: a loop of weight w adds w (ONCE) or 2w (DOUBLE)
    to the degree of its vertex.  DOUBLE is the default."""

    ONCE = "once"
    DOUBLE = "double"

    @property
    def factor(self) -> int:
        return 1 if self is LoopMode.ONCE else 2


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable weighted graph with validated, symmetric positive weights.

    ``adjacency[x]`` lists ``(neighbor, weight)`` pairs sorted by neighbor
    index and never contains x itself; loops live in ``loops[x]`` (0 means no
    loop).  Safe to share between threads once built.
    """

    n: int
    labels: tuple[Label, ...] = field(repr=False)
    adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False)
    loops: tuple[float, ...] = field(repr=False)
    loop_mode: LoopMode
    d: tuple[float, ...] = field(repr=False)
    W: tuple[float, ...] = field(repr=False)
    label_index: dict[Label, int] = field(repr=False, compare=False)

    def vertices(self) -> range:
        return range(self.n)

    def index_of(self, label: Label) -> int:
        return self.label_index[label]

    def weight(self, x: int, y: int) -> float:
        """Weight of edge xy (the loop weight when x == y, 0 when absent)."""
        if x == y:
            return self.loops[x]
        for z, w in self.adjacency[x]:
            if z == y:
                return w
        return 0.0

    def has_loops(self) -> bool:
        return any(w > 0.0 for w in self.loops)


@dataclass(frozen=True)
class Demands:
    """Per-vertex non-negative degree targets for the two sides."""

    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if len(self.a) != len(self.b):
            raise ValueError("demand vectors differ in length")
        for values in (self.a, self.b):
            for v in values:
                if not math.isfinite(v) or v < 0.0:
                    raise ValueError(f"demands must be finite and non-negative, got {v}")

    @classmethod
    def constant(cls, n: int, a: float, b: float) -> "Demands":
        return cls((float(a),) * n, (float(b),) * n)

    def __len__(self) -> int:
        return len(self.a)


def _cached_profile(
    adjacency: tuple[tuple[tuple[int, float], ...], ...],
    loops: tuple[float, ...],
    loop_mode: LoopMode,
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    degrees = []
    maxima = []
    factor = loop_mode.factor
    for x in range(len(adjacency)):
        total = 0.0
        best = 0.0
        for _, w in adjacency[x]:
            total += w
            if w > best:
                best = w
        if loops[x]:
            total += factor * loops[x]
        degrees.append(total)
        maxima.append(best)
    return tuple(degrees), tuple(maxima)


def build_graph(
    edges: Iterable[tuple[Label, Label, float]],
    loop_mode: LoopMode = LoopMode.DOUBLE,
    vertices: Iterable[Label] = (),
) -> WeightedGraph:
    """Validate an edge list and build a graph with populated caches.

    Labels map to dense indices in first-appearance order (entries of
    ``vertices`` first, which also allows isolated vertices).  An entry
    ``(u, u, w)`` declares a loop.  Raises NonPositiveWeightError for weights
    that are not strictly positive and DuplicateEdgeError when a pair appears
    twice in either orientation.
    """
    label_index: dict[Label, int] = {}
    labels: list[Label] = []

    def intern(label: Label) -> int:
        idx = label_index.get(label)
        if idx is None:
            idx = len(labels)
            label_index[label] = idx
            labels.append(label)
        return idx

    for label in vertices:
        intern(label)

    pending: list[tuple[int, int, float]] = []
    loop_weights: dict[int, float] = {}
    seen: set[tuple[int, int]] = set()
    for u, v, w in edges:
        w = float(w)
        if not (w > 0.0) or math.isinf(w):
            raise NonPositiveWeightError(f"edge ({u!r}, {v!r}) has weight {w}")
        x, y = intern(u), intern(v)
        if x == y:
            if x in loop_weights:
                raise DuplicateEdgeError(f"loop at {u!r} listed twice")
            loop_weights[x] = w
            continue
        key = (x, y) if x < y else (y, x)
        if key in seen:
            raise DuplicateEdgeError(f"edge ({u!r}, {v!r}) listed twice")
        seen.add(key)
        pending.append((x, y, w))

    n = len(labels)
    lists: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for x, y, w in pending:
        lists[x].append((y, w))
        lists[y].append((x, w))
    adjacency = tuple(tuple(sorted(row)) for row in lists)
    loops = tuple(loop_weights.get(x, 0.0) for x in range(n))
    d, w_max = _cached_profile(adjacency, loops, loop_mode)
    return WeightedGraph(
        n=n,
        labels=tuple(labels),
        adjacency=adjacency,
        loops=loops,
        loop_mode=loop_mode,
        d=d,
        W=w_max,
        label_index=label_index,
    )


def induced_degree(graph: WeightedGraph, subset, x: int) -> float:
    """Degree of x inside the subgraph induced by ``subset``.

    Sums the weights of edges from x to other members (in ascending-neighbor
    order, so results are reproducible) plus x's own loop contribution under
    the graph's loop mode.  ``x`` must be a member.
    """
    if x not in subset:
        raise VertexNotInSetError(f"vertex {x} is not in the queried subset")
    total = 0.0
    for y, w in graph.adjacency[x]:
        if y in subset:
            total += w
    if graph.loops[x]:
        total += graph.loop_mode.factor * graph.loops[x]
    return total


def degree_profile(graph: WeightedGraph) -> tuple[list[float], list[float]]:
    """Copies of the cached per-vertex degree and max-incident-weight arrays."""
    return list(graph.d), list(graph.W)


def without_loops(graph: WeightedGraph) -> WeightedGraph:
    """The same graph with every loop removed (degrees recomputed)."""
    if not graph.has_loops():
        return graph
    loops = (0.0,) * graph.n
    d, w_max = _cached_profile(graph.adjacency, loops, graph.loop_mode)
    return WeightedGraph(
        n=graph.n,
        labels=graph.labels,
        adjacency=graph.adjacency,
        loops=loops,
        loop_mode=graph.loop_mode,
        d=d,
        W=w_max,
        label_index=graph.label_index,
    )
