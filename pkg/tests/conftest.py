"""Shared builders and independent test oracles.

The oracle helpers here recompute induced degrees and enumerate subsets from
a plain weight dictionary on purpose: they must not share code paths with the
package functions they check.
"""

from __future__ import annotations

import itertools
import random

import pytest

from degsplit import Demands, LoopMode, build_graph


def complete_graph(n, w=1.0, loop_mode=LoopMode.DOUBLE):
    return build_graph(
        [(i, j, w) for i in range(n) for j in range(i + 1, n)], loop_mode
    )


@pytest.fixture
def triangle():
    return build_graph([("x", "y", 1.0), ("y", "z", 1.0), ("z", "x", 1.0)])


@pytest.fixture
def path3():
    return build_graph([("x", "y", 1.0), ("y", "z", 1.0)])


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k9():
    return complete_graph(9)


def weight_dict(graph):
    """Symmetric weight lookup rebuilt from the adjacency (loops included as
    (x, x) keys with their raw weight)."""
    w = {}
    for x in range(graph.n):
        for y, wx in graph.adjacency[x]:
            w[(x, y)] = wx
        if graph.loops[x] > 0.0:
            w[(x, x)] = graph.loops[x]
    return w


def plain_induced_degree(weights, loop_factor, members, x):
    """Independent induced-degree computation from a weight dict."""
    total = 0.0
    for y in members:
        if y == x:
            continue
        total += weights.get((x, y), 0.0)
    total += loop_factor * weights.get((x, x), 0.0)
    return total


def qualifying_subsets(graph, subset, thresholds):
    """All non-empty subsets T of ``subset`` with every member's induced
    degree >= its threshold.  Exponential; keep n small."""
    weights = weight_dict(graph)
    factor = graph.loop_mode.factor
    out = []
    items = sorted(subset)
    for size in range(1, len(items) + 1):
        for combo in itertools.combinations(items, size):
            members = set(combo)
            if all(
                plain_induced_degree(weights, factor, members, x) >= thresholds[x]
                for x in members
            ):
                out.append(frozenset(members))
    return out


def random_graph(rng: random.Random, n, p, weight_range=(0.1, 2.0), loops=False,
                 loop_mode=LoopMode.DOUBLE):
    """Plain random graph builder independent of the package generator."""
    lo, hi = weight_range
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((i, j, rng.uniform(lo, hi)))
    if loops:
        for i in range(n):
            if rng.random() < 0.5:
                edges.append((i, i, rng.uniform(lo, hi)))
    return build_graph(edges, loop_mode, vertices=range(n))


def random_demands(rng: random.Random, n, high):
    return Demands(
        tuple(rng.uniform(0.0, high) for _ in range(n)),
        tuple(rng.uniform(0.0, high) for _ in range(n)),
    )
