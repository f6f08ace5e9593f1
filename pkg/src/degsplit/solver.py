"""Decomposition solver.

Given per-vertex demand pairs (a, b), find a partition (A, B) of the vertex
set such that every A-vertex has induced degree >= a inside A and every
B-vertex induced degree >= b inside B.  Success is guaranteed whenever the
degree slack d(x) - a(x) - b(x) - 2W(x) (plus the loop correction) is
non-negative everywhere; the solver may still succeed without it but will
raise a diagnosable error rather than return an unstable partition.

The search runs in three phases.  First take an inclusion-minimal set A whose
members meet their a-demands, with B the rest.  Second, if B contains a
non-empty core meeting the stronger bound b + W, that core together with A is
already a stable pair.  Otherwise hill-climb: repeatedly move a witness
vertex (one whose current side cannot keep it at demand + W) across the
split.  Every accepted move strictly increases the potential h, so no split
repeats and the climb terminates.

On h: the value counts each internal edge twice (once per endpoint) and the
cross demand terms twice as well, so a move of vertex v changes h by exactly
2 * (new-side degree - old-side degree + demand swap), which is strictly
positive whenever the slack condition holds at v.  Certificates carry a
cumulative h trace built from these per-move gains; it matches a fresh
recomputation to float accuracy and is strictly increasing by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import minimal_satisfying_set, peel
from .errors import (
    CompletionAssertFailedError,
    MoveLimitExceededError,
    NonImprovingMoveError,
    PartitionCollapseError,
    SingleVertexGraphError,
    UnstablePartitionError,
)
from .graph import Demands, WeightedGraph, induced_degree, without_loops

DEFAULT_MAX_MOVES = 1_000_000

PHASE_FEASIBILITY = "FEASIBILITY"
PHASE_MINIMAL_SET = "MINIMAL_SET"
PHASE_CASE1_CORE = "CASE1_CORE"
PHASE_HILLCLIMB = "HILLCLIMB"
PHASE_COMPLETION = "COMPLETION"


@dataclass(frozen=True)
class Partition:
    """Two disjoint non-empty sides covering vertices 0..n-1 exactly."""

    a: frozenset[int]
    b: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "a", frozenset(self.a))
        object.__setattr__(self, "b", frozenset(self.b))
        if not self.a or not self.b:
            raise ValueError("both sides must be non-empty")
        if self.a & self.b:
            raise ValueError("sides overlap")
        n = len(self.a) + len(self.b)
        if self.a | self.b != frozenset(range(n)):
            raise ValueError("sides must cover vertex indices 0..n-1 exactly")

    @property
    def n(self) -> int:
        return len(self.a) + len(self.b)

    def side(self, x: int) -> str:
        return "A" if x in self.a else "B"


@dataclass(frozen=True)
class FeasibilityReport:
    """Per-vertex slack of the degree precondition; a negative entry marks a
    vertex where the success guarantee does not apply."""

    slack: tuple[float, ...]
    violations: tuple[int, ...]
    feasible: bool


@dataclass(frozen=True)
class Violation:
    vertex: int
    side: str
    degree: float
    demand: float

    @property
    def slack(self) -> float:
        return self.degree - self.demand


@dataclass(frozen=True)
class Move:
    vertex: int
    from_side: str
    to_side: str
    h_before: float
    h_after: float

    @property
    def gain(self) -> float:
        return self.h_after - self.h_before


@dataclass
class SolveCertificate:
    """Trace of a solver run: phases, hill-climb moves with h values, the
    stable pair found before completion, and final per-vertex slacks."""

    phase_log: list[str] = field(default_factory=list)
    moves: list[Move] = field(default_factory=list)
    h_trace: list[float] = field(default_factory=list)
    hillclimb_start: tuple[frozenset[int], frozenset[int]] | None = None
    stable_pair: tuple[frozenset[int], frozenset[int]] | None = None
    verification: list[float] | None = None
    feasibility: FeasibilityReport | None = None


def _require_matching(graph: WeightedGraph, demands: Demands) -> None:
    if len(demands) != graph.n:
        raise ValueError(f"expected demands for {graph.n} vertices, got {len(demands)}")


def check_feasibility(graph: WeightedGraph, demands: Demands) -> FeasibilityReport:
    """Per-vertex slack d - a - b - 2W, loop-corrected.

    A loop at x weakens the requirement by its own degree contribution
    (2*w_xx under DOUBLE, w_xx under ONCE), matching what survives after
    reduce_loops.  Reporting only; nothing is enforced.
    """
    _require_matching(graph, demands)
    factor = graph.loop_mode.factor
    slack = []
    for x in range(graph.n):
        s = graph.d[x] - demands.a[x] - demands.b[x] - 2.0 * graph.W[x]
        if graph.loops[x]:
            s += factor * graph.loops[x]
        slack.append(s)
    violations = tuple(x for x in range(graph.n) if slack[x] < 0.0)
    return FeasibilityReport(tuple(slack), violations, not violations)


def _h(graph: WeightedGraph, side_a, side_b, demands: Demands) -> float:
    total = 0.0
    for x in sorted(side_a):
        total += induced_degree(graph, side_a, x)
    for x in sorted(side_b):
        total += induced_degree(graph, side_b, x)
    for x in sorted(side_a):
        total += 2.0 * demands.b[x]
    for x in sorted(side_b):
        total += 2.0 * demands.a[x]
    return total


def h_value(graph: WeightedGraph, partition: Partition, demands: Demands) -> float:
    """Potential of a partition: both internal edge sums with every edge
    counted twice (loops contribute per the graph's loop mode, once per
    vertex), plus doubled cross demand terms (b over A, a over B)."""
    _require_matching(graph, demands)
    if partition.n != graph.n:
        raise ValueError("partition does not cover this graph")
    return _h(graph, partition.a, partition.b, demands)


@dataclass(frozen=True)
class _Candidate:
    vertex: int
    from_side: str
    to_side: str
    gain: float


def _candidate_move(graph, demands, src_set, dst_set, src_name) -> _Candidate | None:
    """Best witness move out of src_set, or None if no vertex violates the
    demand + W bound there (or the side would empty)."""
    if len(src_set) < 2:
        return None
    dem = demands.b if src_name == "B" else demands.a
    witness = None
    best_margin = 0.0
    for x in sorted(src_set):
        margin = dem[x] + graph.W[x] - induced_degree(graph, src_set, x)
        if margin > best_margin:
            witness, best_margin = x, margin
    if witness is None:
        return None
    d_old = induced_degree(graph, src_set, witness)
    d_new = induced_degree(graph, dst_set | {witness}, witness)
    if src_name == "B":
        swap = demands.b[witness] - demands.a[witness]
        dst_name = "A"
    else:
        swap = demands.a[witness] - demands.b[witness]
        dst_name = "B"
    gain = 2.0 * (d_new - d_old + swap)
    return _Candidate(witness, src_name, dst_name, gain)


def find_stable_pair(
    graph: WeightedGraph,
    demands: Demands,
    max_moves: int = DEFAULT_MAX_MOVES,
    _certificate: SolveCertificate | None = None,
) -> tuple[frozenset[int], frozenset[int], SolveCertificate]:
    """Disjoint non-empty sets (Abar, Bbar) with every Abar-vertex meeting
    its a-demand inside Abar and every Bbar-vertex its b-demand inside Bbar.

    Zero-degree vertices are set aside first (a pair need not cover them).
    Raises MoveLimitExceededError, PartitionCollapseError or
    NonImprovingMoveError when the search cannot finish; all three are only
    reachable when the degree precondition fails.
    """
    _require_matching(graph, demands)
    if max_moves < 1:
        raise ValueError("max_moves must be at least 1")
    cert = _certificate if _certificate is not None else SolveCertificate()

    active = frozenset(x for x in range(graph.n) if graph.d[x] > 0.0)
    if len(active) < 2:
        raise PartitionCollapseError("need at least two vertices of positive degree")
    a_dem, b_dem = demands.a, demands.b

    cert.phase_log.append(PHASE_MINIMAL_SET)
    side_a = minimal_satisfying_set(graph, a_dem, within=active)
    side_b = active - side_a
    if not side_b:
        raise PartitionCollapseError("every active vertex is needed to meet the a-demands")

    cert.phase_log.append(PHASE_CASE1_CORE)
    strong_b = [b_dem[x] + graph.W[x] for x in range(graph.n)]
    strong_core = peel(graph, side_b, strong_b)
    if strong_core:
        cert.stable_pair = (side_a, strong_core)
        return side_a, strong_core, cert

    cert.phase_log.append(PHASE_HILLCLIMB)
    side_a, side_b = set(side_a), set(side_b)
    cert.hillclimb_start = (frozenset(side_a), frozenset(side_b))
    h = _h(graph, side_a, side_b, demands)
    cert.h_trace.append(h)

    for _ in range(max_moves):
        core_a = peel(graph, side_a, a_dem)
        core_b = peel(graph, side_b, b_dem)
        if core_a and core_b:
            cert.stable_pair = (core_a, core_b)
            return core_a, core_b, cert

        to_a = _candidate_move(graph, demands, side_b, side_a, "B")
        to_b = _candidate_move(graph, demands, side_a, side_b, "A")
        if not core_a and core_b:
            move = to_a or to_b
        elif not core_b and core_a:
            move = to_b or to_a
        elif to_a and to_b:
            # both cores empty: take the larger gain, ties prefer B -> A
            move = to_a if to_a.gain >= to_b.gain else to_b
        else:
            move = to_a or to_b
        if move is None:
            raise PartitionCollapseError("no witness vertex can move without emptying a side")
        if move.gain <= 0.0:
            raise NonImprovingMoveError(
                f"moving vertex {move.vertex} {move.from_side}->{move.to_side} "
                f"gains {move.gain}; the degree precondition fails"
            )

        if move.from_side == "B":
            side_b.remove(move.vertex)
            side_a.add(move.vertex)
        else:
            side_a.remove(move.vertex)
            side_b.add(move.vertex)
        h_before = h
        h = h + move.gain
        cert.moves.append(Move(move.vertex, move.from_side, move.to_side, h_before, h))
        cert.h_trace.append(h)

    raise MoveLimitExceededError(f"no stable pair within {max_moves} moves")


def _complete_sets(graph, demands, pair, universe, cert):
    """Grow the pair to cover ``universe``: leftovers default to the B side,
    and any leftover that cannot meet its b-demand there moves into A."""
    abar = frozenset(pair[0])
    bbar = frozenset(pair[1])
    if not abar or not bbar:
        raise ValueError("a stable pair has two non-empty sides")
    if abar & bbar:
        raise ValueError("pair sides overlap")
    if not abar <= universe or not bbar <= universe:
        raise ValueError("pair is not contained in the vertex set")
    if cert is not None:
        cert.phase_log.append(PHASE_COMPLETION)

    side_a = set(abar)
    rest = set(universe) - abar - bbar
    while True:
        b_full = bbar | rest
        mover = None
        for x in sorted(rest):
            if induced_degree(graph, b_full, x) < demands.b[x]:
                mover = x
                break
        if mover is None:
            return frozenset(side_a), frozenset(b_full)
        grown = side_a | {mover}
        if induced_degree(graph, grown, mover) < demands.a[mover]:
            raise CompletionAssertFailedError(
                f"vertex {mover} meets neither side's demand; "
                "the degree precondition fails"
            )
        side_a.add(mover)
        rest.remove(mover)


def complete_pair(
    graph: WeightedGraph,
    demands: Demands,
    pair: tuple[frozenset[int], frozenset[int]],
    _certificate: SolveCertificate | None = None,
) -> Partition:
    """Extend a stable pair to a full stable partition of all vertices.

    A-side and B-side of the pair only ever grow, so pair members keep their
    demands; each vertex moved into A meets its a-demand at insertion time.
    """
    _require_matching(graph, demands)
    side_a, side_b = _complete_sets(
        graph, demands, pair, frozenset(range(graph.n)), _certificate
    )
    return Partition(side_a, side_b)


def verify_partition(
    graph: WeightedGraph,
    demands: Demands,
    partition: Partition,
    tol: float = 0.0,
) -> list[Violation]:
    """Every vertex whose same-side induced degree is below its demand - tol.

    Empty list means the partition is stable."""
    _require_matching(graph, demands)
    if partition.n != graph.n:
        raise ValueError("partition does not cover this graph")
    if tol < 0.0:
        raise ValueError("tol must be non-negative")
    out = []
    for x in range(graph.n):
        if x in partition.a:
            side, members, dem = "A", partition.a, demands.a[x]
        else:
            side, members, dem = "B", partition.b, demands.b[x]
        deg = induced_degree(graph, members, x)
        if deg < dem - tol:
            out.append(Violation(x, side, deg, dem))
    return out


def _attach_isolated(side_a, side_b, isolated, demands):
    # zero-degree vertices change no induced degree; side A by default,
    # side B when only the b-demand is zero, A again when neither demand is
    # satisfiable (the verification gate reports those)
    for x in isolated:
        if demands.a[x] == 0.0:
            side_a.add(x)
        elif demands.b[x] == 0.0:
            side_b.add(x)
        else:
            side_a.add(x)


def solve(
    graph: WeightedGraph,
    demands: Demands,
    max_moves: int = DEFAULT_MAX_MOVES,
) -> tuple[Partition, SolveCertificate]:
    """Find a stable partition: stable pair, completion, then an exact
    post-hoc verification of both demand families.

    Zero-degree vertices change no induced degree; they are removed up front
    and re-attached afterwards (to side A, or to B when only their b-demand
    is zero).  Never returns an unstable partition: if verification fails,
    which requires an input violating the degree precondition, the solver
    raises UnstablePartitionError instead.
    """
    if graph.n < 2:
        raise SingleVertexGraphError("no partition exists with fewer than two vertices")
    _require_matching(graph, demands)

    cert = SolveCertificate()
    cert.phase_log.append(PHASE_FEASIBILITY)
    cert.feasibility = check_feasibility(graph, demands)

    active = frozenset(x for x in range(graph.n) if graph.d[x] > 0.0)
    isolated = sorted(set(range(graph.n)) - active)

    if len(active) >= 2:
        abar, bbar, _ = find_stable_pair(graph, demands, max_moves, _certificate=cert)
        raw_a, raw_b = _complete_sets(graph, demands, (abar, bbar), active, cert)
        side_a, side_b = set(raw_a), set(raw_b)
        _attach_isolated(side_a, side_b, isolated, demands)
    elif len(active) == 1:
        side_a, side_b = set(active), set()
        _attach_isolated(side_a, side_b, isolated, demands)
        if not side_b:
            # keep both sides non-empty: move whichever vertex can meet its
            # b-demand alone (isolated members leave no degree behind)
            mover = min(
                side_a,
                key=lambda x: (induced_degree(graph, {x}, x) < demands.b[x], x),
            )
            side_a.discard(mover)
            side_b.add(mover)
    else:
        side_a, side_b = {0}, set(range(1, graph.n))

    partition = Partition(frozenset(side_a), frozenset(side_b))
    slacks = []
    for x in range(graph.n):
        members = partition.a if x in partition.a else partition.b
        dem = demands.a[x] if x in partition.a else demands.b[x]
        slacks.append(induced_degree(graph, members, x) - dem)
    cert.verification = slacks

    violations = verify_partition(graph, demands, partition)
    if violations:
        raise UnstablePartitionError(
            f"{len(violations)} vertices miss their demand; "
            "the input violates the degree precondition"
        )
    return partition, cert


@dataclass(frozen=True)
class LoopReduction:
    """Loopless graph, adjusted demands, and the precondition report for the
    reduced instance."""

    graph: WeightedGraph
    demands: Demands
    precondition: FeasibilityReport


def reduce_loops(graph: WeightedGraph, demands: Demands) -> LoopReduction:
    """Strip loops and lower each demand by the loop's degree contribution.

    Under DOUBLE a loop w_xx lowers both demands by 2*w_xx, under ONCE by
    w_xx (clamped at zero).  Any partition stable for the reduced instance is
    stable for the original: the loop weight rejoins its vertex's side.
    """
    _require_matching(graph, demands)
    factor = graph.loop_mode.factor
    bare = without_loops(graph)
    a = tuple(
        max(0.0, demands.a[x] - factor * graph.loops[x]) for x in range(graph.n)
    )
    b = tuple(
        max(0.0, demands.b[x] - factor * graph.loops[x]) for x in range(graph.n)
    )
    reduced = Demands(a, b)

    # Reduced-instance slack d' - a' - b' - 2W, factored so that the original
    # demands cancel against the original degree before any loop shift; the
    # naive order loses a few ulps exactly where the slack is zero.
    slack = []
    for x in range(graph.n):
        loop_share = factor * graph.loops[x]
        s = graph.d[x] - demands.a[x] - demands.b[x] - 2.0 * graph.W[x] + loop_share
        s -= max(0.0, loop_share - demands.a[x])
        s -= max(0.0, loop_share - demands.b[x])
        slack.append(s)
    violations = tuple(x for x in range(graph.n) if slack[x] < 0.0)
    report = FeasibilityReport(tuple(slack), violations, not violations)
    return LoopReduction(bare, reduced, report)
