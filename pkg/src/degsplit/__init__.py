"""degsplit: split a weighted graph into two sides that each meet per-vertex
degree demands, with verifiable certificates, a brute-force oracle, and a
grid-squares geometric application."""

from .errors import (
    CompletionAssertFailedError,
    DegsplitError,
    DuplicateEdgeError,
    GenerationFailedError,
    MoveLimitExceededError,
    NonImprovingMoveError,
    NonPositiveWeightError,
    NoSatisfyingSetError,
    PartitionCollapseError,
    SingleVertexGraphError,
    SolverError,
    TooFewCellsError,
    TooLargeError,
    UnstablePartitionError,
    VertexNotInSetError,
)
from .graph import (
    Demands,
    LoopMode,
    WeightedGraph,
    build_graph,
    degree_profile,
    induced_degree,
    without_loops,
)
from .core import is_meager, minimal_satisfying_set, peel
from .solver import (
    DEFAULT_MAX_MOVES,
    FeasibilityReport,
    LoopReduction,
    Move,
    Partition,
    SolveCertificate,
    Violation,
    check_feasibility,
    complete_pair,
    find_stable_pair,
    h_value,
    reduce_loops,
    solve,
    verify_partition,
)
from .oracle import OracleResult, brute_force_solve, random_feasible_instance
from .geometry import (
    DemandScheme,
    GridInstance,
    SquaresResult,
    build_grid_graph,
    circle_square_area,
    solve_squares,
    squares_demands,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_MOVES",
    "CompletionAssertFailedError",
    "DegsplitError",
    "DemandScheme",
    "Demands",
    "DuplicateEdgeError",
    "FeasibilityReport",
    "GenerationFailedError",
    "GridInstance",
    "LoopMode",
    "LoopReduction",
    "Move",
    "MoveLimitExceededError",
    "NoSatisfyingSetError",
    "NonImprovingMoveError",
    "NonPositiveWeightError",
    "OracleResult",
    "Partition",
    "PartitionCollapseError",
    "SingleVertexGraphError",
    "SolveCertificate",
    "SolverError",
    "SquaresResult",
    "TooFewCellsError",
    "TooLargeError",
    "UnstablePartitionError",
    "VertexNotInSetError",
    "Violation",
    "WeightedGraph",
    "brute_force_solve",
    "build_graph",
    "build_grid_graph",
    "check_feasibility",
    "circle_square_area",
    "complete_pair",
    "degree_profile",
    "find_stable_pair",
    "h_value",
    "induced_degree",
    "is_meager",
    "minimal_satisfying_set",
    "peel",
    "random_feasible_instance",
    "reduce_loops",
    "solve",
    "solve_squares",
    "squares_demands",
    "verify_partition",
    "without_loops",
]
