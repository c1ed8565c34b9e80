"""Solver and analysis toolkit for numbered grid-link puzzles.

A puzzle places labeled nodes on a lattice; a node labeled n must end up
with exactly n connections to its nearest neighbors in the four axis
directions, no neighbor pair may carry more than k connections, connections
may not cross, and the finished multigraph must be connected.

The package provides the instance model (`core`), configuration-word
enumeration and counting (`words`), syntactic unsolvability screens
(`screens`), a forced-connection propagation engine (`tau`), an exhaustive
backtracking oracle and instance generator (`oracle`), and text formats plus
a command-line interface (`formats`, `cli`).
"""

from .core import (
    CapacityExceeded,
    Coordinate,
    CrossingViolation,
    Direction,
    EdgeKey,
    GridError,
    InvalidConnectionError,
    Node,
    NumberedGrid,
    PuzzleState,
    ResidualExceeded,
    SolvedCheck,
    is_solved,
    node,
    segments_cross,
)
from .formats import (
    DuplicateCoordinateError,
    DuplicateEdgeError,
    MissingHeaderError,
    ParseError,
    RangeError,
    count_table,
    parse_puzzle,
    parse_solution,
    render_board,
    serialize_puzzle,
    serialize_solution,
    verify_solution,
)
from .oracle import (
    GenerationFailure,
    GenMode,
    GenSpec,
    SolutionSet,
    enumerate_solutions,
    find_stall_witness,
    generate,
    min_solvable_k,
)
from .screens import ScreenReport, ScreenVerdict, Violation, screen
from .tau import TauOutcome, TauRule, TauStatus, TauStep, apply_builder, run_tau
from .words import (
    ConfigWord,
    NoConfigurationsError,
    WordSet,
    count_configs,
    enumerate_feasible,
    enumerate_phi_k,
    omega_star,
    word_meet,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityExceeded",
    "ConfigWord",
    "Coordinate",
    "CrossingViolation",
    "Direction",
    "DuplicateCoordinateError",
    "DuplicateEdgeError",
    "EdgeKey",
    "GenMode",
    "GenSpec",
    "GenerationFailure",
    "GridError",
    "InvalidConnectionError",
    "MissingHeaderError",
    "NoConfigurationsError",
    "Node",
    "NumberedGrid",
    "ParseError",
    "PuzzleState",
    "RangeError",
    "ResidualExceeded",
    "ScreenReport",
    "ScreenVerdict",
    "SolutionSet",
    "SolvedCheck",
    "TauOutcome",
    "TauRule",
    "TauStatus",
    "TauStep",
    "Violation",
    "WordSet",
    "apply_builder",
    "count_configs",
    "count_table",
    "enumerate_feasible",
    "enumerate_phi_k",
    "enumerate_solutions",
    "find_stall_witness",
    "generate",
    "is_solved",
    "min_solvable_k",
    "node",
    "omega_star",
    "parse_puzzle",
    "parse_solution",
    "render_board",
    "run_tau",
    "screen",
    "segments_cross",
    "serialize_puzzle",
    "serialize_solution",
    "verify_solution",
    "word_meet",
]
