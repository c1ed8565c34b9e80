"""Forced-connection propagation engine.

The engine repeatedly applies connections that must appear in every solution,
in a fixed rule priority:

  R1  a node whose residual equals its total remaining capacity: every
      remaining connection is forced (initially: magnitude = r*k);
  R2  a node with a single neighbor: all residual connections go there;
  R3  a node with a single incomplete neighbor: likewise;
  R4  the guaranteed-connection word (omega_star) of the most promising
      incomplete node, preferring few neighbors and residuals far from the
      configuration-count peak at floor(r*k/2).

Every applied step strictly decreases the total residual, so the loop
terminates: solved, stalled (no guaranteed connection anywhere), or proven
unsolvable. When the engine finishes a grid, the solution it built is the
only one -- each step only ever drew connections present in every solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .core import (
    Coordinate,
    Direction,
    EdgeKey,
    Node,
    NumberedGrid,
    PuzzleState,
    is_solved,
)
from .screens import ScreenReport, screen
from .words import ConfigWord, omega_star


class TauRule(Enum):
    R1_FULL_SATURATION = "R1_FullSaturation"
    R2_SINGLE_NEIGHBOR = "R2_SingleNeighbor"
    R3_ONE_INCOMPLETE_NEIGHBOR = "R3_OneIncompleteNeighbor"
    R4_OMEGA_STAR = "R4_OmegaStar"


class TauStatus(Enum):
    SOLVED = "solved"
    STALLED = "stalled"
    UNSOLVABLE = "unsolvable"


@dataclass(frozen=True)
class TauStep:
    """One applied propagation step."""

    node: Coordinate
    rule: TauRule
    word: ConfigWord
    edges: tuple[tuple[EdgeKey, int], ...]  # connections created by this step
    state_digest: str


@dataclass(frozen=True)
class TauOutcome:
    status: TauStatus
    final_state: PuzzleState
    trace: tuple[TauStep, ...]
    reason: Optional[str] = None
    screen_report: Optional[ScreenReport] = None

    @property
    def solved(self) -> bool:
        return self.status is TauStatus.SOLVED


def apply_builder(state: PuzzleState, p: Node, word: ConfigWord) -> PuzzleState:
    """Apply a configuration word at p, returning the new state.

    Each positive direction count becomes that many extra connections between
    p and the neighbor in that direction; residuals drop on both sides. The
    zero word is the identity. Capacity, residual, and crossing violations
    propagate from the underlying connection bookkeeping.
    """
    for d in Direction:
        c = word.count(d)
        if c == 0:
            continue
        q = state.grid.neighbor(p, d)
        if q is None:
            raise ValueError(f"word sends {c} connections {d.name}, but {p.coord} has no neighbor there")
        state = state.add_connections(EdgeKey.between(p.coord, q.coord), c)
    return state


def _word_edges(state: PuzzleState, p: Node, word: ConfigWord) -> tuple[tuple[EdgeKey, int], ...]:
    out = []
    for d in Direction:
        c = word.count(d)
        if c > 0:
            q = state.grid.neighbor(p, d)
            assert q is not None
            out.append((EdgeKey.between(p.coord, q.coord), c))
    return tuple(out)


def _apply_step(state: PuzzleState, p: Node, rule: TauRule, word: ConfigWord):
    edges = _word_edges(state, p, word)
    new_state = apply_builder(state, p, word)
    step = TauStep(p.coord, rule, word, edges, new_state.digest())
    return new_state, step


def run_tau(grid: NumberedGrid) -> TauOutcome:
    """Run the propagation loop to a fixpoint.

    The grid is screened first; a screen violation short-circuits to
    unsolvable. Afterwards each iteration scans incomplete nodes in row-major
    order and applies the first rule that fires, preferring R1 over R2 over
    R3 over R4. The outcome status is exactly one of solved, stalled, or
    unsolvable; a stall means every incomplete node's guaranteed word is
    empty, which the caller can re-verify against the final state.
    """
    report = screen(grid)
    state = PuzzleState.empty(grid)
    if report.unsolvable:
        first = report.violations[0]
        return TauOutcome(
            TauStatus.UNSOLVABLE,
            state,
            (),
            reason=f"screen condition {first.condition}: {first.message}",
            screen_report=report,
        )

    trace: list[TauStep] = []
    while True:
        incomplete = [n for n in grid.nodes if state.residual(n) > 0]
        if not incomplete:
            check = is_solved(state)
            if check:
                return TauOutcome(TauStatus.SOLVED, state, tuple(trace), screen_report=report)
            # All nodes completed by forced moves, yet not a solution: the
            # engine cannot certify unsolvability here, only fail to solve.
            return TauOutcome(
                TauStatus.STALLED, state, tuple(trace), reason=check.reason, screen_report=report
            )

        caps = {n.coord: state.remaining_capacity(n) for n in incomplete}

        # Any node that needs more than its surroundings can still hold is
        # a dead end: no feasible word exists for it.
        applied = False
        for n in incomplete:
            total_cap = sum(caps[n.coord].values())
            res = state.residual(n)
            if res > total_cap:
                return TauOutcome(
                    TauStatus.UNSOLVABLE,
                    state,
                    tuple(trace),
                    reason=(
                        f"node at {n.coord} needs {res} more connections but only "
                        f"{total_cap} remain available around it"
                    ),
                    screen_report=report,
                )

        # R1: residual equals total remaining capacity -> saturate.
        for n in incomplete:
            if state.residual(n) == sum(caps[n.coord].values()):
                word = ConfigWord.from_counts(caps[n.coord][d] for d in Direction)
                state, step = _apply_step(state, n, TauRule.R1_FULL_SATURATION, word)
                trace.append(step)
                applied = True
                break
        if applied:
            continue

        # R2: a single neighbor leaves one destination for everything.
        for n in incomplete:
            nbrs = grid.neighbors(n)
            if len(nbrs) == 1:
                (d, _q), = nbrs.items()
                counts = [0, 0, 0, 0]
                counts[d - 1] = state.residual(n)
                state, step = _apply_step(
                    state, n, TauRule.R2_SINGLE_NEIGHBOR, ConfigWord.from_counts(counts)
                )
                trace.append(step)
                applied = True
                break
        if applied:
            continue

        # R3: all but one neighbor already complete -> one destination again.
        for n in incomplete:
            nbrs = grid.neighbors(n)
            open_dirs = [d for d, q in nbrs.items() if state.residual(q) > 0]
            if len(nbrs) > 1 and len(open_dirs) == 1:
                d = open_dirs[0]
                counts = [0, 0, 0, 0]
                counts[d - 1] = state.residual(n)
                state, step = _apply_step(
                    state, n, TauRule.R3_ONE_INCOMPLETE_NEIGHBOR, ConfigWord.from_counts(counts)
                )
                trace.append(step)
                applied = True
                break
        if applied:
            continue

        # R4: fall back to guaranteed-connection words.
        candidates = []
        for n in incomplete:
            w = omega_star(state, n)
            if w is None:
                return TauOutcome(
                    TauStatus.UNSOLVABLE,
                    state,
                    tuple(trace),
                    reason=f"node at {n.coord} has no feasible configuration left",
                    screen_report=report,
                )
            if not w.is_zero:
                r = grid.neighbor_count(n)
                peak_distance = abs(state.residual(n) - (r * grid.k) // 2)
                candidates.append(((r, -peak_distance, n.coord.y, n.coord.x), n, w))
        if not candidates:
            return TauOutcome(
                TauStatus.STALLED,
                state,
                tuple(trace),
                reason="no incomplete node has any guaranteed connection",
                screen_report=report,
            )
        candidates.sort(key=lambda t: t[0])
        _, n, w = candidates[0]
        state, step = _apply_step(state, n, TauRule.R4_OMEGA_STAR, w)
        trace.append(step)
