"""Fast syntactic unsolvability screens.

Each screen is a necessary condition for solvability, checked on the initial
grid with no connections: a violation proves the grid unsolvable, while a
clean report proves nothing. One known unsolvability mode is intentionally
absent here -- the case where every completion of some node seals off part of
the graph. That one is dynamic and surfaces when the guaranteed-connection
computation (omega_star) finds no feasible word.

Condition ids:
  1  node with no neighbors
  2  odd total magnitude
  3  neighbor magnitudes sum below the node's magnitude
  5  magnitude exceeds r*k for a node with r neighbors
  6  incompatible neighbor: magnitude (r-1)k + j with j in 2..k forces j
     connections to some neighbor, but a neighbor can take at most j-1
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .core import Coordinate, NumberedGrid


class ScreenVerdict(Enum):
    MAYBE_SOLVABLE = "maybe_solvable"
    UNSOLVABLE = "unsolvable"


@dataclass(frozen=True)
class Violation:
    condition: int
    witness: Optional[Coordinate]  # None marks the grid-level condition 2
    message: str


@dataclass(frozen=True)
class ScreenReport:
    verdict: ScreenVerdict
    violations: tuple[Violation, ...]

    @property
    def unsolvable(self) -> bool:
        return self.verdict is ScreenVerdict.UNSOLVABLE


def screen(grid: NumberedGrid) -> ScreenReport:
    """Run every screen and collect all violations.

    The grid-level parity check comes first, then per-node checks in
    row-major order with ascending condition ids, so reports are stable.
    """
    violations: list[Violation] = []
    k = grid.k

    total = grid.total_magnitude()
    if total % 2 == 1:
        violations.append(
            Violation(2, None, f"total magnitude {total} is odd, connections always add 2")
        )

    for p in grid.nodes:
        nbrs = grid.neighbors(p)
        r = len(nbrs)
        if r == 0:
            violations.append(Violation(1, p.coord, f"node at {p.coord} has no neighbors"))
            continue
        nbr_sum = sum(q.magnitude for q in nbrs.values())
        if nbr_sum < p.magnitude:
            violations.append(
                Violation(
                    3,
                    p.coord,
                    f"node at {p.coord} needs {p.magnitude} but neighbors only hold {nbr_sum}",
                )
            )
        if p.magnitude > r * k:
            violations.append(
                Violation(
                    5,
                    p.coord,
                    f"node at {p.coord} has magnitude {p.magnitude} > r*k = {r}*{k}",
                )
            )
        if k > 1:
            j = p.magnitude - (r - 1) * k
            if 2 <= j <= k:
                for q in sorted(nbrs.values(), key=lambda n: (n.coord.y, n.coord.x)):
                    if q.magnitude <= j - 1:
                        violations.append(
                            Violation(
                                6,
                                p.coord,
                                f"node at {p.coord} (magnitude {(r - 1)}*{k}+{j}) needs at "
                                f"least {j} connections with every neighbor, but the one at "
                                f"{q.coord} can take at most {q.magnitude}",
                            )
                        )
                        break

    verdict = ScreenVerdict.UNSOLVABLE if violations else ScreenVerdict.MAYBE_SOLVABLE
    return ScreenReport(verdict, tuple(violations))
