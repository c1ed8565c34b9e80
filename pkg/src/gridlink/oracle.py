"""Exhaustive ground-truth machinery.

The enumerator assigns a multiplicity 0..k to every neighbor-pair edge by
depth-first search with residual and crossing pruning, checking connectivity
at the leaves. It is a desk-scale device: the propagation engine is the
scalable solver, and the enumerator is what we trust when the two must agree.

Also here: the minimal-k sweep, seeded random instance generation (including
a mode that is solvable by construction), and the search for grids with a
unique solution on which the propagation engine cannot move at all.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from random import Random
from typing import Optional

from .core import Coordinate, EdgeKey, Node, NumberedGrid, PuzzleState, segments_cross
from .screens import screen
from .tau import TauStatus, run_tau
from .words import omega_star

MAX_SWEEP_K = 8
_MAGNITUDE_CAP = 8
_PLACEMENT_ATTEMPTS = 64


class GenerationFailure(Exception):
    """The requested dimensions/density cannot produce a usable grid."""


class GenMode(Enum):
    RANDOM = "random"
    SOLVABLE_BY_CONSTRUCTION = "solvable"


@dataclass(frozen=True)
class GenSpec:
    """Deterministic recipe for one generated instance."""

    seed: int
    width: int
    height: int
    node_density: float
    k: int
    mode: GenMode = GenMode.RANDOM

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be >= 1")
        if not 0 < self.node_density <= 1:
            raise ValueError(f"node_density must be in (0, 1], got {self.node_density}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class SolutionSet:
    """All (or the first few) solutions of a grid, in search order.

    Each solution is a connection map in canonical edge order; exhausted is
    False when a limit cut the search short.
    """

    solutions: tuple[dict, ...]
    exhausted: bool

    def __len__(self) -> int:
        return len(self.solutions)


def enumerate_solutions(grid: NumberedGrid, limit: Optional[int] = None) -> SolutionSet:
    """Enumerate every connection assignment that solves the grid.

    Edges take multiplicities in canonical order; branches die as soon as a
    node overshoots its magnitude, can no longer reach it, a crossing pair
    goes doubly positive, or a completed region seals itself off from the
    rest. Leaves are kept when the connection multigraph spans all nodes.
    """
    if limit is not None and limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    edges = grid.all_edges
    k = grid.k
    n_nodes = len(grid.nodes)
    magnitude = {n.coord: n.magnitude for n in grid.nodes}

    incident: dict[Coordinate, list[int]] = {n.coord: [] for n in grid.nodes}
    for i, e in enumerate(edges):
        incident[e.a].append(i)
        incident[e.b].append(i)

    edge_index = {e: i for i, e in enumerate(edges)}
    conflicts = {
        i: tuple(edge_index[c] for c in grid.crossing_conflicts[e]) for i, e in enumerate(edges)
    }

    degree = {c: 0 for c in magnitude}
    # Per node: k * (number of incident edges not yet assigned); an upper
    # bound on connections the node can still receive.
    headroom = {c: k * len(incident[c]) for c in magnitude}
    values = [0] * len(edges)
    found: list[dict] = []
    truncated = False

    def sealed_off(start: Coordinate) -> bool:
        """True when start's positive-edge component is fully completed but
        does not span the grid."""
        comp = {start}
        stack = [start]
        while stack:
            c = stack.pop()
            if degree[c] != magnitude[c]:
                return False
            for i in incident[c]:
                if values[i] > 0:
                    e = edges[i]
                    other = e.b if e.a == c else e.a
                    if other not in comp:
                        comp.add(other)
                        stack.append(other)
        return len(comp) < n_nodes

    def connected() -> bool:
        comp = {grid.nodes[0].coord}
        stack = [grid.nodes[0].coord]
        while stack:
            c = stack.pop()
            for i in incident[c]:
                if values[i] > 0:
                    e = edges[i]
                    other = e.b if e.a == c else e.a
                    if other not in comp:
                        comp.add(other)
                        stack.append(other)
        return len(comp) == n_nodes

    def descend(i: int) -> bool:
        """Assign edge i onward; returns False when the limit was reached."""
        nonlocal truncated
        if i == len(edges):
            if all(degree[c] == magnitude[c] for c in magnitude) and connected():
                found.append({edges[j]: values[j] for j in range(len(edges)) if values[j] > 0})
                if limit is not None and len(found) >= limit:
                    truncated = True
                    return False
            return True
        e = edges[i]
        blocked = any(values[j] > 0 for j in conflicts[i] if j < i)
        headroom[e.a] -= k
        headroom[e.b] -= k
        for v in range(k + 1):
            if v > 0 and blocked:
                break
            values[i] = v
            degree[e.a] += v
            degree[e.b] += v
            ok = (
                degree[e.a] <= magnitude[e.a]
                and degree[e.b] <= magnitude[e.b]
                and magnitude[e.a] - degree[e.a] <= headroom[e.a]
                and magnitude[e.b] - degree[e.b] <= headroom[e.b]
            )
            if ok and v > 0:
                for c in (e.a, e.b):
                    if degree[c] == magnitude[c] and sealed_off(c):
                        ok = False
                        break
            if ok and not descend(i + 1):
                degree[e.a] -= v
                degree[e.b] -= v
                values[i] = 0
                headroom[e.a] += k
                headroom[e.b] += k
                return False
            degree[e.a] -= v
            degree[e.b] -= v
        values[i] = 0
        headroom[e.a] += k
        headroom[e.b] += k
        return True

    descend(0)
    return SolutionSet(tuple(found), exhausted=not truncated)


def min_solvable_k(grid: NumberedGrid, k_max: int) -> Optional[int]:
    """Smallest bound k' <= k_max under which the node set is solvable.

    Scans upward from 1, which is enough because any solution under k' is
    literally a solution under any larger bound.
    """
    if not 1 <= k_max <= MAX_SWEEP_K:
        raise ValueError(f"k_max must be in 1..{MAX_SWEEP_K}, got {k_max}")
    for k in range(1, k_max + 1):
        candidate = NumberedGrid(k, grid.nodes)
        if enumerate_solutions(candidate, limit=1).solutions:
            return k
    return None


def _place_coords(rng: Random, spec: GenSpec, frame_first: bool = False) -> list[Coordinate]:
    cells = [Coordinate(x, y) for y in range(spec.height) for x in range(spec.width)]
    if len(cells) < 2:
        raise GenerationFailure(
            f"{spec.width}x{spec.height} lattice cannot hold the 2 nodes a grid needs"
        )
    count = min(len(cells), max(2, round(spec.node_density * len(cells))))
    if not frame_first:
        return rng.sample(cells, count)
    # Frame-first placement: exhaust the boundary before touching the
    # interior. Interior gaps leave long sight lines and crossing pairs,
    # which is where the structurally hard instances live.
    boundary = [
        c for c in cells
        if c.x in (0, spec.width - 1) or c.y in (0, spec.height - 1)
    ]
    interior = [c for c in cells if c not in boundary]
    taken = rng.sample(boundary, min(count, len(boundary)))
    if count > len(boundary):
        taken += rng.sample(interior, count - len(boundary))
    return taken


def _neighbor_edges(coords: list[Coordinate]) -> list[EdgeKey]:
    """Neighbor-pair edges induced by a coordinate set (nearest in row/column)."""
    probe = NumberedGrid(1, [Node(c, 1) for c in coords])
    return list(probe.all_edges)


def _spanning_multigraph(
    rng: Random, coords: list[Coordinate], k: int
) -> Optional[dict[EdgeKey, int]]:
    """Random connected, non-crossing multigraph over the neighbor pairs.

    Returns None when a randomized spanning pass dead-ends against the
    crossing constraints.
    """
    edges = _neighbor_edges(coords)
    crossing = {
        e: [f for f in edges if segments_cross(e, f)] for e in edges
    }
    order = list(edges)
    rng.shuffle(order)

    parent = {c: c for c in coords}

    def find(c: Coordinate) -> Coordinate:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    chosen: dict[EdgeKey, int] = {}
    components = len(coords)
    for e in order:
        if components == 1:
            break
        ra, rb = find(e.a), find(e.b)
        if ra == rb:
            continue
        if any(f in chosen for f in crossing[e]):
            continue
        chosen[e] = 1
        parent[ra] = rb
        components -= 1
    if components > 1:
        return None

    # Thicken the tree into a multigraph: extra strands on used pairs and
    # occasional fresh non-crossing edges.
    for e in order:
        if e in chosen:
            if chosen[e] < k and rng.random() < 0.4:
                chosen[e] += rng.randint(1, k - chosen[e])
        elif rng.random() < 0.25 and not any(f in chosen for f in crossing[e]):
            chosen[e] = rng.randint(1, k)
    return chosen


def generate(spec: GenSpec) -> NumberedGrid:
    """Generate a grid, deterministically in the seed.

    Random mode places nodes uniformly by density and labels them with
    arbitrary magnitudes (such grids are often unsolvable, which is the
    point). The solvable-by-construction mode mixes uniform and frame-first
    placement, builds a random connected non-crossing multigraph, and labels
    each node with its degree, so the construction itself witnesses a
    solution.
    """
    rng = Random(spec.seed)
    if spec.mode is GenMode.RANDOM:
        coords = _place_coords(rng, spec)
        cap = min(4 * spec.k, _MAGNITUDE_CAP)
        nodes = [Node(c, rng.randint(1, cap)) for c in coords]
        return NumberedGrid(spec.k, nodes)

    # The constructive mode alternates two placement styles: plain uniform
    # cells, and frame-first (boundary before interior). The latter produces
    # the crossing-rich instances that stress the propagation engine.
    frame_first = rng.random() < 0.5
    for _ in range(_PLACEMENT_ATTEMPTS):
        coords = _place_coords(rng, spec, frame_first=frame_first)
        graph = _spanning_multigraph(rng, coords, spec.k)
        if graph is None:
            continue
        degree = {c: 0 for c in coords}
        for e, m in graph.items():
            degree[e.a] += m
            degree[e.b] += m
        nodes = [Node(c, degree[c]) for c in coords]
        return NumberedGrid(spec.k, nodes)
    raise GenerationFailure(
        f"no connected non-crossing layout found for {spec.width}x{spec.height} "
        f"at density {spec.node_density}"
    )


def _stalls_immediately(grid: NumberedGrid) -> bool:
    """True when the propagation engine can make no move on the fresh grid.

    Mirrors the engine's first iteration, rejecting as cheaply as possible:
    most generated grids die on a screen, a leaf node, or a saturated node
    long before any guaranteed-connection word has to be computed.
    """
    if screen(grid).unsolvable:
        return False
    state = PuzzleState.empty(grid)
    for n in grid.nodes:
        if grid.neighbor_count(n) == 1:  # R2 would fire
            return False
        total_cap = sum(state.remaining_capacity(n).values())
        if n.magnitude >= total_cap:  # R1 would fire, or the node is dead
            return False
    for n in grid.nodes:
        w = omega_star(state, n)
        if w is None or not w.is_zero:
            return False
    return True


def find_stall_witness(budget: int, spec: GenSpec) -> Optional[NumberedGrid]:
    """Search generated grids for a uniquely solvable instance on which the
    propagation engine makes no move at all.

    Varies the seed upward from the spec's; returns the first grid whose
    engine run stalls with an empty trace while the enumerator proves the
    solution unique. Returns None when the budget runs out.
    """
    if budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    for i in range(budget):
        candidate = replace(spec, seed=spec.seed + i)
        try:
            grid = generate(candidate)
        except GenerationFailure:
            continue
        if not _stalls_immediately(grid):
            continue
        sols = enumerate_solutions(grid, limit=2)
        if len(sols) != 1 or not sols.exhausted:
            continue
        outcome = run_tau(grid)
        if outcome.status is TauStatus.STALLED and not outcome.trace:
            return grid
    return None
