"""Text formats, board rendering, and the configuration-count table.

Puzzle documents are line oriented: `#` starts a comment, blank lines are
skipped, the first significant line is `k <int>`, and every following line is
`node <x> <y> <n>`. The format is sparse on purpose -- neighbors can be
arbitrarily far apart, so a dense character grid would mis-suggest unit
adjacency. Coordinates are y-up (Top means larger y); the board renderer
flips rows for display only.

Solution documents are lines of `conn <x1> <y1> <x2> <y2> <m>` in canonical
edge order.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .core import (
    Coordinate,
    EdgeKey,
    GridError,
    Node,
    NumberedGrid,
    PuzzleState,
    SolvedCheck,
    is_solved,
)
from .words import count_configs


class ParseError(ValueError):
    """Malformed document; carries the offending 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class MissingHeaderError(ParseError):
    pass


class DuplicateCoordinateError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class RangeError(ParseError):
    pass


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int_fields(parts: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def parse_puzzle(text: str) -> NumberedGrid:
    """Parse a puzzle document into a grid."""
    header_k: Optional[int] = None
    nodes: list[Node] = []
    seen: dict[Coordinate, int] = {}
    for lineno, line in _significant_lines(text):
        parts = line.split()
        if header_k is None:
            if parts[0] != "k" or len(parts) != 2:
                raise MissingHeaderError("expected `k <int>` before any other record", lineno)
            (header_k,) = _int_fields(parts[1:], lineno)
            if header_k < 1:
                raise RangeError(f"k must be >= 1, got {header_k}", lineno)
            continue
        if parts[0] == "k":
            raise ParseError("duplicate `k` header", lineno)
        if parts[0] != "node" or len(parts) != 4:
            raise ParseError(f"expected `node <x> <y> <n>`, got {line!r}", lineno)
        x, y, n = _int_fields(parts[1:], lineno)
        if x < 0 or y < 0:
            raise RangeError(f"coordinates must be non-negative, got ({x}, {y})", lineno)
        if n < 1:
            raise RangeError(f"magnitude must be >= 1, got {n}", lineno)
        coord = Coordinate(x, y)
        if coord in seen:
            raise DuplicateCoordinateError(
                f"coordinate ({x}, {y}) already used on line {seen[coord]}", lineno
            )
        seen[coord] = lineno
        nodes.append(Node(coord, n))
    if header_k is None:
        raise MissingHeaderError("document has no `k <int>` header")
    if not nodes:
        raise ParseError("document has no node records")
    return NumberedGrid(header_k, nodes)


def serialize_puzzle(grid: NumberedGrid) -> str:
    lines = [f"k {grid.k}"]
    lines += [f"node {n.coord.x} {n.coord.y} {n.magnitude}" for n in grid.nodes]
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> tuple[tuple[EdgeKey, int], ...]:
    """Parse a solution document into canonical (edge, multiplicity) records."""
    records: list[tuple[EdgeKey, int]] = []
    seen: dict[EdgeKey, int] = {}
    for lineno, line in _significant_lines(text):
        parts = line.split()
        if parts[0] != "conn" or len(parts) != 6:
            raise ParseError(f"expected `conn <x1> <y1> <x2> <y2> <m>`, got {line!r}", lineno)
        x1, y1, x2, y2, m = _int_fields(parts[1:], lineno)
        if min(x1, y1, x2, y2) < 0:
            raise RangeError("coordinates must be non-negative", lineno)
        if m < 1:
            raise RangeError(f"multiplicity must be >= 1, got {m}", lineno)
        c1, c2 = Coordinate(x1, y1), Coordinate(x2, y2)
        if c1 == c2:
            raise ParseError(f"connection endpoints must differ, got ({x1}, {y1}) twice", lineno)
        if c1.x != c2.x and c1.y != c2.y:
            raise ParseError("connection must be horizontal or vertical", lineno)
        e = EdgeKey.between(c1, c2)
        if e in seen:
            raise DuplicateEdgeError(
                f"connection {e} already recorded on line {seen[e]}", lineno
            )
        seen[e] = lineno
        records.append((e, m))
    return tuple(sorted(records, key=lambda rec: (rec[0].a, rec[0].b)))


def serialize_solution(records) -> str:
    """Serialize (edge, multiplicity) pairs or a connection map to text."""
    items = sorted(dict(records).items(), key=lambda rec: (rec[0].a, rec[0].b))
    lines = [f"conn {e.a.x} {e.a.y} {e.b.x} {e.b.y} {m}" for e, m in items]
    return "\n".join(lines) + ("\n" if lines else "")


def verify_solution(grid: NumberedGrid, records) -> SolvedCheck:
    """Check claimed connection records against a grid.

    Accepts exactly the solutions of the grid; anything else comes back with
    the first reason found (bad pair, capacity, over-connection, crossing,
    incompleteness, or disconnection).
    """
    try:
        state = PuzzleState(grid, dict(records))
    except GridError as exc:
        return SolvedCheck(False, str(exc))
    return is_solved(state)


def render_board(state: PuzzleState) -> str:
    """Fixed-width ASCII-art board.

    Node cells show the magnitude, with the residual in parentheses while
    nonzero; `-`/`=` mark single/double horizontal connections (the count
    itself for more), `|`/`‖` the vertical ones. Rows print top-down,
    i.e. decreasing y.
    """
    grid = state.grid
    max_x = max(n.coord.x for n in grid.nodes)
    max_y = max(n.coord.y for n in grid.nodes)

    def cell_text(c: Coordinate) -> str:
        n = grid.node_at(c)
        if n is None:
            return "."
        res = state.residual(n)
        return f"{n.magnitude}({res})" if res else f"{n.magnitude}"

    width = max(len(cell_text(Coordinate(x, y))) for y in range(max_y + 1) for x in range(max_x + 1))

    def h_mult(x: int, y: int) -> int:
        """Multiplicity of the horizontal connection covering the gap x..x+1."""
        for e, m in state.sorted_items():
            if e.horizontal and e.a.y == y and e.a.x <= x < e.b.x:
                return m
        return 0

    def v_mult(x: int, y: int) -> int:
        """Multiplicity of the vertical connection covering the gap y..y+1."""
        for e, m in state.sorted_items():
            if not e.horizontal and e.a.x == x and e.a.y <= y < e.b.y:
                return m
        return 0

    h_glyphs = {1: "-" * 3, 2: "=" * 3}
    v_glyphs = {1: "|", 2: "‖"}
    lines = []
    for y in range(max_y, -1, -1):
        row_parts = []
        for x in range(max_x + 1):
            row_parts.append(cell_text(Coordinate(x, y)).center(width))
            if x < max_x:
                m = h_mult(x, y)
                row_parts.append(h_glyphs.get(m, f"-{m}-".center(3)) if m else " " * 3)
        lines.append("".join(row_parts).rstrip())
        if y > 0:
            gap_parts = []
            for x in range(max_x + 1):
                m = v_mult(x, y - 1)
                glyph = v_glyphs.get(m, str(m)) if m else " "
                gap_parts.append(glyph.center(width))
                if x < max_x:
                    gap_parts.append(" " * 3)
            lines.append("".join(gap_parts).rstrip())
    return "\n".join(lines) + "\n"


def count_table(r: int, k_max: int, csv: bool = False) -> str:
    """Table of configuration counts for a node with r neighbors.

    Rows are k = 1..k_max, columns are magnitudes n = 0..r*k_max; cells past
    n = r*k stay blank. Each row flags its maximum (at the midpoint
    floor(r*k/2), twinned when r*k is odd).
    """
    if not 1 <= r <= 4:
        raise ValueError(f"neighbor count must be in 1..4, got {r}")
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    n_max = r * k_max
    rows = []
    for k in range(1, k_max + 1):
        counts = [count_configs(n, r, k) for n in range(r * k + 1)]
        rows.append((k, counts, max(counts), (r * k) // 2))

    if csv:
        header = ["k"] + [str(n) for n in range(n_max + 1)] + ["row_max", "midpoint_n"]
        lines = [",".join(header)]
        for k, counts, row_max, mid in rows:
            cells = [str(c) for c in counts] + [""] * (n_max - r * k)
            lines.append(",".join([str(k)] + cells + [str(row_max), str(mid)]))
        return "\n".join(lines) + "\n"

    col = max(len(str(row_max)) for _, _, row_max, _ in rows) + 1
    corner = r"k\n"
    header = f"{corner:>5} |" + "".join(f"{n:>{col + 1}}" for n in range(n_max + 1))
    lines = [f"configurations for a node with {r} neighbors", header, "-" * len(header)]
    for k, counts, row_max, mid in rows:
        cells = []
        for n in range(n_max + 1):
            if n < len(counts):
                mark = "*" if counts[n] == row_max else " "
                cells.append(f"{counts[n]:>{col}}{mark}")
            else:
                cells.append(" " * (col + 1))
        lines.append(f"{k:>5} |" + "".join(cells).rstrip() + f"   (max {row_max} at n={mid})")
    return "\n".join(lines) + "\n"
