"""Text formats: parsing, serialization, verification, rendering, tables."""

import pytest

from gridlink import (
    ConfigWord,
    Coordinate,
    DuplicateCoordinateError,
    DuplicateEdgeError,
    EdgeKey,
    MissingHeaderError,
    NumberedGrid,
    ParseError,
    PuzzleState,
    RangeError,
    apply_builder,
    count_table,
    node,
    parse_puzzle,
    parse_solution,
    render_board,
    serialize_puzzle,
    serialize_solution,
    verify_solution,
)


def edge(x1, y1, x2, y2):
    return EdgeKey.between(Coordinate(x1, y1), Coordinate(x2, y2))


class TestParsePuzzle:
    def test_minimal_document(self):
        g = parse_puzzle("k 2\nnode 0 0 2\nnode 1 0 2\n")
        assert g.k == 2
        assert len(g.nodes) == 2

    def test_comments_and_blanks_ignored(self):
        text = "# a puzzle\n\nk 2  # bound\n\nnode 0 0 2\n# middle\nnode 1 0 2\n"
        assert parse_puzzle(text).k == 2

    def test_missing_header(self):
        with pytest.raises(MissingHeaderError):
            parse_puzzle("node 0 0 1\n")

    def test_duplicate_coordinate_carries_line_number(self):
        with pytest.raises(DuplicateCoordinateError) as exc:
            parse_puzzle("k 2\nnode 0 0 2\nnode 0 0 3\n")
        assert exc.value.line == 3

    def test_range_errors(self):
        with pytest.raises(RangeError):
            parse_puzzle("k 0\nnode 0 0 1\n")
        with pytest.raises(RangeError):
            parse_puzzle("k 1\nnode 0 0 0\n")

    def test_malformed_line(self):
        with pytest.raises(ParseError) as exc:
            parse_puzzle("k 1\nnode 0 zero 1\n")
        assert exc.value.line == 2

    def test_round_trip(self):
        g = NumberedGrid(2, [node(0, 0, 2), node(3, 1, 5), node(0, 4, 1)])
        assert parse_puzzle(serialize_puzzle(g)) == g


class TestParseSolution:
    def test_records_canonicalized(self):
        records = parse_solution("conn 1 0 0 0 1\nconn 0 0 0 1 2\n")
        assert [(e.a.x, e.a.y, e.b.x, e.b.y, m) for e, m in records] == [
            (0, 0, 0, 1, 2),
            (0, 0, 1, 0, 1),
        ]

    def test_duplicate_edge_rejected(self):
        with pytest.raises(DuplicateEdgeError):
            parse_solution("conn 0 0 1 0 1\nconn 1 0 0 0 2\n")

    def test_zero_multiplicity_rejected(self):
        with pytest.raises(RangeError):
            parse_solution("conn 0 0 1 0 0\n")

    def test_diagonal_rejected(self):
        with pytest.raises(ParseError):
            parse_solution("conn 0 0 1 1 1\n")

    def test_round_trip(self):
        text = "conn 0 0 0 1 2\nconn 0 0 1 0 1\n"
        assert serialize_solution(parse_solution(text)) == text


class TestVerifySolution:
    def grid(self):
        return NumberedGrid(2, [node(0, 0, 2), node(1, 0, 2), node(0, 1, 2), node(1, 1, 2)])

    def test_accepts_true_solution(self):
        g = self.grid()
        records = [
            (edge(0, 0, 1, 0), 1), (edge(0, 0, 0, 1), 1),
            (edge(1, 0, 1, 1), 1), (edge(0, 1, 1, 1), 1),
        ]
        assert verify_solution(g, records)

    def test_rejects_incomplete(self):
        g = self.grid()
        check = verify_solution(g, [(edge(0, 0, 1, 0), 2), (edge(0, 1, 1, 1), 2)])
        assert not check and "disconnected" in check.reason

    def test_rejects_overfull(self):
        g = self.grid()
        check = verify_solution(g, [(edge(0, 0, 1, 0), 2), (edge(0, 0, 0, 1), 1)])
        assert not check

    def test_rejects_non_neighbor_record(self):
        g = NumberedGrid(1, [node(0, 0, 1), node(1, 0, 1), node(2, 0, 2)])
        check = verify_solution(g, [(edge(0, 0, 2, 0), 1)])
        assert not check

    def test_rejects_multiplicity_above_k(self):
        g = NumberedGrid(1, [node(0, 0, 2), node(1, 0, 2)])
        check = verify_solution(g, [(edge(0, 0, 1, 0), 2)])
        assert not check


class TestRenderBoard:
    def test_solved_pair_uses_single_dash(self):
        g = NumberedGrid(1, [node(0, 0, 1), node(1, 0, 1)])
        s = PuzzleState.empty(g).add_connections(edge(0, 0, 1, 0), 1)
        assert render_board(s) == "1---1\n"

    def test_double_connection_uses_equals(self):
        g = NumberedGrid(2, [node(0, 0, 2), node(1, 0, 2)])
        s = PuzzleState.empty(g).add_connections(edge(0, 0, 1, 0), 2)
        assert render_board(s) == "2===2\n"

    def test_empty_state_shows_residuals_and_no_links(self):
        g = NumberedGrid(2, [node(0, 0, 2), node(1, 0, 2)])
        out = render_board(PuzzleState.empty(g))
        assert "-" not in out and "=" not in out
        assert "2(2)" in out

    def test_vertical_connection_and_y_flip(self):
        g = NumberedGrid(1, [node(0, 0, 1), node(0, 1, 1)])
        s = PuzzleState.empty(g).add_connections(edge(0, 0, 0, 1), 1)
        assert render_board(s) == "1\n|\n1\n"

    def test_long_range_connection_spans_gap_cells(self):
        g = NumberedGrid(1, [node(0, 0, 1), node(2, 0, 1)])
        s = PuzzleState.empty(g).add_connections(edge(0, 0, 2, 0), 1)
        assert render_board(s) == "1---.---1\n"

    def test_stable_output(self):
        g = NumberedGrid(2, [node(0, 0, 2), node(1, 0, 2), node(0, 1, 2), node(1, 1, 2)])
        s = PuzzleState.empty(g)
        s = apply_builder(s, g.node_at(Coordinate(0, 0)), ConfigWord(1, 1, 0, 0))
        assert render_board(s) == render_board(s)


class TestCountTable:
    def test_known_cells_in_csv(self):
        text = count_table(4, 2, csv=True)
        rows = [line.split(",") for line in text.strip().splitlines()]
        header, row_k2 = rows[0], rows[2]
        assert header[:2] == ["k", "0"]
        assert row_k2[0] == "2"
        assert row_k2[1 + 7] == "4"  # magnitude 7 under bound 2

    def test_large_bound_cell(self):
        text = count_table(4, 10, csv=True)
        row_k10 = [line.split(",") for line in text.strip().splitlines()][10]
        assert row_k10[0] == "10"
        assert row_k10[1 + 20] == "891"

    def test_rows_symmetric_and_blank_past_rk(self):
        text = count_table(3, 4, csv=True)
        for line in text.strip().splitlines()[1:]:
            cells = line.split(",")
            k = int(cells[0])
            row = cells[1 : 1 + 3 * 4 + 1]
            filled = [c for c in row if c != ""]
            assert len(filled) == 3 * k + 1
            assert filled == filled[::-1]
            assert all(c == "" for c in row[3 * k + 1 :])

    def test_text_mode_flags_row_maximum(self):
        text = count_table(4, 2, csv=False)
        assert "*" in text
        assert "max" in text
