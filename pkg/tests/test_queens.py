import pytest

from oracles import queens_solutions
from satkit.cnf import Model, eval_cnf
from satkit.queens import (
    QueensBoard,
    count_queens,
    encode_queens,
    render_ascii,
    solve_queens,
    validate_queens,
)

FIGURE_BOARD = QueensBoard(
    8, ((1, 5), (2, 7), (3, 2), (4, 6), (5, 3), (6, 1), (7, 4), (8, 8))
)


class TestEncoding:
    def test_n1_two_unit_clauses(self):
        f, vm = encode_queens(1)
        assert f.num_vars == 1
        assert f.clauses == [(1,), (1,)]

    def test_row_and_column_clause_counts(self):
        n = 6
        f, _ = encode_queens(n)
        wide = [c for c in f.clauses if len(c) == n]
        assert len(wide) == 2 * n

    def test_known_good_board_satisfies_encoding(self):
        f, vm = encode_queens(8)
        vals = [False] * (f.num_vars + 1)
        for x, y in FIGURE_BOARD.queens:
            vals[vm.id(("Q", x, y))] = True
        assert eval_cnf(f, Model(vals))

    def test_attack_pairs_emitted_once(self):
        f, _ = encode_queens(4)
        binary = [frozenset(c) for c in f.clauses if len(c) == 2]
        assert len(binary) == len(set(binary))

    def test_invalid_size(self):
        with pytest.raises(ValueError):
            encode_queens(0)


class TestSolve:
    def test_small_sizes_unsat(self):
        assert solve_queens(2) is None
        assert solve_queens(3) is None
        # cross-check with the permutation oracle
        assert queens_solutions(2) == []
        assert queens_solutions(3) == []

    def test_solvable_range(self):
        for n in range(4, 13):
            board = solve_queens(n)
            assert board is not None
            assert validate_queens(board)

    def test_n1(self):
        board = solve_queens(1)
        assert board == QueensBoard(1, ((1, 1),))


class TestValidate:
    def test_figure_board_valid(self):
        assert validate_queens(FIGURE_BOARD)

    def test_same_column_invalid(self):
        assert not validate_queens(QueensBoard(2, ((1, 1), (1, 2))))

    def test_diagonal_invalid(self):
        bad = QueensBoard(4, ((1, 1), (2, 2), (3, 4), (4, 3)))
        assert not validate_queens(bad)

    def test_wrong_count_invalid(self):
        assert not validate_queens(QueensBoard(3, ((1, 1),)))

    def test_out_of_range_invalid(self):
        assert not validate_queens(QueensBoard(2, ((1, 1), (2, 5))))


class TestCount:
    def test_count_matches_oracle(self):
        for n in range(1, 8):
            want = len(queens_solutions(n))
            assert count_queens(n, 1000) == want, n

    def test_count_n6_is_4(self):
        assert count_queens(6, 100) == 4

    def test_limit_respected(self):
        assert count_queens(8, 5) == 5


def test_render_ascii():
    art = render_ascii(QueensBoard(2, ((1, 1), (2, 2))))
    assert art == ". Q\nQ ."
