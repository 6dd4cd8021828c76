"""The n-queens encoder, decoder, validator, and counter.

One variable Q(x,y) per square, allocated row-major.  Positive constraints
assert a queen in every row and every column; negative constraints forbid
two queens on mutually attacking squares (same row, column, or diagonal),
emitted once per unordered square pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import CnfFormula, VarAllocator, VarMap
from .solver import SolveResult, SolverOptions, Status, enumerate_models, solve


@dataclass(frozen=True)
class QueensBoard:
    n: int
    queens: tuple[tuple[int, int], ...]  # (x, y) with 1 <= x, y <= n


def encode_queens(n: int) -> tuple[CnfFormula, VarMap]:
    if n < 1:
        raise ValueError("board size must be at least 1")
    alloc = VarAllocator()
    vm = VarMap()
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            vm.add(("Q", x, y), alloc)
    q = lambda x, y: vm.id(("Q", x, y))

    f = CnfFormula(num_vars=alloc.num_allocated)
    for y in range(1, n + 1):
        f.add_clause([q(x, y) for x in range(1, n + 1)])
    for x in range(1, n + 1):
        f.add_clause([q(x, y) for y in range(1, n + 1)])
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            for a, b in _attacked(n, x, y):
                if (a, b) > (x, y):  # one clause per unordered pair
                    f.add_clause([-q(x, y), -q(a, b)])
    return f, vm


def _attacked(n: int, x: int, y: int):
    for a in range(1, n + 1):
        if a != x:
            yield a, y
    for b in range(1, n + 1):
        if b != y:
            yield x, b
    for dx, dy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        a, b = x + dx, y + dy
        while 1 <= a <= n and 1 <= b <= n:
            yield a, b
            a += dx
            b += dy


def _decode(n: int, vm: VarMap, model) -> QueensBoard:
    queens = [key[1:] for key in vm.true_keys(model)]
    return QueensBoard(n=n, queens=tuple(sorted(queens)))


def solve_queens(n: int, opts: SolverOptions | None = None) -> QueensBoard | None:
    f, vm = encode_queens(n)
    res: SolveResult = solve(f, opts)
    if res.status is not Status.SAT:
        return None
    board = _decode(n, vm, res.model)
    if not validate_queens(board):
        raise AssertionError(f"solver returned an invalid {n}-queens board")
    return board


def validate_queens(board: QueensBoard) -> bool:
    """Rule check independent of the solver."""
    n, queens = board.n, board.queens
    if len(queens) != n:
        return False
    if not all(1 <= x <= n and 1 <= y <= n for x, y in queens):
        return False
    if len(set(queens)) != n:
        return False
    xs = {x for x, _ in queens}
    ys = {y for _, y in queens}
    diag = {x - y for x, y in queens}
    anti = {x + y for x, y in queens}
    return len(xs) == len(ys) == len(diag) == len(anti) == n


def count_queens(n: int, limit: int, opts: SolverOptions | None = None) -> int:
    """Number of distinct solutions, up to `limit`."""
    f, vm = encode_queens(n)
    scope = list(vm.ids())
    return len(enumerate_models(f, scope, limit, opts))


def render_ascii(board: QueensBoard) -> str:
    cells = {(x, y): "Q" for x, y in board.queens}
    lines = []
    for y in range(board.n, 0, -1):
        lines.append(" ".join(cells.get((x, y), ".") for x in range(1, board.n + 1)))
    return "\n".join(lines)
