"""Sudoku engine: solving, uniqueness checking, randomized generation, and
minimum-clue estimation.

The encoding uses 729 variables S(i,j,k), allocated (row, column, digit)
lexicographic: at-least-one digit per cell, pairwise same-digit exclusions
across rows, columns, and blocks, and one unit clause per given.  The
per-cell at-most-one clauses are optional (`cell_amo`) because they are
implied by the rest; they default off.

Generation follows the randomized-solving recipe: solve the empty grid with
seeded random activity to obtain a full grid R, keep the first 50 cells of a
seeded random permutation as givens, and accept iff re-solving with those
givens plus a clause blocking R is unsatisfiable.  The minimum-clue estimate
then binary-searches how many cells of the same permutation are needed,
between 20 and 50.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Optional

from .cnf import CnfFormula, Model, VarAllocator, VarMap, blocking_clause
from .prng import XorShift64Star
from .solver import SolverOptions, Status, solve

GIVENS = 50
LOW_BOUND = 20
RETRY_CAP = 1000


class GridError(ValueError):
    pass


class UnsatisfiablePuzzleError(ValueError):
    pass


class NotUniqueError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    """9x9 grid; cells hold 1..9 or None.  Givens must not conflict."""

    cells: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self) -> None:
        if len(self.cells) != 9 or any(len(r) != 9 for r in self.cells):
            raise GridError("grid must be 9x9")
        for row in self.cells:
            for d in row:
                if d is not None and not 1 <= d <= 9:
                    raise GridError(f"digit {d!r} outside 1..9")
        for unit in _units():
            seen: set[int] = set()
            for i, j in unit:
                d = self.cells[i - 1][j - 1]
                if d is None:
                    continue
                if d in seen:
                    raise GridError(f"digit {d} repeated within a unit")
                seen.add(d)

    @classmethod
    def from_text(cls, text: str) -> "Grid":
        """81 characters row-major; `.` or `0` for blanks."""
        s = "".join(text.split())
        if len(s) != 81:
            raise GridError(f"expected 81 cells, got {len(s)}")
        rows = []
        for i in range(9):
            row = []
            for ch in s[9 * i : 9 * i + 9]:
                if ch in ".0":
                    row.append(None)
                elif ch.isdigit():
                    row.append(int(ch))
                else:
                    raise GridError(f"bad cell character {ch!r}")
            rows.append(tuple(row))
        return cls(tuple(rows))

    def to_text(self) -> str:
        return "".join(
            str(d) if d is not None else "." for row in self.cells for d in row
        )

    def get(self, i: int, j: int) -> Optional[int]:
        return self.cells[i - 1][j - 1]

    def givens(self) -> Iterator[tuple[int, int, int]]:
        for i in range(1, 10):
            for j in range(1, 10):
                d = self.cells[i - 1][j - 1]
                if d is not None:
                    yield i, j, d

    def given_count(self) -> int:
        return sum(1 for _ in self.givens())

    def is_complete(self) -> bool:
        return all(d is not None for row in self.cells for d in row)

    def extends(self, other: "Grid") -> bool:
        """True when this grid agrees with every filled cell of `other`."""
        return all(self.get(i, j) == d for i, j, d in other.givens())

    def with_cell(self, i: int, j: int, d: Optional[int]) -> "Grid":
        rows = [list(r) for r in self.cells]
        rows[i - 1][j - 1] = d
        return Grid(tuple(tuple(r) for r in rows))


def _units() -> list[list[tuple[int, int]]]:
    units = []
    for i in range(1, 10):
        units.append([(i, j) for j in range(1, 10)])
    for j in range(1, 10):
        units.append([(i, j) for i in range(1, 10)])
    for bi in range(3):
        for bj in range(3):
            units.append(
                [
                    (3 * bi + di, 3 * bj + dj)
                    for di in range(1, 4)
                    for dj in range(1, 4)
                ]
            )
    return units


def _peer_pairs() -> list[tuple[tuple[int, int], tuple[int, int]]]:
    pairs: set[tuple[tuple[int, int], tuple[int, int]]] = set()
    for unit in _units():
        for a in range(len(unit)):
            for b in range(a + 1, len(unit)):
                p, q = unit[a], unit[b]
                pairs.add((p, q) if p < q else (q, p))
    return sorted(pairs)


_PEER_PAIRS = _peer_pairs()

EMPTY_GRID = Grid(tuple(tuple(None for _ in range(9)) for _ in range(9)))


def encode_sudoku(grid: Grid, cell_amo: bool = False) -> tuple[CnfFormula, VarMap]:
    alloc = VarAllocator()
    vm = VarMap()
    for i in range(1, 10):
        for j in range(1, 10):
            for k in range(1, 10):
                vm.add(("S", i, j, k), alloc)
    s = lambda i, j, k: vm.id(("S", i, j, k))

    f = CnfFormula(num_vars=alloc.num_allocated)
    for i in range(1, 10):
        for j in range(1, 10):
            f.add_clause([s(i, j, k) for k in range(1, 10)])
    for (i, j), (a, b) in _PEER_PAIRS:
        for k in range(1, 10):
            f.add_clause([-s(i, j, k), -s(a, b, k)])
    if cell_amo:
        for i in range(1, 10):
            for j in range(1, 10):
                for k in range(1, 10):
                    for k2 in range(k + 1, 10):
                        f.add_clause([-s(i, j, k), -s(i, j, k2)])
    for i, j, d in grid.givens():
        f.add_clause([s(i, j, d)])
    return f, vm


def _decode(vm: VarMap, model: Model) -> Grid:
    rows = [[None] * 9 for _ in range(9)]
    for key in vm.true_keys(model):
        _, i, j, k = key
        if rows[i - 1][j - 1] is not None:
            raise AssertionError(f"cell ({i},{j}) decoded with two digits")
        rows[i - 1][j - 1] = k
    return Grid(tuple(tuple(r) for r in rows))


def validate_complete(grid: Grid) -> bool:
    """Rule check independent of the solver: every unit is a permutation."""
    if not grid.is_complete():
        return False
    for unit in _units():
        if sorted(grid.get(i, j) for i, j in unit) != list(range(1, 10)):
            return False
    return True


def solve_sudoku(
    grid: Grid, opts: SolverOptions | None = None, cell_amo: bool = False
) -> Grid | None:
    f, vm = encode_sudoku(grid, cell_amo=cell_amo)
    res = solve(f, opts)
    if res.status is not Status.SAT:
        return None
    out = _decode(vm, res.model)
    if not (validate_complete(out) and out.extends(grid)):
        raise AssertionError("solver returned an invalid completion")
    return out


def _blocked_resolve(
    base: Grid, solution: Grid, opts: SolverOptions | None
) -> bool:
    """True iff no completion of `base` other than `solution` exists."""
    f, vm = encode_sudoku(base)
    scope = [vm.id(("S", i, j, d)) for i, j, d in solution.givens()]
    vals = [False] * (f.num_vars + 1)
    for v in scope:
        vals[v] = True
    f.add_clause(blocking_clause(Model(vals), scope))
    return solve(f, opts).status is Status.UNSAT


def is_unique(grid: Grid, opts: SolverOptions | None = None) -> bool:
    first = solve_sudoku(grid, opts)
    if first is None:
        raise UnsatisfiablePuzzleError("grid has no completion")
    return _blocked_resolve(grid, first, opts)


@dataclass(frozen=True)
class GenerationResult:
    puzzle: Grid  # 50 givens
    solution: Grid  # the complete grid R it was carved from
    estimated_min_clues: tuple[int, int]  # (l, h) bounds, refined separately
    attempts: int
    seed: int
    cell_order: tuple[tuple[int, int], ...]  # the random cell permutation


def generate(seed: int) -> GenerationResult:
    """Carve a 50-given puzzle with a unique solution from a random full grid.

    Fully reproducible from `seed`: the solver's random activity seed and the
    cell permutation are both drawn from one xorshift64* stream.
    """
    rng = XorShift64Star(seed)
    for attempt in range(1, RETRY_CAP + 1):
        solver_seed = rng.next_u64()
        opts = SolverOptions(random_seed=solver_seed, rnd_init_act=True)
        solution = solve_sudoku(EMPTY_GRID, opts)
        assert solution is not None  # the empty grid always completes

        order = [(i, j) for i in range(1, 10) for j in range(1, 10)]
        rng.shuffle(order)
        puzzle = _restrict(solution, order[:GIVENS])
        if _blocked_resolve(puzzle, solution, opts):
            return GenerationResult(
                puzzle=puzzle,
                solution=solution,
                estimated_min_clues=(LOW_BOUND, GIVENS),
                attempts=attempt,
                seed=seed,
                cell_order=tuple(order),
            )
    raise RuntimeError(f"no unique puzzle found after {RETRY_CAP} attempts")


def _restrict(solution: Grid, cells: list[tuple[int, int]]) -> Grid:
    rows: list[list[Optional[int]]] = [[None] * 9 for _ in range(9)]
    for i, j in cells:
        rows[i - 1][j - 1] = solution.get(i, j)
    return Grid(tuple(tuple(r) for r in rows))


def estimate_min_clues(result: GenerationResult) -> tuple[int, int]:
    """Binary-search bounds on how many leading cells of the permutation
    keep the completion unique.  Probes are monotone: adding givens can only
    remove completions."""
    opts = SolverOptions(random_seed=result.seed, rnd_init_act=True)
    l, h = LOW_BOUND, GIVENS
    order = list(result.cell_order)
    while h - l > 1:
        m = (l + h + 1) // 2  # round((l+h)/2), half away from zero
        probe = _restrict(result.solution, order[:m])
        if _blocked_resolve(probe, result.solution, opts):
            h = m
        else:
            l = m
    return l, h


def generate_with_estimate(seed: int) -> GenerationResult:
    result = generate(seed)
    return replace(result, estimated_min_clues=estimate_min_clues(result))


@dataclass(frozen=True)
class Hint:
    row: int
    col: int
    digit: int
    correction: bool  # true when the cell currently holds a wrong digit


# A play-in-progress state may violate the unit rules (that is what /check
# reports), so it cannot be a Grid.  It travels as 81 flat cells instead.
Cells = tuple[Optional[int], ...]


def parse_cells(text: str) -> Cells:
    """Lenient 81-character parse: shape and characters only, rules unchecked."""
    s = "".join(text.split())
    if len(s) != 81:
        raise GridError(f"expected 81 cells, got {len(s)}")
    out: list[Optional[int]] = []
    for ch in s:
        if ch in ".0":
            out.append(None)
        elif ch.isdigit():
            out.append(int(ch))
        else:
            raise GridError(f"bad cell character {ch!r}")
    return tuple(out)


def cells_of(grid: Grid) -> Cells:
    return tuple(d for row in grid.cells for d in row)


def cells_to_text(cells: Cells) -> str:
    return "".join(str(d) if d is not None else "." for d in cells)


def cells_extend(cells: Cells, puzzle: Grid) -> bool:
    return all(cells[9 * (i - 1) + (j - 1)] == d for i, j, d in puzzle.givens())


def hint(puzzle: Grid, progress: Cells) -> Hint | None:
    """One cell of the unique solution: the first wrong cell (flagged as a
    correction) or the first empty one, row-major.  None when solved."""
    if not cells_extend(progress, puzzle):
        raise ValueError("progress does not extend the puzzle")
    solution = solve_sudoku(puzzle)
    if solution is None:
        raise UnsatisfiablePuzzleError("puzzle has no completion")
    if not _blocked_resolve(puzzle, solution, None):
        raise NotUniqueError("puzzle does not have a unique solution")
    for i in range(1, 10):
        for j in range(1, 10):
            got = progress[9 * (i - 1) + (j - 1)]
            want = solution.get(i, j)
            if got is not None and got != want:
                return Hint(i, j, want, correction=True)
    for i in range(1, 10):
        for j in range(1, 10):
            if progress[9 * (i - 1) + (j - 1)] is None:
                return Hint(i, j, solution.get(i, j), correction=False)
    return None


def conflict_cells(cells: Cells) -> list[tuple[int, int]]:
    """Cells participating in a row/column/block duplicate, sorted."""
    bad: set[tuple[int, int]] = set()
    for unit in _units():
        by_digit: dict[int, list[tuple[int, int]]] = {}
        for i, j in unit:
            d = cells[9 * (i - 1) + (j - 1)]
            if d is not None:
                by_digit.setdefault(d, []).append((i, j))
        for group in by_digit.values():
            if len(group) > 1:
                bad.update(group)
    return sorted(bad)


def render_ascii(grid: Grid) -> str:
    lines = []
    for i in range(1, 10):
        row = []
        for j in range(1, 10):
            d = grid.get(i, j)
            row.append(str(d) if d is not None else ".")
            if j in (3, 6):
                row.append("|")
        lines.append(" ".join(row))
        if i in (3, 6):
            lines.append("------+-------+------")
    return "\n".join(lines)
