"""Time-indexed SAT planner for sliding-tile puzzles.

The 4x4 board (15-puzzle) is the headline case; the 3x3 board (8-puzzle)
runs behind the same interface so breadth-first search can serve as an
exhaustive oracle in tests.

Variables S(i,j,n,t) say that square (i,j) holds tile n at timestep t, with
s*s denoting the blank; they are allocated timestep-major.  Each timestep
carries pairwise per-square exclusions plus two totality axioms (every
square holds a tile; every tile sits on a square).  The totality axioms are
not strictly part of the classic transition relation, but without them
models can leave squares undetermined or teleport tiles through the freshly
vacated square, and decoded plans stop corresponding to legal play; with
both axioms every model is a legal trajectory, which the simulator then
re-validates anyway.

Transitions: squares neither blank nor adjacent to it keep their tile
(static frame); the blank square swaps with exactly one neighbour while the
other neighbours stay put (slide).  Both families are implications over
conjunctions, routed through the Tseitin layer.  The goal is a disjunction
over the last five timesteps of the horizon, so horizons grow in steps of
five: 5, 10, 15, ... up to the board diameter (80 moves for 4x4, 31 for
3x3).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .boolexpr import And, BoolExpr, Iff, Implies, Not, Or, Var, tseitin_cnf
from .cnf import CnfFormula, VarAllocator, VarMap
from .solver import SolverOptions, Status, solve

HORIZON_STEP = 5
DIAMETER = {4: 80, 3: 31}


class BoardError(ValueError):
    pass


class PlanError(ValueError):
    pass


@dataclass(frozen=True)
class Board:
    """A size x size board; tiles are a permutation of 1..size^2, where
    size^2 stands for the blank."""

    size: int
    tiles: tuple[int, ...]  # row-major

    def __post_init__(self) -> None:
        s = self.size
        if s not in DIAMETER:
            raise BoardError(f"unsupported board size {s}")
        if sorted(self.tiles) != list(range(1, s * s + 1)):
            raise BoardError(f"tiles must be a permutation of 1..{s * s}")

    @classmethod
    def from_text(cls, text: str, size: int = 4) -> "Board":
        """Whitespace-separated tiles, row-major; 0 is accepted for the blank."""
        parts = text.split()
        if len(parts) != size * size:
            raise BoardError(f"expected {size * size} tiles, got {len(parts)}")
        try:
            tiles = [int(p) for p in parts]
        except ValueError:
            raise BoardError(f"non-integer tile in {text!r}") from None
        tiles = [size * size if t == 0 else t for t in tiles]
        return cls(size, tuple(tiles))

    @classmethod
    def goal(cls, size: int = 4) -> "Board":
        return cls(size, tuple(range(1, size * size + 1)))

    def tile_at(self, i: int, j: int) -> int:
        return self.tiles[self.size * (i - 1) + (j - 1)]

    def blank_pos(self) -> tuple[int, int]:
        idx = self.tiles.index(self.size * self.size)
        return idx // self.size + 1, idx % self.size + 1

    def is_goal(self) -> bool:
        return self.tiles == tuple(range(1, self.size * self.size + 1))

    def render(self) -> str:
        s, blank = self.size, self.size * self.size
        w = len(str(blank - 1))
        rows = []
        for i in range(1, s + 1):
            rows.append(
                " ".join(
                    f"{self.tile_at(i, j):>{w}}" if self.tile_at(i, j) != blank else " " * w
                    for j in range(1, s + 1)
                )
            )
        return "\n".join(rows)


@dataclass(frozen=True)
class Plan:
    """Moves are the squares whose tile slides into the blank, in order."""

    moves: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.moves)


def _adjacent(s: int, i: int, j: int) -> Iterator[tuple[int, int]]:
    for di, dj in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        k, l = i + di, j + dj
        if 1 <= k <= s and 1 <= l <= s:
            yield k, l


def simulate(start: Board, plan: Plan) -> Board:
    """Apply the plan mechanically; raises PlanError on an illegal move."""
    s = start.size
    tiles = list(start.tiles)
    bi, bj = start.blank_pos()
    for step, (i, j) in enumerate(plan.moves, start=1):
        if abs(i - bi) + abs(j - bj) != 1:
            raise PlanError(
                f"step {step}: square ({i},{j}) is not adjacent to the blank ({bi},{bj})"
            )
        src = s * (i - 1) + (j - 1)
        dst = s * (bi - 1) + (bj - 1)
        tiles[dst] = tiles[src]
        tiles[src] = s * s
        bi, bj = i, j
    return Board(s, tuple(tiles))


def parity_solvable(board: Board) -> bool:
    """Permutation parity plus blank-row criterion; no search involved."""
    s = board.size
    blank = s * s
    seq = [t for t in board.tiles if t != blank]
    inversions = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    if s % 2 == 1:
        return inversions % 2 == 0
    blank_row_from_bottom = s - board.blank_pos()[0] + 1
    return (inversions + blank_row_from_bottom) % 2 == 1


def encode_fifteen(start: Board, m: int) -> tuple[CnfFormula, VarMap]:
    """Bounded-horizon encoding: start units at t=0, per-timestep state
    axioms, transition constraints for t < m, and a goal window over the
    last five timesteps."""
    s = start.size
    cap = DIAMETER[s]
    if not 1 <= m <= cap:
        raise ValueError(f"horizon must be within 1..{cap}")
    tiles = range(1, s * s + 1)
    squares = [(i, j) for i in range(1, s + 1) for j in range(1, s + 1)]
    blank = s * s

    alloc = VarAllocator()
    vm = VarMap()
    for t in range(m + 1):
        for i, j in squares:
            for n in tiles:
                vm.add(("S", i, j, n, t), alloc)
    sv = lambda i, j, n, t: vm.id(("S", i, j, n, t))

    f = CnfFormula(num_vars=alloc.num_allocated)
    # start position as unit clauses
    for i, j in squares:
        f.add_clause([sv(i, j, start.tile_at(i, j), 0)])
    # per-square mutual exclusion, and both totality axioms
    for t in range(m + 1):
        for i, j in squares:
            for n in tiles:
                for n2 in range(n + 1, blank + 1):
                    f.add_clause([-sv(i, j, n, t), -sv(i, j, n2, t)])
        for i, j in squares:
            f.add_clause([sv(i, j, n, t) for n in tiles])
        for n in tiles:
            f.add_clause([sv(i, j, n, t) for i, j in squares])

    # shared Var objects so the Tseitin walk sees a DAG
    vcache = {
        (i, j, n, t): Var(f"S_{i}_{j}_{n}_{t}")
        for t in range(m + 1)
        for i, j in squares
        for n in tiles
    }
    name_ids = {
        f"S_{i}_{j}_{n}_{t}": sv(i, j, n, t)
        for t in range(m + 1)
        for i, j in squares
        for n in tiles
    }

    constraints: list[BoolExpr] = []
    for t in range(m):
        dnc = {
            (i, j): And(
                *[Iff(vcache[(i, j, n, t)], vcache[(i, j, n, t + 1)]) for n in tiles]
            )
            for i, j in squares
        }
        for i, j in squares:
            neighbours = list(_adjacent(s, i, j))
            far_from_blank = And(
                Not(vcache[(i, j, blank, t)]),
                *[Not(vcache[(k, l, blank, t)]) for k, l in neighbours],
            )
            constraints.append(Implies(far_from_blank, dnc[(i, j)]))
            one_tile_moved = []
            for k, l in neighbours:
                swap_copy = And(
                    *[Iff(vcache[(i, j, n, t)], vcache[(k, l, n, t + 1)]) for n in tiles]
                )
                others = [dnc[(x, y)] for x, y in neighbours if (x, y) != (k, l)]
                one_tile_moved.append(And(swap_copy, *others))
            constraints.append(
                Implies(vcache[(i, j, blank, t)], Or(*one_tile_moved))
            )

    tseitin_cnf(And(*constraints), alloc=alloc, input_vars=name_ids, formula=f)

    # goal window: solved at one of the last five timesteps; every window
    # member gets a definition variable, recorded in the map under
    # ("solved", t) so callers can pin an exact solving time by assumption
    window_lits = []
    for t in range(max(0, m - 4), m + 1):
        solved = And(*[vcache[(i, j, s * (i - 1) + j, t)] for i, j in squares])
        out = tseitin_cnf(
            solved, alloc=alloc, input_vars=name_ids, formula=f, assert_root=False
        )
        vm.bind(("solved", t), out.root_literal)
        window_lits.append(out.root_literal)
    f.add_clause(window_lits)
    return f, vm


def _decode_plan(start: Board, m: int, vm: VarMap, model) -> Plan:
    """Track the blank's trajectory up to the first solved timestep."""
    s = start.size
    blank = s * s
    squares = [(i, j) for i in range(1, s + 1) for j in range(1, s + 1)]

    def board_at(t: int) -> Board:
        tiles = [0] * (s * s)
        for i, j in squares:
            for n in range(1, blank + 1):
                if model[vm.id(("S", i, j, n, t))]:
                    tiles[s * (i - 1) + (j - 1)] = n
                    break
        return Board(s, tuple(tiles))

    moves: list[tuple[int, int]] = []
    board = board_at(0)
    for t in range(m + 1):
        if board.is_goal():
            return Plan(tuple(moves))
        if t == m:
            break
        nxt = board_at(t + 1)
        moves.append(nxt.blank_pos())
        board = nxt
    raise AssertionError("model contains no solved timestep")


def solve_fifteen(start: Board, horizon: int | None = None) -> Plan | None:
    """Deepen the horizon in steps of five until a plan appears; plans are
    validated by the simulator before being returned.  `horizon` pins a
    single horizon instead of the schedule.

    Within a satisfiable window the solver may solve at any of the five
    timesteps, so after a window hit the exact solving time is pinned by
    assumption, ascending, which makes the returned plan shortest possible.
    Times whose parity cannot match the blank's distance to its corner are
    skipped outright."""
    if start.is_goal():
        return Plan(())
    if not parity_solvable(start):
        return None
    s = start.size
    cap = DIAMETER[s]
    horizons = [horizon] if horizon is not None else list(
        range(HORIZON_STEP, cap + 1, HORIZON_STEP)
    )
    bi, bj = start.blank_pos()
    length_parity = (abs(s - bi) + abs(s - bj)) % 2
    for m in horizons:
        f, vm = encode_fifteen(start, m)
        res = solve(f)
        if res.status is not Status.SAT:
            continue
        for t in range(max(0, m - 4), m + 1):
            if t % 2 != length_parity:
                continue
            pinned = solve(f, assumptions=[vm.id(("solved", t))])
            if pinned.status is not Status.SAT:
                continue
            plan = _decode_plan(start, m, vm, pinned.model)
            if not simulate(start, plan).is_goal():
                raise AssertionError("decoded plan does not reach the goal")
            return plan
        raise AssertionError("satisfiable window but no pinnable solving time")
    return None
