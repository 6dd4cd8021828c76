"""Graeco-Latin square encoder/solver.

A pair of order-n Latin squares is orthogonal when superimposing them yields
all n^2 ordered value pairs.  The encoding uses 2n^3 variables A(i,j,k) and
B(i,j,k) ("entry (i,j) of that square is k"), allocated A-then-B in (i,j,k)
lexicographic order, plus Tseitin auxiliaries for the orthogonality
constraints, which are disjunctions of conjunctions and so get routed
through the expression layer.

Symmetry breaking pins the first row of A and B and the first column of A
to 1..n, which keeps one representative per symmetry class (simultaneous
row/column permutations plus renaming within either square).
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolexpr import And, Or, Var, tseitin_cnf
from .cnf import CnfFormula, VarAllocator, VarMap
from .solver import SolverOptions, Status, solve


@dataclass(frozen=True)
class SquarePair:
    n: int
    a: tuple[tuple[int, ...], ...]
    b: tuple[tuple[int, ...], ...]


def encode_graeco(n: int) -> tuple[CnfFormula, VarMap]:
    if n < 1:
        raise ValueError("order must be at least 1")
    alloc = VarAllocator()
    vm = VarMap()
    for square in ("A", "B"):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    vm.add((square, i, j, k), alloc)
    a = lambda i, j, k: vm.id(("A", i, j, k))
    b = lambda i, j, k: vm.id(("B", i, j, k))

    f = CnfFormula(num_vars=alloc.num_allocated)

    # (1) every entry holds exactly one value
    for var in (a, b):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                f.add_clause([var(i, j, k) for k in range(1, n + 1)])
                for k in range(1, n + 1):
                    for l in range(k + 1, n + 1):
                        f.add_clause([-var(i, j, k), -var(i, j, l)])

    # (2) rows and columns repeat no value
    for var in (a, b):
        for k in range(1, n + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    for j2 in range(j + 1, n + 1):
                        f.add_clause([-var(i, j, k), -var(i, j2, k)])
            for j in range(1, n + 1):
                for i in range(1, n + 1):
                    for i2 in range(i + 1, n + 1):
                        f.add_clause([-var(i, j, k), -var(i2, j, k)])

    # (3) orthogonality: every ordered value pair (k,l) appears somewhere
    name_ids = {}
    for key in vm.keys():
        sq, i, j, k = key
        name_ids[f"{sq}_{i}_{j}_{k}"] = vm.id(key)
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            conjuncts = [
                And(Var(f"A_{i}_{j}_{k}"), Var(f"B_{i}_{j}_{l}"))
                for i in range(1, n + 1)
                for j in range(1, n + 1)
            ]
            expr = Or(*conjuncts) if len(conjuncts) > 1 else conjuncts[0]
            tseitin_cnf(expr, alloc=alloc, input_vars=name_ids, formula=f)

    # (4) symmetry breaking units
    for i in range(1, n + 1):
        f.add_clause([a(1, i, i)])
        f.add_clause([b(1, i, i)])
        f.add_clause([a(i, 1, i)])
    return f, vm


def _decode(n: int, vm: VarMap, model) -> SquarePair:
    def square(tag: str) -> tuple[tuple[int, ...], ...]:
        rows = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                vals = [k for k in range(1, n + 1) if model[vm.id((tag, i, j, k))]]
                if len(vals) != 1:
                    raise AssertionError(f"entry ({i},{j}) of {tag} is not single-valued")
                row.append(vals[0])
            rows.append(tuple(row))
        return tuple(rows)

    return SquarePair(n, square("A"), square("B"))


def validate_graeco(pair: SquarePair) -> bool:
    """Latin property of both squares plus n^2 distinct superposition pairs;
    never consults the solver."""
    n = pair.n
    for square in (pair.a, pair.b):
        if len(square) != n or any(len(r) != n for r in square):
            return False
        want = set(range(1, n + 1))
        for row in square:
            if set(row) != want:
                return False
        for j in range(n):
            if {row[j] for row in square} != want:
                return False
    pairs = {(pair.a[i][j], pair.b[i][j]) for i in range(n) for j in range(n)}
    return len(pairs) == n * n


def solve_graeco(
    n: int, opts: SolverOptions | None = None
) -> SquarePair | None:
    f, vm = encode_graeco(n)
    res = solve(f, opts)
    if res.status is not Status.SAT:
        return None
    pair = _decode(n, vm, res.model)
    if not validate_graeco(pair):
        raise AssertionError("solver returned an invalid square pair")
    return pair


def render_pair(pair: SquarePair) -> str:
    def fmt(square: tuple[tuple[int, ...], ...]) -> list[str]:
        w = len(str(pair.n))
        return [" ".join(f"{v:>{w}}" for v in row) for row in square]

    left, right = fmt(pair.a), fmt(pair.b)
    return "\n".join(f"{l}    {r}" for l, r in zip(left, right))
