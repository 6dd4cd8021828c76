"""Maximum clique via SAT: DIMACS graph ingestion, k-clique encoding with a
sequential counter, and the incremental-k maximization loop.

A k-clique instance has one variable per vertex, a binary exclusion clause
per missing edge (two non-adjacent vertices cannot both be chosen), and
counter clauses forcing at least k chosen vertices.  Maximization starts at
k = 3 and re-encodes from scratch for each k until the instance becomes
unsatisfiable; the last satisfying assignment is the maximum clique.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .boolexpr import And, Not, Or, Var, tseitin_cnf
from .cardinality import at_least_k
from .cnf import CnfFormula, VarAllocator, VarMap
from .solver import SolverOptions, Status, solve


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]  # (u, v) with u < v

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise GraphError(f"edge ({u},{v}) outside 1..{self.n}")

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    @property
    def num_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CliqueResult:
    vertices: tuple[int, ...]
    size: int
    iterations: tuple[tuple[int, bool], ...]  # (k, sat?)
    complete: bool = True  # false when a time budget expired mid-search


def parse_dimacs_graph(text: str) -> Graph:
    """Parse a DIMACS graph (`p edge n m` header, `e u v` lines).

    Duplicate edges collapse to one; the declared edge count is advisory.
    """
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphError(f"line {lineno}: malformed header {line!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise GraphError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: malformed edge {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphError(f"line {lineno}: malformed edge {line!r}") from None
            if u == v:
                raise GraphError(f"line {lineno}: self-loop on vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"line {lineno}: vertex outside 1..{n}")
            edges.add((min(u, v), max(u, v)))
        else:
            raise GraphError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise GraphError("missing `p edge` header")
    return Graph(n, frozenset(edges))


def write_dimacs_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.num_edges}"]
    for u, v in sorted(g.edges):
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def encode_k_clique(
    g: Graph, k: int, alloc: VarAllocator | None = None
) -> tuple[CnfFormula, VarMap]:
    """Variables x_1..x_n, one exclusion clause per non-edge, and the
    sequential counter asserting at least k chosen vertices."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k must be within 1..{g.n}")
    if alloc is None:
        alloc = VarAllocator()
    vm = VarMap()
    xs = [vm.add(("x", v), alloc) for v in range(1, g.n + 1)]

    f = CnfFormula(num_vars=alloc.num_allocated)
    for u, v in combinations(range(1, g.n + 1), 2):
        if (u, v) not in g.edges:
            f.add_clause([-xs[u - 1], -xs[v - 1]])
    counter_clauses, counters = at_least_k(xs, k, alloc)
    for (i, j), var in sorted(counters.s.items()):
        vm.bind(("s", i, j), var)
    f.ensure_vars(alloc.num_allocated)
    f.add_clauses(counter_clauses)
    return f, vm


def _decode_clique(g: Graph, vm: VarMap, model) -> tuple[int, ...]:
    return tuple(v for v in range(1, g.n + 1) if model[vm.id(("x", v))])


def is_clique(g: Graph, vertices: tuple[int, ...]) -> bool:
    """Independent adjacency check."""
    return all(g.adjacent(u, v) for u, v in combinations(vertices, 2))


def max_clique(g: Graph, time_budget: float | None = None) -> CliqueResult:
    """Incremental-k maximum clique.

    Structureless cases are settled combinatorially: an empty graph yields
    the empty clique, an edgeless graph a single vertex, and a triangle-free
    graph (k=3 unsatisfiable) a single edge.
    """
    if g.n == 0:
        return CliqueResult((), 0, ())
    if not g.edges:
        return CliqueResult((1,), 1, ())

    deadline = time.monotonic() + time_budget if time_budget is not None else None
    iterations: list[tuple[int, bool]] = []
    best: tuple[int, ...] = min(g.edges)
    k = 3
    while k <= g.n + 1:
        opts = None
        if deadline is not None:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                return CliqueResult(best, len(best), tuple(iterations), complete=False)
            opts = SolverOptions(time_budget=remaining)
        if k > g.n:
            iterations.append((k, False))
            break
        f, vm = encode_k_clique(g, k)
        res = solve(f, opts)
        if res.status is Status.UNKNOWN:
            return CliqueResult(best, len(best), tuple(iterations), complete=False)
        sat = res.status is Status.SAT
        iterations.append((k, sat))
        if not sat:
            break
        found = _decode_clique(g, vm, res.model)
        if not is_clique(g, found) or len(found) < k:
            raise AssertionError(f"solver returned a non-clique for k={k}")
        best = found
        k += 1
    return CliqueResult(best, len(best), tuple(iterations))


def naive_k_clique_reference(g: Graph, k: int) -> bool:
    """Satisfiability of the disjunction-over-subsets formulation.

    Exponentially large; only usable as a differential-testing oracle, so
    graphs beyond 16 vertices are refused.
    """
    if g.n > 16:
        raise ValueError("naive reference is limited to 16 vertices")
    if not 1 <= k <= g.n:
        raise ValueError(f"k must be within 1..{g.n}")
    xs = {v: Var(f"x{v:02d}") for v in range(1, g.n + 1)}
    parts = []
    for u, v in combinations(range(1, g.n + 1), 2):
        if (u, v) not in g.edges:
            parts.append(Or(Not(xs[u]), Not(xs[v])))
    subsets = [
        And(*[xs[v] for v in S]) if len(S) > 1 else xs[S[0]]
        for S in combinations(range(1, g.n + 1), k)
    ]
    parts.append(Or(*subsets) if len(subsets) > 1 else subsets[0])
    expr = And(*parts) if len(parts) > 1 else parts[0]
    out = tseitin_cnf(expr)
    return solve(out.formula).status is Status.SAT


@dataclass(frozen=True)
class BenchRow:
    name: str
    vertices: int
    edges: int
    clique_size: int
    iterations: int
    seconds: float
    complete: bool


def run_benchmark(
    instances: list[tuple[str, Graph]], time_budget: float | None = None
) -> list[BenchRow]:
    rows = []
    for name, g in instances:
        t0 = time.monotonic()
        result = max_clique(g, time_budget=time_budget)
        rows.append(
            BenchRow(
                name=name,
                vertices=g.n,
                edges=g.num_edges,
                clique_size=result.size,
                iterations=len(result.iterations),
                seconds=time.monotonic() - t0,
                complete=result.complete,
            )
        )
    return rows


def format_bench_tsv(rows: list[BenchRow]) -> str:
    lines = ["name\tvertices\tedges\tclique_size\titerations\tseconds"]
    for r in rows:
        size = str(r.clique_size) if r.complete else f">={r.clique_size}"
        lines.append(
            f"{r.name}\t{r.vertices}\t{r.edges}\t{size}\t{r.iterations}\t{r.seconds:.2f}"
        )
    return "\n".join(lines) + "\n"
