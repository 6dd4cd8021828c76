"""Independent reference implementations used to cross-check the toolkit.

Nothing here touches the CDCL engine: satisfiability is decided by truth
tables or a plain recursive DPLL, puzzles by backtracking or exhaustive
enumeration.  Slow on purpose; only run at desk scale.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from satkit.cnf import CnfFormula

# ---------------------------------------------------------------------------
# SAT
# ---------------------------------------------------------------------------


def truth_table_sat(formula: CnfFormula) -> bool:
    """Exhaustive check over all assignments; fine up to ~14 variables."""
    n = formula.num_vars
    clauses = formula.clauses
    for bits in range(1 << n):
        ok = True
        for clause in clauses:
            sat = False
            for lit in clause:
                if ((bits >> (abs(lit) - 1)) & 1) == (1 if lit > 0 else 0):
                    sat = True
                    break
            if not sat:
                ok = False
                break
        if ok:
            return True
    return False


def dpll_sat(formula: CnfFormula) -> bool:
    """Plain recursive DPLL with unit propagation; no learning, no heuristics
    beyond first-unassigned branching."""

    def simplify(clauses: list[tuple[int, ...]], lit: int):
        out = []
        for c in clauses:
            if lit in c:
                continue
            if -lit in c:
                c = tuple(l for l in c if l != -lit)
                if not c:
                    return None
            out.append(c)
        return out

    def rec(clauses: list[tuple[int, ...]]) -> bool:
        while True:
            unit = next((c[0] for c in clauses if len(c) == 1), None)
            if unit is None:
                break
            clauses = simplify(clauses, unit)
            if clauses is None:
                return False
        if not clauses:
            return True
        lit = clauses[0][0]
        for choice in (lit, -lit):
            reduced = simplify(clauses, choice)
            if reduced is not None and rec(reduced):
                return True
        return False

    if any(not c for c in formula.clauses):
        return False
    return rec(list(formula.clauses))


# ---------------------------------------------------------------------------
# Queens
# ---------------------------------------------------------------------------


def queens_solutions(n: int) -> list[tuple[int, ...]]:
    """All n-queens solutions as column-per-row tuples, by permutation scan."""
    out = []
    for perm in permutations(range(n)):
        if all(
            abs(perm[a] - perm[b]) != b - a
            for a in range(n)
            for b in range(a + 1, n)
        ):
            out.append(perm)
    return out


# ---------------------------------------------------------------------------
# Sudoku
# ---------------------------------------------------------------------------


def count_sudoku_solutions(cells: list[list[int]], limit: int = 2) -> int:
    """Backtracking solution counter; cells use 0 for blanks.  Stops at
    `limit`.  Chooses the most constrained cell first."""
    rows = [set() for _ in range(9)]
    cols = [set() for _ in range(9)]
    boxes = [set() for _ in range(9)]
    for r in range(9):
        for c in range(9):
            d = cells[r][c]
            if d:
                rows[r].add(d)
                cols[c].add(d)
                boxes[3 * (r // 3) + c // 3].add(d)

    count = 0

    def rec() -> bool:
        nonlocal count
        best = None
        best_opts = None
        for r in range(9):
            for c in range(9):
                if cells[r][c]:
                    continue
                b = 3 * (r // 3) + c // 3
                opts = [
                    d
                    for d in range(1, 10)
                    if d not in rows[r] and d not in cols[c] and d not in boxes[b]
                ]
                if best is None or len(opts) < len(best_opts):
                    best, best_opts = (r, c), opts
                    if not opts:
                        return False
                    if len(opts) == 1:
                        break
            else:
                continue
            break
        if best is None:
            count += 1
            return count >= limit
        r, c = best
        b = 3 * (r // 3) + c // 3
        for d in best_opts:
            cells[r][c] = d
            rows[r].add(d)
            cols[c].add(d)
            boxes[b].add(d)
            stop = rec()
            cells[r][c] = 0
            rows[r].remove(d)
            cols[c].remove(d)
            boxes[b].remove(d)
            if stop:
                return True
        return False

    rec()
    return count


def grid_to_cells(text: str) -> list[list[int]]:
    return [
        [0 if ch in ".0" else int(ch) for ch in text[9 * r : 9 * r + 9]]
        for r in range(9)
    ]


# ---------------------------------------------------------------------------
# Clique
# ---------------------------------------------------------------------------


def exhaustive_max_clique(n: int, edges: set[tuple[int, int]]) -> int:
    """Largest clique size by scanning all vertex subsets (n <= ~14)."""
    adj = [0] * (n + 1)
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best = 1 if n else 0
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        members = mask << 1  # vertex v occupies bit v
        ok = True
        m = mask
        while m:
            v = (m & -m).bit_length()
            if members & ~(adj[v] | (1 << v)):
                ok = False
                break
            m &= m - 1
        if ok:
            best = size
    return best


def is_k_clique_possible(n: int, edges: set[tuple[int, int]], k: int) -> bool:
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return any(
        all(b in adj[a] for a, b in combinations(subset, 2))
        for subset in combinations(range(1, n + 1), k)
    )


# ---------------------------------------------------------------------------
# Latin squares
# ---------------------------------------------------------------------------


def latin_squares(n: int, fix_first_row: bool, fix_first_col: bool):
    """All Latin squares of order n, optionally with first row/column fixed
    to 1..n; row-by-row backtracking over permutations."""

    def rec(rows: list[tuple[int, ...]]):
        if len(rows) == n:
            yield tuple(rows)
            return
        r = len(rows)
        for perm in permutations(range(1, n + 1)):
            if fix_first_col and perm[0] != r + 1:
                continue
            if all(all(rows[p][c] != perm[c] for p in range(r)) for c in range(n)):
                rows.append(perm)
                yield from rec(rows)
                rows.pop()

    first = [tuple(range(1, n + 1))] if fix_first_row else [
        p for p in permutations(range(1, n + 1))
    ]
    for f in first:
        if fix_first_col and f[0] != 1:
            continue
        yield from rec([f])


def orthogonal_pair_exists(n: int) -> bool:
    """Brute force over the symmetry-broken class: A with first row and
    column 1..n, B with first row 1..n."""
    bs = list(latin_squares(n, fix_first_row=True, fix_first_col=False))
    for a in latin_squares(n, fix_first_row=True, fix_first_col=True):
        for b in bs:
            pairs = {(a[i][j], b[i][j]) for i in range(n) for j in range(n)}
            if len(pairs) == n * n:
                return True
    return False


# ---------------------------------------------------------------------------
# Sliding tile (3x3 only): breadth-first search over the full state space
# ---------------------------------------------------------------------------

_BFS_CACHE: dict[int, dict[tuple[int, ...], int]] = {}


def bfs_distances(size: int = 3) -> dict[tuple[int, ...], int]:
    """Distance-to-goal for every reachable 8-puzzle state (blank = size^2)."""
    if size in _BFS_CACHE:
        return _BFS_CACHE[size]
    if size != 3:
        raise ValueError("exhaustive BFS is only feasible for the 3x3 board")
    goal = tuple(range(1, 10))
    dist = {goal: 0}
    frontier = [goal]
    while frontier:
        nxt = []
        for state in frontier:
            d = dist[state]
            blank = state.index(9)
            r, c = divmod(blank, 3)
            for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nr, nc = r + dr, c + dc
                if not (0 <= nr < 3 and 0 <= nc < 3):
                    continue
                src = 3 * nr + nc
                new = list(state)
                new[blank], new[src] = new[src], new[blank]
                t = tuple(new)
                if t not in dist:
                    dist[t] = d + 1
                    nxt.append(t)
        frontier = nxt
    _BFS_CACHE[size] = dist
    return dist
