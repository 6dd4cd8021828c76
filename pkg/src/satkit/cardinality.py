"""Cardinality encodings shared by the puzzle encoders.

`exactly_one` is the pairwise encoding: one wide at-least-one clause plus a
binary exclusion per pair.  `at_least_k` is the sequential counter: auxiliary
variables s(i,j) meaning "at least j of the first i inputs are true", with
boundary rows fixed by unit clauses rather than constant folding so the
emitted clause set matches the counter's textbook template exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .cnf import Clause, VarAllocator, make_clause


@dataclass
class CounterVars:
    """Counter grid s[(i, j)] -> var id, for 0 <= i <= n and 0 <= j <= k."""

    n: int
    k: int
    s: dict[tuple[int, int], int]

    def var(self, i: int, j: int) -> int:
        return self.s[(i, j)]


def exactly_one(xs: Sequence[int]) -> list[Clause]:
    """One of xs is true: the wide clause plus pairwise exclusions."""
    if not xs:
        raise ValueError("exactly_one needs at least one variable")
    clauses = [make_clause(xs)]
    for a, b in combinations(xs, 2):
        clauses.append(make_clause((-a, -b)))
    return clauses


def at_least_k(
    xs: Sequence[int], k: int, alloc: VarAllocator
) -> tuple[list[Clause], CounterVars]:
    """Sequential counter forcing at least k of xs true.

    Emits, for each 1<=i<=n and 1<=j<=k, the four clauses defining
    s(i,j) <-> (s(i-1,j) or (x_i and s(i-1,j-1))), the boundary units
    (s(0,j) false, s(i,0) true), and the final unit s(n,k).

    k <= 0 emits nothing; k > n emits a single contradicting unit pair.
    """
    n = len(xs)
    if k <= 0:
        return [], CounterVars(n, 0, {})
    if k > n:
        marker = alloc.fresh()
        return [make_clause((marker,)), make_clause((-marker,))], CounterVars(
            n, k, {}
        )

    s: dict[tuple[int, int], int] = {}
    for i in range(n + 1):
        for j in range(k + 1):
            s[(i, j)] = alloc.fresh()

    clauses: list[Clause] = []
    for i in range(n + 1):
        clauses.append(make_clause((s[(i, 0)],)))
    for j in range(1, k + 1):
        clauses.append(make_clause((-s[(0, j)],)))
    for i in range(1, n + 1):
        xi = xs[i - 1]
        for j in range(1, k + 1):
            clauses.append(make_clause((-s[(i - 1, j)], s[(i, j)])))
            clauses.append(make_clause((-xi, -s[(i - 1, j - 1)], s[(i, j)])))
            clauses.append(make_clause((-s[(i, j)], s[(i - 1, j)], xi)))
            clauses.append(
                make_clause((-s[(i, j)], s[(i - 1, j)], s[(i - 1, j - 1)]))
            )
    clauses.append(make_clause((s[(n, k)],)))
    return clauses, CounterVars(n, k, s)
