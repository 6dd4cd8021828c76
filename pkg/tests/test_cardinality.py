from math import comb

import pytest

from satkit.cardinality import at_least_k, exactly_one
from satkit.cnf import CnfFormula, VarAllocator
from satkit.solver import enumerate_models, solve


def build(n: int, k: int):
    alloc = VarAllocator()
    xs = [alloc.fresh() for _ in range(n)]
    clauses, counters = at_least_k(xs, k, alloc)
    f = CnfFormula(num_vars=alloc.num_allocated)
    f.add_clauses(clauses)
    return f, xs, counters


class TestAtLeastK:
    def test_golden_template_n3_k2(self):
        f, xs, cv = build(3, 2)
        s = cv.s
        expected = set()
        # boundaries
        for i in range(4):
            expected.add(frozenset({s[(i, 0)]}))
        for j in (1, 2):
            expected.add(frozenset({-s[(0, j)]}))
        # the four defining clauses per (i, j)
        for i in (1, 2, 3):
            xi = xs[i - 1]
            for j in (1, 2):
                expected.add(frozenset({-s[(i - 1, j)], s[(i, j)]}))
                expected.add(frozenset({-xi, -s[(i - 1, j - 1)], s[(i, j)]}))
                expected.add(frozenset({-s[(i, j)], s[(i - 1, j)], xi}))
                expected.add(frozenset({-s[(i, j)], s[(i - 1, j)], s[(i - 1, j - 1)]}))
        expected.add(frozenset({s[(3, 2)]}))
        got = {frozenset(c) for c in f.clauses}
        assert got == expected
        assert len(f.clauses) == len(expected)  # no duplicates collapse apart

    def test_n3_k2_projections(self):
        f, xs, _ = build(3, 2)
        models = enumerate_models(f, xs, 100)
        assert len(models) == 4
        for m in models:
            assert sum(m[x] for x in xs) >= 2

    def test_n_equals_k_forces_all_true(self):
        f, xs, _ = build(4, 4)
        models = enumerate_models(f, xs, 10)
        assert len(models) == 1
        assert all(models[0][x] for x in xs)

    def test_n5_k1_has_31_models(self):
        f, xs, _ = build(5, 1)
        assert len(enumerate_models(f, xs, 100)) == 31

    def test_binomial_sum_law(self):
        for n in range(1, 9):
            for k in range(1, n + 1):
                f, xs, _ = build(n, k)
                got = len(enumerate_models(f, xs, 1 << (n + 1)))
                assert got == sum(comb(n, j) for j in range(k, n + 1)), (n, k)

    def test_k_above_n_contradicts(self):
        alloc = VarAllocator()
        xs = [alloc.fresh() for _ in range(2)]
        clauses, _ = at_least_k(xs, 3, alloc)
        assert len(clauses) == 2
        f = CnfFormula(num_vars=alloc.num_allocated)
        f.add_clauses(clauses)
        assert solve(f).is_unsat

    def test_k_nonpositive_emits_nothing(self):
        alloc = VarAllocator()
        xs = [alloc.fresh() for _ in range(3)]
        clauses, counters = at_least_k(xs, 0, alloc)
        assert clauses == [] and counters.s == {}

    def test_boundary_units_present(self):
        f, xs, cv = build(4, 2)
        clause_set = {frozenset(c) for c in f.clauses}
        for i in range(5):
            assert frozenset({cv.s[(i, 0)]}) in clause_set
        for j in (1, 2):
            assert frozenset({-cv.s[(0, j)]}) in clause_set


class TestExactlyOne:
    def test_single_variable(self):
        assert exactly_one([4]) == [(4,)]

    def test_clause_shape(self):
        clauses = exactly_one([1, 2, 3])
        assert clauses[0] == (1, 2, 3)
        assert set(clauses[1:]) == {(-1, -2), (-1, -3), (-2, -3)}

    def test_three_projected_models(self):
        f = CnfFormula()
        f.add_clauses(exactly_one([1, 2, 3]))
        assert len(enumerate_models(f, [1, 2, 3], 10)) == 3

    def test_pair_is_xor(self):
        f = CnfFormula()
        f.add_clauses(exactly_one([1, 2]))
        models = enumerate_models(f, [1, 2], 10)
        assert {(m[1], m[2]) for m in models} == {(True, False), (False, True)}

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            exactly_one([])
