import random

import pytest

from oracles import dpll_sat, truth_table_sat
from satkit.cnf import CnfFormula, eval_cnf
from satkit.solver import (
    BudgetExhaustedError,
    SolverOptions,
    Status,
    enumerate_models,
    solve,
)


def random_cnf(rng: random.Random, n: int, m: int, width: int = 3) -> CnfFormula:
    f = CnfFormula(num_vars=n)
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), min(width, n))
        f.clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return f


class TestBasics:
    def test_direct_contradiction(self):
        f = CnfFormula()
        f.add_clause([1])
        f.add_clause([-1])
        assert solve(f).is_unsat

    def test_no_clauses_total_model(self):
        f = CnfFormula(num_vars=3)
        res = solve(f)
        assert res.is_sat
        assert res.model.num_vars == 3

    def test_empty_clause_is_unsat(self):
        f = CnfFormula(num_vars=1)
        f.clauses.append(())
        assert solve(f).is_unsat

    def test_invalid_options(self):
        with pytest.raises(ValueError):
            SolverOptions(conflict_budget=0)
        with pytest.raises(ValueError):
            SolverOptions(time_budget=-1)

    def test_assumption_validation(self):
        f = CnfFormula(num_vars=2)
        with pytest.raises(ValueError):
            solve(f, assumptions=[3])

    def test_assumptions_respected(self):
        f = CnfFormula(num_vars=2)
        f.add_clause([1, 2])
        res = solve(f, assumptions=[-1])
        assert res.is_sat and res.model[2] and not res.model[1]
        res = solve(f, assumptions=[-1, -2])
        assert res.is_unsat

    def test_conflict_budget_unknown(self):
        rng = random.Random(0)
        f = random_cnf(rng, 60, 258)
        res = solve(f, SolverOptions(conflict_budget=1))
        if res.status is Status.UNKNOWN:
            assert res.reason == "conflict-budget"
        # tiny instances may finish before the first conflict; that is fine


class TestOracleAgreement:
    def test_thousand_random_formulas(self):
        rng = random.Random(12345)
        sat_seen = unsat_seen = 0
        for trial in range(1000):
            n = rng.randint(3, 16)
            m = int(n * rng.uniform(2.0, 6.0))
            f = random_cnf(rng, n, m)
            res = solve(f)
            want = dpll_sat(f) if n > 11 else truth_table_sat(f)
            assert (res.status is Status.SAT) == want, f"trial {trial}"
            if res.is_sat:
                sat_seen += 1
                assert eval_cnf(f, res.model)
            else:
                unsat_seen += 1
        assert sat_seen > 100 and unsat_seen > 100

    def test_dpll_agrees_with_truth_table(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(2, 10)
            f = random_cnf(rng, n, int(n * rng.uniform(2.0, 6.0)))
            assert dpll_sat(f) == truth_table_sat(f)


class TestDeterminism:
    def test_identical_runs_identical_models(self):
        rng = random.Random(9)
        for seed in (0, 1, 2):
            f = random_cnf(rng, 30, 100)
            opts = SolverOptions(random_seed=seed, rnd_init_act=seed > 0)
            r1 = solve(f, opts)
            r2 = solve(f, opts)
            assert r1.status == r2.status
            assert r1.model == r2.model

    def test_seed_sensitivity_on_empty_sudoku(self):
        from satkit.sudoku import EMPTY_GRID, encode_sudoku

        f, vm = encode_sudoku(EMPTY_GRID)
        models = set()
        for seed in range(10):
            res = solve(f, SolverOptions(random_seed=seed, rnd_init_act=True))
            assert res.is_sat
            models.add(tuple(res.model.true_vars()))
        assert len(models) >= 2


class TestEnumerate:
    def test_three_models_of_binary_clause(self):
        f = CnfFormula()
        f.add_clause([1, 2])
        models = enumerate_models(f, [1, 2], 10)
        assert len(models) == 3
        projections = {(m[1], m[2]) for m in models}
        assert projections == {(True, True), (True, False), (False, True)}

    def test_unsat_gives_empty(self):
        f = CnfFormula()
        f.add_clause([1])
        f.add_clause([-1])
        assert enumerate_models(f, [1], 5) == []

    def test_limit_respected(self):
        f = CnfFormula(num_vars=4)
        assert len(enumerate_models(f, [1, 2, 3, 4], 7)) == 7

    def test_scope_projection_distinct(self):
        f = CnfFormula(num_vars=3)
        models = enumerate_models(f, [1], 10)
        assert len(models) == 2

    def test_empty_scope_rejected(self):
        with pytest.raises(ValueError):
            enumerate_models(CnfFormula(num_vars=1), [], 1)

    def test_budget_exhaustion_raises(self):
        rng = random.Random(4)
        f = random_cnf(rng, 50, 180)
        if solve(f).is_sat:
            with pytest.raises(BudgetExhaustedError):
                enumerate_models(
                    f, list(range(1, 51)), 1 << 30, SolverOptions(conflict_budget=1)
                )


class TestSoundnessSpotChecks:
    def test_pigeonhole_unsat(self):
        # 5 pigeons, 4 holes
        f = CnfFormula(num_vars=20)
        var = lambda p, h: 4 * p + h + 1
        for p in range(5):
            f.add_clause([var(p, h) for h in range(4)])
        for h in range(4):
            for p1 in range(5):
                for p2 in range(p1 + 1, 5):
                    f.add_clause([-var(p1, h), -var(p2, h)])
        assert solve(f).is_unsat

    def test_php_with_assumptions_still_unsat(self):
        f = CnfFormula(num_vars=6)
        var = lambda p, h: 2 * p + h + 1
        for p in range(3):
            f.add_clause([var(p, h) for h in range(2)])
        for h in range(2):
            for p1 in range(3):
                for p2 in range(p1 + 1, 3):
                    f.add_clause([-var(p1, h), -var(p2, h)])
        assert solve(f, assumptions=[1]).is_unsat
