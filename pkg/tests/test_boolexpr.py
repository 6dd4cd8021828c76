from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import truth_table_sat
from satkit.boolexpr import (
    And,
    ExprSyntaxError,
    Iff,
    Implies,
    Nand,
    Nor,
    Not,
    Or,
    UnboundVariableError,
    Var,
    Xor,
    evaluate,
    is_cnf,
    normalize_cnf,
    parse_expr,
    to_text,
    tseitin_cnf,
    variables,
)
from satkit.cnf import VarAllocator, eval_cnf
from satkit.solver import Status, solve

NAMES = ["a", "b", "c", "d", "e", "f"]


@st.composite
def exprs(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return Var(draw(st.sampled_from(NAMES)))
    op = draw(
        st.sampled_from(["and", "or", "not", "xor", "nand", "nor", "implies", "iff"])
    )
    if op == "not":
        return Not(draw(exprs(depth=depth - 1)))
    if op in ("implies", "iff"):
        cls = Implies if op == "implies" else Iff
        return cls(draw(exprs(depth=depth - 1)), draw(exprs(depth=depth - 1)))
    cls = {"and": And, "or": Or, "xor": Xor, "nand": Nand, "nor": Nor}[op]
    children = draw(st.lists(exprs(depth=depth - 1), min_size=1, max_size=3))
    return cls(*children)


def all_assignments(names):
    for bits in product([False, True], repeat=len(names)):
        yield dict(zip(names, bits))


class TestEvaluate:
    def test_xor_odd_count(self):
        e = Xor(Var("x1"), Var("x2"), Var("x3"))
        assert evaluate(e, {"x1": True, "x2": False, "x3": False}) is True
        assert evaluate(e, {"x1": True, "x2": True, "x3": False}) is False
        assert evaluate(e, {"x1": True, "x2": True, "x3": True}) is True

    def test_implies_vacuous(self):
        assert evaluate(Implies(Var("x"), Var("y")), {"x": False, "y": False}) is True

    def test_nor_all_false(self):
        assert evaluate(Nor(Var("x1"), Var("x2")), {"x1": False, "x2": False}) is True
        assert evaluate(Nor(Var("x1"), Var("x2")), {"x1": True, "x2": False}) is False

    def test_nand_one_false(self):
        assert evaluate(Nand(Var("a"), Var("b")), {"a": True, "b": False}) is True
        assert evaluate(Nand(Var("a"), Var("b")), {"a": True, "b": True}) is False

    def test_unbound_variable_named(self):
        with pytest.raises(UnboundVariableError) as exc:
            evaluate(And(Var("p"), Var("q")), {"p": True})
        assert exc.value.name == "q"

    def test_arity_validation(self):
        with pytest.raises(ValueError):
            And()
        with pytest.raises(ValueError):
            Var("")


class TestNormalize:
    def test_xor_clause_count_law(self):
        for n in range(2, 11):
            e = Xor(*[Var(f"x{i}") for i in range(n)])
            cnf = normalize_cnf(e)
            assert isinstance(cnf, And)
            assert len(cnf.children) == 2 ** (n - 1)

    def test_single_literal_unchanged(self):
        assert normalize_cnf(Var("x")) == Var("x")
        assert normalize_cnf(Not(Var("x"))) == Not(Var("x"))

    def test_implies_becomes_clause(self):
        assert normalize_cnf(Implies(Var("x"), Var("y"))) == Or(Not(Var("x")), Var("y"))

    def test_output_is_cnf(self):
        e = Iff(Xor(Var("a"), Var("b")), Nand(Var("c"), Var("a")))
        assert is_cnf(normalize_cnf(e))

    @given(exprs())
    @settings(max_examples=150, deadline=None)
    def test_equivalence_exhaustive(self, e):
        cnf = normalize_cnf(e)
        assert is_cnf(cnf)
        names = sorted(set(variables(e)) | set(variables(cnf)))
        for assignment in all_assignments(names):
            assert evaluate(e, assignment) == evaluate(cnf, assignment)


class TestTseitin:
    def test_xor_pair_golden(self):
        out = tseitin_cnf(Xor(Var("x1"), Var("x2")))
        assert out.input_vars == {"x1": 1, "x2": 2}
        assert out.root_literal == 3
        assert out.formula.clauses == [
            (-1, 2, 3),
            (1, -2, 3),
            (1, 2, -3),
            (-1, -2, -3),
            (3,),
        ]

    def test_atomic_input_unit_only(self):
        out = tseitin_cnf(Var("x"))
        assert out.formula.clauses == [(1,)]
        assert out.definitions == {}

    def test_fresh_ids_above_inputs(self):
        e = And(Or(Var("p"), Var("q")), Not(And(Var("q"), Var("r"))))
        out = tseitin_cnf(e)
        assert min(out.definitions) > max(out.input_vars.values())

    def test_linear_growth_in_xor_width(self):
        counts = []
        for n in range(2, 12):
            out = tseitin_cnf(Xor(*[Var(f"x{i:02d}") for i in range(n)]))
            counts.append(len(out.formula.clauses))
        diffs = {counts[i + 1] - counts[i] for i in range(1, len(counts) - 1)}
        assert len(diffs) == 1

    def test_preallocated_inputs_respected(self):
        alloc = VarAllocator()
        ids = {"x": alloc.fresh(), "y": alloc.fresh()}
        out = tseitin_cnf(Or(Var("y"), Var("x")), alloc=alloc, input_vars=ids)
        assert out.input_vars == {"y": 2, "x": 1}
        assert min(out.definitions) == 3

    def test_missing_preallocated_input_raises(self):
        alloc = VarAllocator()
        with pytest.raises(UnboundVariableError):
            tseitin_cnf(Var("z"), alloc=alloc, input_vars={"x": 1})

    @given(exprs())
    @settings(max_examples=150, deadline=None)
    def test_equisatisfiable_and_projectable(self, e):
        out = tseitin_cnf(e)
        res = solve(out.formula)
        brute = truth_table_sat_expr(e)
        assert (res.status is Status.SAT) == brute
        if res.is_sat:
            assert eval_cnf(out.formula, res.model)
            projected = {name: res.model[v] for name, v in out.input_vars.items()}
            assert evaluate(e, projected)


def truth_table_sat_expr(e) -> bool:
    names = variables(e)
    return any(evaluate(e, a) for a in all_assignments(names))


class TestParser:
    def test_round_trip(self):
        text = "&and(x, &not(y), &xor(a, b, c), &implies(p, q))"
        e = parse_expr(text)
        assert parse_expr(to_text(e)) == e

    def test_operators(self):
        assert parse_expr("&nor(a, b)") == Nor(Var("a"), Var("b"))
        assert parse_expr("&iff(a, b)") == Iff(Var("a"), Var("b"))
        assert parse_expr("x") == Var("x")

    def test_unknown_operator(self):
        with pytest.raises(ExprSyntaxError):
            parse_expr("&foo(a)")

    def test_arity_errors(self):
        with pytest.raises(ExprSyntaxError):
            parse_expr("&not(a, b)")
        with pytest.raises(ExprSyntaxError):
            parse_expr("&implies(a)")

    def test_trailing_garbage(self):
        with pytest.raises(ExprSyntaxError):
            parse_expr("a b")

    def test_solves_with_tseitin(self):
        out = tseitin_cnf(parse_expr("&and(x, &not(x))"))
        assert solve(out.formula).is_unsat
