import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satkit.cnf import (
    CnfFormula,
    DimacsError,
    Model,
    TautologyError,
    VarAllocator,
    VarMap,
    blocking_clause,
    eval_cnf,
    make_clause,
    parse_dimacs,
    write_dimacs,
)


class TestClause:
    def test_duplicates_normalized_out(self):
        assert make_clause([1, 2, 1, 2]) == (1, 2)

    def test_order_preserved(self):
        assert make_clause([3, -1, 2]) == (3, -1, 2)

    def test_tautology_rejected(self):
        with pytest.raises(TautologyError):
            make_clause([1, -1])

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            make_clause([1, 0])


class TestDimacs:
    def test_minimal_instance(self):
        f = parse_dimacs("p cnf 2 2\n1 -2 0\n2 0\n")
        assert f.num_vars == 2
        assert f.clauses == [(1, -2), (2,)]

    def test_roundtrip_canonical(self):
        text = "p cnf 1 1\n1 0"
        assert write_dimacs(parse_dimacs(text)) == "p cnf 1 1\n1 0\n"

    def test_empty_clause_list(self):
        f = CnfFormula(num_vars=3)
        assert write_dimacs(f) == "p cnf 3 0\n"

    def test_comments_and_blank_lines(self):
        f = parse_dimacs("c hi\n\np cnf 1 1\nc mid\n1 0\n")
        assert f.clauses == [(1,)]

    def test_clause_spanning_lines(self):
        f = parse_dimacs("p cnf 3 1\n1 2\n3 0\n")
        assert f.clauses == [(1, 2, 3)]

    def test_malformed_header(self):
        with pytest.raises(DimacsError, match="line 1"):
            parse_dimacs("p cnf x 1\n1 0\n")

    def test_literal_exceeds_declared(self):
        with pytest.raises(DimacsError, match="exceeds"):
            parse_dimacs("p cnf 1 1\n2 0\n")

    def test_missing_terminator(self):
        with pytest.raises(DimacsError, match="not terminated"):
            parse_dimacs("p cnf 2 1\n1 2\n")

    def test_clause_before_header(self):
        with pytest.raises(DimacsError, match="before header"):
            parse_dimacs("1 0\np cnf 1 1\n")

    def test_clause_count_mismatch(self):
        with pytest.raises(DimacsError, match="declares"):
            parse_dimacs("p cnf 1 2\n1 0\n")

    @given(
        st.integers(1, 12).flatmap(
            lambda n: st.lists(
                st.lists(
                    st.integers(1, n).map(lambda v: v)
                    | st.integers(1, n).map(lambda v: -v),
                    min_size=1,
                    max_size=5,
                ),
                max_size=30,
            ).map(lambda cls: (n, cls))
        )
    )
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_property(self, case):
        n, clause_lists = case
        f = CnfFormula(num_vars=n)
        for lits in clause_lists:
            try:
                f.add_clause(lits)
            except TautologyError:
                pass
        assert parse_dimacs(write_dimacs(f)) == f


class TestVarMap:
    def test_bijective(self):
        alloc = VarAllocator()
        vm = VarMap()
        ids = [vm.add(("k", i), alloc) for i in range(10)]
        assert ids == list(range(1, 11))
        for i, v in enumerate(ids):
            assert vm.id(("k", i)) == v
            assert vm.key(v) == ("k", i)

    def test_duplicate_key_rejected(self):
        alloc = VarAllocator()
        vm = VarMap()
        vm.add("a", alloc)
        with pytest.raises(ValueError):
            vm.add("a", alloc)

    def test_bind_existing_id(self):
        vm = VarMap()
        vm.bind("x", 5)
        assert vm.id("x") == 5 and vm.key(5) == "x"
        with pytest.raises(ValueError):
            vm.bind("y", 5)


class TestModelAndBlocking:
    def test_blocking_clause_definition(self):
        m = Model([False, True, False])
        assert blocking_clause(m, [1, 2]) == (-1, 2)

    def test_blocking_clause_false_under_model(self):
        m = Model([False, True, False, True])
        clause = blocking_clause(m, [1, 2, 3])
        assert not any(m.lit_true(lit) for lit in clause)

    def test_blocking_clause_true_when_scope_differs(self):
        m = Model([False, True, False])
        clause = blocking_clause(m, [1, 2])
        flipped = Model([False, False, False])
        assert any(flipped.lit_true(lit) for lit in clause)

    def test_empty_scope_rejected(self):
        with pytest.raises(ValueError):
            blocking_clause(Model([False, True]), [])

    def test_eval_cnf(self):
        f = CnfFormula(num_vars=2)
        assert eval_cnf(f, Model([False, False, False]))  # empty formula
        f.add_clause([1])
        assert not eval_cnf(f, Model([False, False, False]))
        assert eval_cnf(f, Model([False, True, False]))
