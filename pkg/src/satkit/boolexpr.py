"""Boolean expression trees and their conversions to CNF.

Two conversion routes are provided.  `normalize_cnf` produces a logically
equivalent CNF expression by rewriting connectives and distributing; it can
blow up exponentially (an n-ary xor yields 2^(n-1) clauses).  `tseitin_cnf`
produces an equisatisfiable `CnfFormula` of linear size by naming each
non-literal subexpression with a fresh variable and asserting the root.

Expressions are immutable and compare structurally, so they are safe to share
between threads and usable as dictionary keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cnf import CnfFormula, Lit, TautologyError, VarAllocator


class UnboundVariableError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"variable {self.name!r} is not bound by the assignment"


class BoolExpr:
    """Base class for expression nodes; subclasses are immutable."""

    __slots__ = ()

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BoolExpr) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return to_text(self)


class Var(BoolExpr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not name:
            raise ValueError("variable names must be non-empty")
        self.name = name

    def _key(self) -> tuple:
        return ("var", self.name)


class Not(BoolExpr):
    __slots__ = ("child",)

    def __init__(self, child: BoolExpr):
        self.child = child

    def _key(self) -> tuple:
        return ("not", self.child._key())


class _Nary(BoolExpr):
    __slots__ = ("children",)
    op = ""

    def __init__(self, *children: BoolExpr):
        if not children:
            raise ValueError(f"{self.op} requires at least one operand")
        self.children = tuple(children)

    def _key(self) -> tuple:
        return (self.op,) + tuple(c._key() for c in self.children)


class And(_Nary):
    __slots__ = ()
    op = "and"


class Or(_Nary):
    __slots__ = ()
    op = "or"


class Xor(_Nary):
    __slots__ = ()
    op = "xor"


class Nand(_Nary):
    __slots__ = ()
    op = "nand"


class Nor(_Nary):
    __slots__ = ()
    op = "nor"


class _Binary(BoolExpr):
    __slots__ = ("left", "right")
    op = ""

    def __init__(self, left: BoolExpr, right: BoolExpr):
        self.left = left
        self.right = right

    def _key(self) -> tuple:
        return (self.op, self.left._key(), self.right._key())


class Implies(_Binary):
    __slots__ = ()
    op = "implies"


class Iff(_Binary):
    __slots__ = ()
    op = "iff"


def variables(expr: BoolExpr) -> list[str]:
    """Variable names occurring in expr, in first-occurrence order."""
    out: list[str] = []
    seen: set[str] = set()
    stack = [expr]
    while stack:
        e = stack.pop()
        if isinstance(e, Var):
            if e.name not in seen:
                seen.add(e.name)
                out.append(e.name)
        elif isinstance(e, Not):
            stack.append(e.child)
        elif isinstance(e, _Binary):
            stack.append(e.right)
            stack.append(e.left)
        else:
            assert isinstance(e, _Nary)
            stack.extend(reversed(e.children))
    return out


def evaluate(expr: BoolExpr, assignment: Mapping[str, bool]) -> bool:
    """Evaluate under standard semantics.  Implies(x,y) is not-x-or-y."""
    if isinstance(expr, Var):
        try:
            return bool(assignment[expr.name])
        except KeyError:
            raise UnboundVariableError(expr.name) from None
    if isinstance(expr, Not):
        return not evaluate(expr.child, assignment)
    if isinstance(expr, And):
        return all(evaluate(c, assignment) for c in expr.children)
    if isinstance(expr, Or):
        return any(evaluate(c, assignment) for c in expr.children)
    if isinstance(expr, Xor):
        return sum(evaluate(c, assignment) for c in expr.children) % 2 == 1
    if isinstance(expr, Nand):
        return not all(evaluate(c, assignment) for c in expr.children)
    if isinstance(expr, Nor):
        return not any(evaluate(c, assignment) for c in expr.children)
    if isinstance(expr, Implies):
        return (not evaluate(expr.left, assignment)) or evaluate(expr.right, assignment)
    if isinstance(expr, Iff):
        return evaluate(expr.left, assignment) == evaluate(expr.right, assignment)
    raise TypeError(f"unknown node {expr!r}")


# ---------------------------------------------------------------------------
# Equivalence-preserving CNF (may be exponentially larger than the input).
# ---------------------------------------------------------------------------

# internal literal: (name, negated)
_NLit = tuple[str, bool]


def _cnf_sets(expr: BoolExpr, negated: bool) -> list[frozenset[_NLit]]:
    """CNF of expr (or its negation) as a list of clauses over (name, neg).

    Implication/biconditional elimination, De Morgan push-down, and
    distribution of Or over And happen here.  Identical clauses are merged
    and tautological clauses dropped, but no subsumption is performed, which
    keeps the 2^(n-1) xor clause-count law exact.
    """
    if isinstance(expr, Var):
        return [frozenset([(expr.name, negated)])]
    if isinstance(expr, Not):
        return _cnf_sets(expr.child, not negated)
    if isinstance(expr, Nand):
        return _cnf_sets(And(*expr.children), not negated)
    if isinstance(expr, Nor):
        return _cnf_sets(Or(*expr.children), not negated)
    if isinstance(expr, Implies):
        return _cnf_sets(Or(Not(expr.left), expr.right), negated)
    if isinstance(expr, Iff):
        a, b = expr.left, expr.right
        # a<->b == (a->b) & (b->a); negated via xor below
        if not negated:
            return _cnf_sets(And(Or(Not(a), b), Or(Not(b), a)), False)
        return _cnf_sets(Xor(a, b), False)
    if isinstance(expr, Xor):
        children = expr.children
        if len(children) == 1:
            return _cnf_sets(children[0], negated)
        # fold pairwise: xor(a,b) == (a|b) & (~a|~b); xnor handled by `negated`
        acc: BoolExpr = children[0]
        for c in children[1:]:
            acc = And(Or(acc, c), Or(Not(acc), Not(c)))
        return _cnf_sets(acc, negated)

    assert isinstance(expr, (And, Or))
    conjunctive = isinstance(expr, And) == (not negated)  # De Morgan flip
    if conjunctive:
        out: list[frozenset[_NLit]] = []
        seen: set[frozenset[_NLit]] = set()
        for c in expr.children:
            for clause in _cnf_sets(c, negated):
                if clause not in seen:
                    seen.add(clause)
                    out.append(clause)
        return out
    # disjunctive: distribute Or over the children's CNFs
    acc_clauses: list[frozenset[_NLit]] = [frozenset()]
    for c in expr.children:
        child_clauses = _cnf_sets(c, negated)
        merged: list[frozenset[_NLit]] = []
        seen = set()
        for left in acc_clauses:
            for right in child_clauses:
                u = left | right
                if any((name, not neg) in u for name, neg in right):
                    continue  # tautology
                if u not in seen:
                    seen.add(u)
                    merged.append(u)
        acc_clauses = merged
    return acc_clauses


def normalize_cnf(expr: BoolExpr) -> BoolExpr:
    """Logically equivalent CNF expression (And of Or of literals).

    Warning: worst-case exponential in the input size; xor over n variables
    produces exactly 2^(n-1) clauses.  Use `tseitin_cnf` for large inputs.
    """
    clauses = _cnf_sets(expr, False)
    # deterministic order: sort literals by (name, negated), clauses lexicographically
    sorted_clauses = sorted(
        (sorted(c) for c in clauses),
        key=lambda lits: (len(lits), lits),
    )

    def lit_expr(nl: _NLit) -> BoolExpr:
        name, neg = nl
        return Not(Var(name)) if neg else Var(name)

    def clause_expr(lits: list[_NLit]) -> BoolExpr:
        if len(lits) == 1:
            return lit_expr(lits[0])
        return Or(*[lit_expr(nl) for nl in lits])

    if not sorted_clauses:
        # only reachable through tautological inputs, e.g. Or(x, Not(x));
        # represent truth with a tautological clause over an input variable
        v = variables(expr)[0]
        return Or(Var(v), Not(Var(v)))
    if len(sorted_clauses) == 1:
        return clause_expr(sorted_clauses[0])
    return And(*[clause_expr(c) for c in sorted_clauses])


def is_cnf(expr: BoolExpr) -> bool:
    def is_literal(e: BoolExpr) -> bool:
        return isinstance(e, Var) or (isinstance(e, Not) and isinstance(e.child, Var))

    def is_clause(e: BoolExpr) -> bool:
        return is_literal(e) or (isinstance(e, Or) and all(is_literal(c) for c in e.children))

    return is_clause(expr) or (isinstance(expr, And) and all(is_clause(c) for c in expr.children))


# ---------------------------------------------------------------------------
# Tseitin transformation (linear size, equisatisfiable).
# ---------------------------------------------------------------------------


@dataclass
class TseitinOutput:
    formula: CnfFormula
    root_literal: Lit
    definitions: dict[int, BoolExpr] = field(default_factory=dict)
    input_vars: dict[str, int] = field(default_factory=dict)


def tseitin_cnf(
    expr: BoolExpr,
    alloc: VarAllocator | None = None,
    input_vars: Mapping[str, int] | None = None,
    formula: CnfFormula | None = None,
    assert_root: bool = True,
) -> TseitinOutput:
    """Equisatisfiable CNF via fresh definition variables.

    Every non-literal node receives one fresh variable with its full
    biconditional definition (no polarity optimization); n-ary xors are
    chained pairwise left-to-right.  Structurally identical subexpressions
    share one definition.  When `input_vars` is given it must already map
    every variable of `expr` (the caller reserved those ids); otherwise
    inputs are allocated here, sorted by name, before any fresh variable,
    so fresh ids are always greater than input ids.

    Encoders can pass a shared `formula` to accumulate clauses from several
    transformations; `assert_root=False` skips the root unit clause (used
    when the root is wired into a larger constraint by the caller).
    """
    if alloc is None:
        alloc = VarAllocator()
    out_formula = formula if formula is not None else CnfFormula()

    names = variables(expr)
    inputs: dict[str, int] = {}
    if input_vars is None:
        for name in sorted(names):
            inputs[name] = alloc.fresh()
    else:
        for name in names:
            if name not in input_vars:
                raise UnboundVariableError(name)
            inputs[name] = input_vars[name]

    definitions: dict[int, BoolExpr] = {}
    memo: dict[tuple, Lit] = {}
    # walk-level memo on object identity: shared subtrees (DAG-shaped
    # expressions) are traversed once; safe because `expr` keeps every node
    # alive for the duration of the call
    walked: dict[int, Lit] = {}

    def add(lits: list[Lit]) -> None:
        # degenerate nodes (e.g. a child and its negation under one connective)
        # yield tautological definition clauses; they impose nothing, skip them
        try:
            out_formula.add_clause(lits)
        except TautologyError:
            pass

    def define(key: tuple, node: BoolExpr, emit_clauses) -> Lit:
        got = memo.get(key)
        if got is not None:
            return got
        t = alloc.fresh()
        definitions[t] = node
        emit_clauses(t)
        memo[key] = t
        return t

    def walk(e: BoolExpr) -> Lit:
        cached = walked.get(id(e))
        if cached is not None:
            return cached
        lit = _walk(e)
        walked[id(e)] = lit
        return lit

    def _walk(e: BoolExpr) -> Lit:
        # literals introduce no definitions
        if isinstance(e, Var):
            return inputs[e.name]
        if isinstance(e, Not) and isinstance(e.child, Var):
            return -inputs[e.child.name]

        if isinstance(e, Not):
            a = walk(e.child)
            return define(
                ("not", a), e, lambda t: (add([t, a]), add([-t, -a]))
            )
        if isinstance(e, And):
            lits = [walk(c) for c in e.children]

            def emit_and(t: Lit, lits=tuple(lits)) -> None:
                for a in lits:
                    add([-t, a])
                add([t] + [-a for a in lits])

            return define(("and",) + tuple(lits), e, emit_and)
        if isinstance(e, Or):
            lits = [walk(c) for c in e.children]

            def emit_or(t: Lit, lits=tuple(lits)) -> None:
                add([-t] + list(lits))
                for a in lits:
                    add([t, -a])

            return define(("or",) + tuple(lits), e, emit_or)
        if isinstance(e, Nand):
            lits = [walk(c) for c in e.children]

            def emit_nand(t: Lit, lits=tuple(lits)) -> None:
                add([-t] + [-a for a in lits])
                for a in lits:
                    add([t, a])

            return define(("nand",) + tuple(lits), e, emit_nand)
        if isinstance(e, Nor):
            lits = [walk(c) for c in e.children]

            def emit_nor(t: Lit, lits=tuple(lits)) -> None:
                for a in lits:
                    add([-t, -a])
                add([t] + list(lits))

            return define(("nor",) + tuple(lits), e, emit_nor)
        if isinstance(e, Implies):
            a, b = walk(e.left), walk(e.right)

            def emit_implies(t: Lit) -> None:
                add([-t, -a, b])
                add([t, a])
                add([t, -b])

            return define(("implies", a, b), e, emit_implies)
        if isinstance(e, Iff):
            a, b = walk(e.left), walk(e.right)

            def emit_iff(t: Lit) -> None:
                add([-t, -a, b])
                add([-t, a, -b])
                add([t, a, b])
                add([t, -a, -b])

            return define(("iff", a, b), e, emit_iff)
        assert isinstance(e, Xor)
        lits = [walk(c) for c in e.children]
        if len(lits) == 1:
            return lits[0]
        # pairwise left-to-right chain, one definition per link
        acc = lits[0]
        acc_expr = e.children[0]
        for b_expr, b in zip(e.children[1:], lits[1:]):
            a = acc
            node = Xor(acc_expr, b_expr)

            def emit_xor(t: Lit, a=a, b=b) -> None:
                add([-a, b, t])
                add([a, -b, t])
                add([a, b, -t])
                add([-a, -b, -t])

            acc = define(("xor2", a, b), node, emit_xor)
            acc_expr = node
        return acc

    root = walk(expr)
    out_formula.ensure_vars(alloc.num_allocated)
    if assert_root:
        out_formula.add_clause([root])
    return TseitinOutput(
        formula=out_formula,
        root_literal=root,
        definitions=definitions,
        input_vars=inputs,
    )


# ---------------------------------------------------------------------------
# Prefix expression syntax: &and(x, &not(y), &xor(a, b, c)), mirroring the
# operator table's text column.  Grammar (documented in the README):
#
#   expr  := ident | op '(' expr (',' expr)* ')'
#   op    := '&and' | '&or' | '&not' | '&implies' | '&iff'
#          | '&xor' | '&nand' | '&nor'
#   ident := [A-Za-z_][A-Za-z0-9_]*
# ---------------------------------------------------------------------------

_OPS: dict[str, type | None] = {
    "&and": And,
    "&or": Or,
    "&not": Not,
    "&implies": Implies,
    "&iff": Iff,
    "&xor": Xor,
    "&nand": Nand,
    "&nor": Nor,
}


class ExprSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "(),":
            tokens.append((ch, ch, i))
            i += 1
        elif ch == "&":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word not in _OPS:
                raise ExprSyntaxError(f"unknown operator {word!r} at offset {i}")
            tokens.append(("op", word, i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r} at offset {i}")
    return tokens


def parse_expr(text: str) -> BoolExpr:
    """Parse the prefix syntax into a BoolExpr; raises ExprSyntaxError."""
    tokens = _tokenize(text)
    pos = 0

    def peek() -> tuple[str, str, int] | None:
        return tokens[pos] if pos < len(tokens) else None

    def expect(kind: str) -> tuple[str, str, int]:
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != kind:
            where = f"offset {tok[2]}" if tok else "end of input"
            raise ExprSyntaxError(f"expected {kind!r} at {where}")
        pos += 1
        return tok

    def parse_one() -> BoolExpr:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input")
        if tok[0] == "ident":
            pos += 1
            return Var(tok[1])
        if tok[0] == "op":
            pos += 1
            expect("(")
            args = [parse_one()]
            while peek() and peek()[0] == ",":
                pos += 1
                args.append(parse_one())
            expect(")")
            cls = _OPS[tok[1]]
            if cls is Not:
                if len(args) != 1:
                    raise ExprSyntaxError("&not takes exactly one argument")
                return Not(args[0])
            if cls in (Implies, Iff):
                if len(args) != 2:
                    raise ExprSyntaxError(f"{tok[1]} takes exactly two arguments")
                return cls(args[0], args[1])
            return cls(*args)
        raise ExprSyntaxError(f"unexpected token {tok[1]!r} at offset {tok[2]}")

    result = parse_one()
    if pos != len(tokens):
        tok = tokens[pos]
        raise ExprSyntaxError(f"trailing input starting at offset {tok[2]}")
    return result


def to_text(expr: BoolExpr) -> str:
    """Render an expression in the prefix syntax accepted by `parse_expr`."""
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Not):
        return f"&not({to_text(expr.child)})"
    if isinstance(expr, _Binary):
        return f"&{expr.op}({to_text(expr.left)}, {to_text(expr.right)})"
    assert isinstance(expr, _Nary)
    inner = ", ".join(to_text(c) for c in expr.children)
    return f"&{expr.op}({inner})"
