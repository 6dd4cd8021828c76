"""CNF data model: literals, clauses, formulas, variable maps, and DIMACS I/O.

Literals are DIMACS-style signed integers: +v for the variable v, -v for its
negation, with v >= 1.  A clause is stored as a tuple of literals (duplicates
removed, first occurrence order kept); a formula is a clause list plus a
variable count.  The writer emits a canonical byte-exact form so encoders can
be golden-tested against exported files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

Lit = int
Clause = tuple[Lit, ...]


class TautologyError(ValueError):
    """Raised when a clause contains both a literal and its negation."""


class DimacsError(ValueError):
    """Raised on malformed DIMACS input; carries a 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def make_clause(lits: Iterable[Lit]) -> Clause:
    """Normalize literals into a clause: dedup, reject tautologies and zero."""
    seen: set[Lit] = set()
    out: list[Lit] = []
    for lit in lits:
        if lit == 0:
            raise ValueError("literal 0 is not allowed in a clause")
        if -lit in seen:
            raise TautologyError(f"clause contains both {lit} and {-lit}")
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


@dataclass
class CnfFormula:
    """A CNF formula with DIMACS-compatible variable numbering."""

    num_vars: int = 0
    clauses: list[Clause] = field(default_factory=list)

    def add_clause(self, lits: Iterable[Lit]) -> Clause:
        clause = make_clause(lits)
        for lit in clause:
            v = abs(lit)
            if v > self.num_vars:
                self.num_vars = v
        self.clauses.append(clause)
        return clause

    def add_clauses(self, clauses: Iterable[Iterable[Lit]]) -> None:
        for lits in clauses:
            self.add_clause(lits)

    def ensure_vars(self, num_vars: int) -> None:
        """Raise the variable count (fresh Tseitin vars may not occur yet)."""
        if num_vars > self.num_vars:
            self.num_vars = num_vars

    def copy(self) -> "CnfFormula":
        return CnfFormula(self.num_vars, list(self.clauses))

    def __len__(self) -> int:
        return len(self.clauses)


class VarAllocator:
    """Hands out fresh variable ids 1, 2, 3, ... in order."""

    __slots__ = ("_next",)

    def __init__(self, first: int = 1):
        if first < 1:
            raise ValueError("variable ids start at 1")
        self._next = first

    def fresh(self) -> int:
        v = self._next
        self._next += 1
        return v

    @property
    def num_allocated(self) -> int:
        return self._next - 1


class VarMap:
    """Deterministic bijection between structured encoder keys and var ids.

    Keys are allocated in the order the encoder introduces them, which every
    encoder documents, so DIMACS exports are reproducible byte-for-byte.
    """

    def __init__(self) -> None:
        self._fwd: dict[Hashable, int] = {}
        self._bwd: dict[int, Hashable] = {}

    def add(self, key: Hashable, alloc: VarAllocator) -> int:
        if key in self._fwd:
            raise ValueError(f"key already allocated: {key!r}")
        return self.bind(key, alloc.fresh())

    def bind(self, key: Hashable, var: int) -> int:
        """Record an already-allocated variable id under a structured key."""
        if key in self._fwd:
            raise ValueError(f"key already allocated: {key!r}")
        if var in self._bwd:
            raise ValueError(f"variable {var} already has key {self._bwd[var]!r}")
        self._fwd[key] = var
        self._bwd[var] = key
        return var

    def id(self, key: Hashable) -> int:
        return self._fwd[key]

    def key(self, var: int) -> Hashable:
        return self._bwd[var]

    def __contains__(self, key: Hashable) -> bool:
        return key in self._fwd

    def __len__(self) -> int:
        return len(self._fwd)

    def keys(self) -> Iterator[Hashable]:
        return iter(self._fwd)

    def ids(self) -> Iterator[int]:
        return iter(self._bwd)

    def true_keys(self, model: "Model") -> list[Hashable]:
        """Keys whose variable is true in the model, in allocation order."""
        return [k for k, v in self._fwd.items() if model[v]]


class Model:
    """Total truth assignment over variables 1..num_vars."""

    __slots__ = ("_values",)

    def __init__(self, values: Sequence[bool]):
        # values[0] is padding so that indexing matches variable ids
        self._values = tuple(values)

    @classmethod
    def from_dict(cls, num_vars: int, assignment: dict[int, bool]) -> "Model":
        vals = [False] * (num_vars + 1)
        for v, b in assignment.items():
            vals[v] = b
        return cls(vals)

    @property
    def num_vars(self) -> int:
        return len(self._values) - 1

    def __getitem__(self, var: int) -> bool:
        if not 1 <= var <= self.num_vars:
            raise IndexError(f"variable {var} outside 1..{self.num_vars}")
        return self._values[var]

    def lit_true(self, lit: Lit) -> bool:
        return self[abs(lit)] == (lit > 0)

    def true_vars(self) -> list[int]:
        return [v for v in range(1, self.num_vars + 1) if self._values[v]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Model) and self._values == other._values

    def __hash__(self) -> int:
        return hash(self._values)

    def __repr__(self) -> str:
        return f"Model({len(self.true_vars())} true of {self.num_vars})"


def eval_cnf(formula: CnfFormula, model: Model) -> bool:
    """Independent model checker: true iff every clause has a true literal."""
    return all(any(model.lit_true(lit) for lit in clause) for clause in formula.clauses)


def blocking_clause(model: Model, scope: Sequence[int]) -> Clause:
    """Clause falsified by `model` and satisfied by any model differing on scope."""
    if not scope:
        raise ValueError("blocking clause over an empty scope would be empty")
    return make_clause(-v if model[v] else v for v in scope)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF.  Whitespace-tolerant; clauses may span lines."""
    num_vars = num_clauses = None
    clauses: list[Clause] = []
    pending: list[int] = []
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError("duplicate header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError("negative counts in header", lineno)
            header_line = lineno
            continue
        if num_vars is None:
            raise DimacsError("clause before header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad token {tok!r}", lineno) from None
            if lit == 0:
                try:
                    clauses.append(make_clause(pending))
                except TautologyError as exc:
                    raise DimacsError(str(exc), lineno) from None
                pending.clear()
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(
                        f"literal {lit} exceeds declared {num_vars} variables", lineno
                    )
                pending.append(lit)
    last = len(text.splitlines())
    if num_vars is None:
        raise DimacsError("missing header", max(last, 1))
    if pending:
        raise DimacsError("clause not terminated by 0", last)
    if num_clauses is not None and len(clauses) != num_clauses:
        raise DimacsError(
            f"header declares {num_clauses} clauses, found {len(clauses)}", header_line
        )
    f = CnfFormula(num_vars=num_vars)
    f.clauses = clauses
    return f


def write_dimacs(formula: CnfFormula) -> str:
    """Canonical DIMACS: header, one clause per line, single spaces, LF endings."""
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"
