"""Encoder for positional logic puzzles (zebra/Einstein style).

Puzzles are described in a line-oriented clue file: a `positions` count,
`category` declarations, then clues.  Value names are globally unique, so a
clue names values without mentioning categories:

    positions 5
    category color: red green white yellow blue
    same(Brit, red)        # Brit and red share a house
    pos(Norwegian, 1)      # Norwegian is in house 1
    left-of(green, white)  # green is immediately left of white
    next-to(Blends, cats)  # Blends is adjacent to cats

Houses are numbered 1..n with 1 the leftmost.  One variable S(i, value) per
position and value, allocated position-major in category/value declaration
order.  Each value sits in exactly one position and each position holds
exactly one value per category.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .cardinality import exactly_one
from .cnf import CnfFormula, VarAllocator, VarMap
from .solver import SolverOptions, Status, enumerate_models, solve

SolutionTable = dict[int, dict[str, str]]  # position -> category -> value


class ZebraParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Clue:
    kind: str  # "same" | "pos" | "left-of" | "next-to"
    a: str
    b: str | None = None  # value name, or None for "pos"
    index: int | None = None  # position, only for "pos"


@dataclass(frozen=True)
class PuzzleSpec:
    positions: int
    categories: tuple[tuple[str, tuple[str, ...]], ...]
    clues: tuple[Clue, ...]

    def category_of(self, value: str) -> str:
        for name, values in self.categories:
            if value in values:
                return name
        raise KeyError(value)

    def all_values(self) -> list[str]:
        return [v for _, values in self.categories for v in values]


def parse_spec(text: str) -> PuzzleSpec:
    positions: int | None = None
    categories: list[tuple[str, tuple[str, ...]]] = []
    clues: list[Clue] = []
    known: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("positions"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise ZebraParseError("expected `positions <n>` with n >= 1", lineno)
            if positions is not None:
                raise ZebraParseError("duplicate positions line", lineno)
            positions = int(parts[1])
            continue
        if positions is None:
            raise ZebraParseError("file must start with a positions line", lineno)
        if line.startswith("category"):
            head, sep, tail = line.partition(":")
            name = head[len("category"):].strip()
            if not sep or not name:
                raise ZebraParseError("expected `category <name>: v1 v2 ...`", lineno)
            values = tuple(tail.split())
            if len(values) != positions:
                raise ZebraParseError(
                    f"category {name!r} has {len(values)} values, expected {positions}",
                    lineno,
                )
            for v in values:
                if v in known:
                    raise ZebraParseError(f"duplicate value {v!r}", lineno)
                known.add(v)
            categories.append((name, values))
            continue
        clue = _parse_clue(line, lineno, known, positions)
        clues.append(clue)

    if positions is None:
        raise ZebraParseError("missing positions line", max(len(text.splitlines()), 1))
    return PuzzleSpec(positions, tuple(categories), tuple(clues))


def _parse_clue(line: str, lineno: int, known: set[str], n: int) -> Clue:
    if "(" not in line or not line.endswith(")"):
        raise ZebraParseError(f"malformed clue {line!r}", lineno)
    kind, _, inner = line[:-1].partition("(")
    kind = kind.strip()
    args = [a.strip() for a in inner.split(",")]
    if kind not in ("same", "pos", "left-of", "next-to"):
        raise ZebraParseError(f"unknown clue kind {kind!r}", lineno)
    if len(args) != 2 or not all(args):
        raise ZebraParseError(f"{kind} takes exactly two arguments", lineno)
    a, b = args
    if a not in known:
        raise ZebraParseError(f"unknown value {a!r}", lineno)
    if kind == "pos":
        if not b.isdigit() or not 1 <= int(b) <= n:
            raise ZebraParseError(f"position {b!r} outside 1..{n}", lineno)
        return Clue("pos", a, index=int(b))
    if b not in known:
        raise ZebraParseError(f"unknown value {b!r}", lineno)
    return Clue(kind, a, b)


def encode_zebra(spec: PuzzleSpec) -> tuple[CnfFormula, VarMap]:
    n = spec.positions
    alloc = VarAllocator()
    vm = VarMap()
    for i in range(1, n + 1):
        for _, values in spec.categories:
            for v in values:
                vm.add(("S", i, v), alloc)
    s = lambda i, v: vm.id(("S", i, v))

    f = CnfFormula(num_vars=alloc.num_allocated)
    # every value occupies exactly one position
    for _, values in spec.categories:
        for v in values:
            f.add_clauses(exactly_one([s(i, v) for i in range(1, n + 1)]))
    # every position holds exactly one value of each category
    for i in range(1, n + 1):
        for _, values in spec.categories:
            f.add_clauses(exactly_one([s(i, v) for v in values]))

    for clue in spec.clues:
        if clue.kind == "same":
            for i in range(1, n + 1):
                f.add_clause([-s(i, clue.a), s(i, clue.b)])
        elif clue.kind == "pos":
            f.add_clause([s(clue.index, clue.a)])
        elif clue.kind == "left-of":
            for i in range(1, n):
                f.add_clause([-s(i, clue.a), s(i + 1, clue.b)])
            f.add_clause([-s(n, clue.a)])
        else:  # next-to
            for i in range(1, n + 1):
                neighbours = [s(j, clue.b) for j in (i - 1, i + 1) if 1 <= j <= n]
                f.add_clause([-s(i, clue.a)] + neighbours)
    return f, vm


def _decode(spec: PuzzleSpec, vm: VarMap, model) -> SolutionTable:
    table: SolutionTable = {i: {} for i in range(1, spec.positions + 1)}
    for key in vm.true_keys(model):
        _, i, value = key
        table[i][spec.category_of(value)] = value
    return table


def solve_zebra(
    spec: PuzzleSpec, opts: SolverOptions | None = None
) -> SolutionTable | None:
    f, vm = encode_zebra(spec)
    res = solve(f, opts)
    if res.status is not Status.SAT:
        return None
    table = _decode(spec, vm, res.model)
    if not validate_table(spec, table):
        raise AssertionError("solver returned a table violating the clues")
    return table


def is_unique_zebra(spec: PuzzleSpec, opts: SolverOptions | None = None) -> bool:
    f, vm = encode_zebra(spec)
    models = enumerate_models(f, list(vm.ids()), 2, opts)
    return len(models) == 1


def validate_table(spec: PuzzleSpec, table: SolutionTable) -> bool:
    """Clue evaluator that never consults the solver."""
    n = spec.positions
    if set(table) != set(range(1, n + 1)):
        return False
    for name, values in spec.categories:
        seen = [table[i].get(name) for i in range(1, n + 1)]
        if sorted(v for v in seen if v is not None) != sorted(values):
            return False

    def where(value: str) -> int:
        cat = spec.category_of(value)
        for i in range(1, n + 1):
            if table[i][cat] == value:
                return i
        raise AssertionError(f"value {value} missing from table")

    for clue in spec.clues:
        if clue.kind == "same":
            if where(clue.a) != where(clue.b):
                return False
        elif clue.kind == "pos":
            if where(clue.a) != clue.index:
                return False
        elif clue.kind == "left-of":
            if where(clue.a) + 1 != where(clue.b):
                return False
        else:  # next-to
            if abs(where(clue.a) - where(clue.b)) != 1:
                return False
    return True


def einstein_spec() -> PuzzleSpec:
    """The shipped Einstein riddle fixture."""
    text = resources.files("satkit.data").joinpath("einstein.zebra").read_text()
    return parse_spec(text)


def render_table(spec: PuzzleSpec, table: SolutionTable) -> str:
    cats = [name for name, _ in spec.categories]
    header = ["house"] + cats
    rows = [[str(i)] + [table[i][c] for c in cats] for i in range(1, spec.positions + 1)]
    widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header)] + [fmt.format(*r) for r in rows]
    return "\n".join(lines)
