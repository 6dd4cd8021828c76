"""Command-line entry point: every encoder, raw DIMACS solving, the clique
benchmark harness, and the game service.

Exit codes: solver-verdict subcommands (`dimacs`, `latin`, `expr`,
`clique --k`, `fifteen --horizon`) follow the SAT-competition convention,
10 for satisfiable and 20 for unsatisfiable, with 0 reserved for an
exhausted budget.  Puzzle subcommands exit 0 when a solution is found and 1
when none exists.  Usage errors exit 2.

`--seed N` makes randomized behaviour reproducible: repeating an invocation
with the same seed produces byte-identical output.  `--timeout` (or the
SATKIT_TIMEOUT environment variable) bounds each solver call; `bench`
timings are wall-clock measurements and naturally vary between runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import boolexpr, clique, fifteen, latin, queens, sudoku, zebra
from .cnf import CnfFormula, DimacsError, parse_dimacs, write_dimacs
from .solver import SolverOptions, Status, solve


class UsageError(Exception):
    pass


def _solver_opts(args) -> SolverOptions | None:
    seed = getattr(args, "seed", None)
    timeout = getattr(args, "timeout", None)
    if seed is None and timeout is None:
        return None
    return SolverOptions(
        random_seed=seed if seed is not None else 0,
        rnd_init_act=seed is not None,
        time_budget=timeout,
    )


def _emit(args, formula: CnfFormula) -> None:
    if args.emit_dimacs:
        Path(args.emit_dimacs).write_text(write_dimacs(formula))


def _check_format(args, allowed=("ascii", "json")) -> str:
    if args.format not in allowed:
        raise UsageError(
            f"--format {args.format} is not valid here (choose from {', '.join(allowed)})"
        )
    return args.format


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_queens(args) -> int:
    fmt = _check_format(args)
    f, vm = queens.encode_queens(args.n)
    _emit(args, f)
    board = queens.solve_queens(args.n, _solver_opts(args))
    if board is None:
        print("UNSAT")
        return 1
    if fmt == "json":
        _print_json({"n": board.n, "queens": [list(q) for q in board.queens]})
    else:
        print(queens.render_ascii(board))
    return 0


def _cmd_zebra(args) -> int:
    fmt = _check_format(args)
    if args.spec:
        spec = zebra.parse_spec(Path(args.spec).read_text())
    else:
        spec = zebra.einstein_spec()
    f, _ = zebra.encode_zebra(spec)
    _emit(args, f)
    table = zebra.solve_zebra(spec, _solver_opts(args))
    if table is None:
        print("UNSAT")
        return 1
    if fmt == "json":
        _print_json(
            {
                "positions": [
                    {"position": i, **table[i]} for i in sorted(table)
                ]
            }
        )
    else:
        print(zebra.render_table(spec, table))
    return 0


def _cmd_sudoku(args) -> int:
    fmt = _check_format(args)
    if args.action in ("solve", "unique"):
        if not args.grid:
            raise UsageError(f"sudoku {args.action} requires --grid")
        grid = sudoku.Grid.from_text(args.grid)
        f, _ = sudoku.encode_sudoku(grid, cell_amo=args.cell_amo)
        _emit(args, f)
        if args.action == "solve":
            solution = sudoku.solve_sudoku(grid, _solver_opts(args), cell_amo=args.cell_amo)
            if solution is None:
                print("UNSAT")
                return 1
            if fmt == "json":
                _print_json({"solution": solution.to_text()})
            else:
                print(sudoku.render_ascii(solution))
            return 0
        unique = sudoku.is_unique(grid, _solver_opts(args))
        print("UNIQUE" if unique else "NOT UNIQUE")
        return 0 if unique else 1

    # generate
    seed = args.seed if args.seed is not None else int(1000 * time.time())
    result = sudoku.generate(seed)
    bounds = sudoku.estimate_min_clues(result)
    if args.emit_dimacs:
        f, _ = sudoku.encode_sudoku(result.puzzle)
        _emit(args, f)
    if fmt == "json":
        _print_json(
            {
                "puzzle": result.puzzle.to_text(),
                "solution": result.solution.to_text(),
                "bounds": list(bounds),
                "seed": seed,
            }
        )
    else:
        print(sudoku.render_ascii(result.puzzle))
        print()
        print(f"solution: {result.solution.to_text()}")
        print(f"min-clue bounds: {bounds[0]}..{bounds[1]}")
        print(f"seed: {seed}")
    return 0


def _cmd_clique(args) -> int:
    fmt = _check_format(args)
    g = clique.parse_dimacs_graph(Path(args.input).read_text())
    if args.k is not None:
        f, vm = clique.encode_k_clique(g, args.k)
        _emit(args, f)
        res = solve(f, _solver_opts(args))
        if res.status is Status.UNKNOWN:
            print(f"UNKNOWN ({res.reason})")
            return 0
        if res.status is Status.UNSAT:
            print("UNSAT")
            return 20
        chosen = [v for v in range(1, g.n + 1) if res.model[vm.id(("x", v))]]
        print("SAT")
        print(" ".join(str(v) for v in chosen))
        return 10
    if args.emit_dimacs:
        raise UsageError("clique --emit-dimacs requires --k to pick the instance")
    result = clique.max_clique(g, time_budget=args.timeout)
    if fmt == "json":
        _print_json(
            {
                "size": result.size,
                "vertices": list(result.vertices),
                "iterations": [[k, s] for k, s in result.iterations],
                "complete": result.complete,
            }
        )
    else:
        mark = "" if result.complete else " (budget exhausted; lower bound)"
        print(f"size: {result.size}{mark}")
        print("vertices: " + " ".join(str(v) for v in result.vertices))
        print(
            "iterations: "
            + " ".join(f"{k}={'sat' if s else 'unsat'}" for k, s in result.iterations)
        )
    return 0


def _cmd_latin(args) -> int:
    fmt = _check_format(args)
    f, _ = latin.encode_graeco(args.n)
    _emit(args, f)
    opts = _solver_opts(args)
    res = solve(f, opts)
    if res.status is Status.UNKNOWN:
        print(f"UNKNOWN ({res.reason})")
        return 0
    if res.status is Status.UNSAT:
        print("UNSAT")
        return 20
    pair = latin.solve_graeco(args.n, opts)
    assert pair is not None
    if fmt == "json":
        _print_json({"n": pair.n, "a": [list(r) for r in pair.a], "b": [list(r) for r in pair.b]})
    else:
        print(latin.render_pair(pair))
    return 10


def _cmd_fifteen(args) -> int:
    fmt = _check_format(args)
    board = fifteen.Board.from_text(args.board, size=args.size)
    if args.horizon is not None:
        f, _ = fifteen.encode_fifteen(board, args.horizon)
        _emit(args, f)
        res = solve(f, _solver_opts(args))
        if res.status is Status.UNKNOWN:
            print(f"UNKNOWN ({res.reason})")
            return 0
        if res.status is Status.UNSAT:
            print("UNSAT")
            return 20
        plan = fifteen.solve_fifteen(board, horizon=args.horizon)
        assert plan is not None
        _print_plan(fmt, board, plan, args.boards)
        return 10
    if args.emit_dimacs:
        raise UsageError("fifteen --emit-dimacs requires --horizon to pick the instance")
    plan = fifteen.solve_fifteen(board)
    if plan is None:
        print("UNSOLVABLE")
        return 1
    _print_plan(fmt, board, plan, args.boards)
    return 0


def _print_plan(fmt: str, board: fifteen.Board, plan: fifteen.Plan, boards: bool) -> None:
    if fmt == "json":
        _print_json({"length": plan.length, "moves": [list(m) for m in plan.moves]})
        return
    print(f"length: {plan.length}")
    print("moves: " + " ".join(f"({i},{j})" for i, j in plan.moves))
    if boards:
        cur = board
        print(cur.render())
        for step, move in enumerate(plan.moves, start=1):
            cur = fifteen.simulate(cur, fifteen.Plan((move,)))
            print(f"-- step {step}: slide ({move[0]},{move[1]})")
            print(cur.render())


def _cmd_dimacs(args) -> int:
    f = parse_dimacs(Path(args.file).read_text())
    _emit(args, f)
    res = solve(f, _solver_opts(args))
    if res.status is Status.UNKNOWN:
        print(f"s UNKNOWN ({res.reason})")
        return 0
    if res.status is Status.UNSAT:
        print("s UNSATISFIABLE")
        return 20
    print("s SATISFIABLE")
    lits = [v if res.model[v] else -v for v in range(1, f.num_vars + 1)]
    line: list[str] = []
    for lit in lits + [0]:
        line.append(str(lit))
        if len(line) >= 20:
            print("v " + " ".join(line))
            line = []
    if line:
        print("v " + " ".join(line))
    return 10


def _cmd_expr(args) -> int:
    e = boolexpr.parse_expr(args.expression)
    out = boolexpr.tseitin_cnf(e)
    _emit(args, out.formula)
    res = solve(out.formula, _solver_opts(args))
    if res.status is Status.UNKNOWN:
        print(f"UNKNOWN ({res.reason})")
        return 0
    if res.status is Status.UNSAT:
        print("UNSATISFIABLE")
        return 20
    print("SATISFIABLE")
    for name in sorted(out.input_vars):
        print(f"{name}={'true' if res.model[out.input_vars[name]] else 'false'}")
    return 10


def _cmd_bench(args) -> int:
    paths = sorted(Path(args.dir).glob("*.clq"))
    if not paths:
        raise UsageError(f"no .clq files under {args.dir}")
    instances = [
        (p.stem, clique.parse_dimacs_graph(p.read_text())) for p in paths
    ]
    rows = clique.run_benchmark(instances, time_budget=args.timeout)
    sys.stdout.write(clique.format_bench_tsv(rows))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satkit",
        description="SAT toolkit: puzzle encoders, a CDCL solver, and DIMACS tools.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for randomized solving")
    common.add_argument(
        "--timeout",
        type=float,
        default=_env_timeout(),
        help="solver time budget in seconds (default: SATKIT_TIMEOUT)",
    )
    common.add_argument(
        "--format", choices=["ascii", "json", "dimacs"], default="ascii"
    )
    common.add_argument(
        "--emit-dimacs", metavar="PATH", default=None, help="export the encoding"
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("queens", parents=[common], help="n-queens boards")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=_cmd_queens)

    p = sub.add_parser("zebra", parents=[common], help="positional logic puzzles")
    p.add_argument("--spec", default=None, help="clue file (default: built-in Einstein riddle)")
    p.set_defaults(func=_cmd_zebra)

    p = sub.add_parser("sudoku", parents=[common], help="solve/generate/check sudoku")
    p.add_argument("action", choices=["solve", "generate", "unique"])
    p.add_argument("--grid", default=None, help="81 characters, `.` or 0 for blanks")
    p.add_argument("--cell-amo", action="store_true", help="add per-cell at-most-one clauses")
    p.set_defaults(func=_cmd_sudoku)

    p = sub.add_parser("clique", parents=[common], help="maximum clique on a DIMACS graph")
    p.add_argument("--input", required=True, help=".clq graph file")
    p.add_argument("--k", type=int, default=None, help="decide a single clique size")
    p.set_defaults(func=_cmd_clique)

    p = sub.add_parser("latin", parents=[common], help="orthogonal Latin square pairs")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=_cmd_latin)

    p = sub.add_parser("fifteen", parents=[common], help="sliding-tile planner")
    p.add_argument("--board", required=True, help="16 integers row-major, 0 or 16 = blank")
    p.add_argument("--size", type=int, default=4, choices=[3, 4])
    p.add_argument("--horizon", type=int, default=None, help="solve one horizon only")
    p.add_argument("--boards", action="store_true", help="render the board after each move")
    p.set_defaults(func=_cmd_fifteen)

    p = sub.add_parser("dimacs", parents=[common], help="solve a DIMACS CNF file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_dimacs)

    p = sub.add_parser("expr", parents=[common], help="solve a Boolean expression")
    p.add_argument("expression", help="prefix syntax, e.g. '&and(x, &not(y))'")
    p.set_defaults(func=_cmd_expr)

    p = sub.add_parser("bench", parents=[common], help="clique benchmark harness")
    p.add_argument("--dir", required=True, help="directory of .clq files")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", parents=[common], help="run the sudoku game service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def _env_timeout() -> float | None:
    raw = os.environ.get("SATKIT_TIMEOUT")
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        return None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        DimacsError,
        boolexpr.ExprSyntaxError,
        boolexpr.UnboundVariableError,
        zebra.ZebraParseError,
        sudoku.GridError,
        sudoku.UnsatisfiablePuzzleError,
        clique.GraphError,
        fifteen.BoardError,
        FileNotFoundError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
