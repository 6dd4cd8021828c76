"""Embedded CDCL SAT solver with assumptions, seeded randomization, and
model enumeration.

The engine is a conflict-driven clause-learning solver in the MiniSat
lineage: two-watched-literal propagation with blocker literals, first-UIP
conflict analysis with cheap clause minimization, activity-based branching
with multiplicative decay, Luby restarts, and phase saving.  Learned clauses
with literal-block-distance <= 2 are kept forever; the rest are periodically
halved by activity.

Everything is deterministic for fixed inputs and options.  Randomized model
diversification is opt-in: with `rnd_init_act` set, variable activities and
initial phases are drawn from the xorshift64* stream seeded by
`random_seed`.

Internally literals are encoded as `2*v` (positive) and `2*v + 1` (negative)
so watch lists and value lookups are plain list indexing; the public API
speaks signed DIMACS literals throughout.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from heapq import heapify, heappop, heappush
from typing import Sequence

from .cnf import CnfFormula, Lit, Model, blocking_clause
from .prng import XorShift64Star

_UNDEF = 2  # lit_val code for "unassigned" (0 = false, 1 = true)
_NO_REASON = -1

_VAR_DECAY = 0.95
_CLAUSE_DECAY = 0.999
_RESTART_UNIT = 100  # conflicts per Luby step
_RESCALE_LIMIT = 1e100


class Status(Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SolverOptions:
    """Knobs for a single solver run.

    `random_seed` only has an effect when `rnd_init_act` is true, in which
    case initial variable activities and phases are pseudo-random; otherwise
    activities start at zero and phases default to false.  Budgets, when
    present, must be positive; exhausting one yields an UNKNOWN result.
    """

    random_seed: int = 0
    rnd_init_act: bool = False
    conflict_budget: int | None = None
    time_budget: float | None = None

    def __post_init__(self) -> None:
        if self.conflict_budget is not None and self.conflict_budget <= 0:
            raise ValueError("conflict_budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")


@dataclass
class SolveResult:
    status: Status
    model: Model | None = None
    reason: str | None = None  # for UNKNOWN: "conflict-budget" or "time-budget"

    @property
    def is_sat(self) -> bool:
        return self.status is Status.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status is Status.UNSAT


class BudgetExhaustedError(RuntimeError):
    """Raised by enumerate_models when a solve call returns UNKNOWN."""


def _luby(i: int) -> int:
    """The i-th term (1-based) of the Luby restart sequence 1,1,2,1,1,2,4,..."""
    k = 1
    while (1 << (k + 1)) - 1 <= i:
        k += 1
    while (1 << k) - 1 != i:
        i -= (1 << (k - 1)) - 1 + 1
        k = 1
        while (1 << (k + 1)) - 1 <= i:
            k += 1
    return 1 << (k - 1)


class _Engine:
    """Single-use, single-threaded CDCL engine over one formula."""

    def __init__(self, formula: CnfFormula, opts: SolverOptions, assumptions: Sequence[Lit]):
        self.opts = opts
        self.nvars = n = formula.num_vars
        for a in assumptions:
            if a == 0 or abs(a) > n:
                raise ValueError(f"assumption {a} references an invalid variable")
        self.assumptions = [self._enc(a) for a in assumptions]

        self.lit_val = bytearray([_UNDEF]) * (2 * n + 2)
        self.level = [0] * (n + 1)
        self.reason = [_NO_REASON] * (n + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.seen = bytearray(n + 1)

        self.activity = [0.0] * (n + 1)
        self.polarity = bytearray(n + 1)  # sign bit of next decision; 1 = false
        for v in range(1, n + 1):
            self.polarity[v] = 1
        if opts.rnd_init_act:
            rng = XorShift64Star(opts.random_seed)
            for v in range(1, n + 1):
                self.activity[v] = rng.next_float()
                self.polarity[v] = 1 if rng.next_bool() else 0
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.heap: list[tuple[float, int]] = [
            (-self.activity[v], v) for v in range(1, n + 1)
        ]
        heapify(self.heap)

        self.clauses: list[list[int]] = []
        self.learnt_from = 0  # clause indices >= this are learnt
        self.cla_act: list[float] = []
        self.cla_lbd: list[int] = []
        self.watches: list[list[int]] = [[] for _ in range(2 * n + 2)]

        self.conflicts = 0
        self.ok = True
        for clause in formula.clauses:
            if not self._attach(clause):
                self.ok = False
                break
        self.learnt_from = len(self.clauses)
        # cla_act/cla_lbd are parallel to the learnt tail only: entry i
        # describes clause learnt_from + i
        self.max_learnts = max(2000, self.learnt_from // 3)

    @staticmethod
    def _enc(lit: Lit) -> int:
        return (lit << 1) if lit > 0 else ((-lit) << 1) | 1

    def _attach(self, clause: tuple[Lit, ...]) -> bool:
        """Add an original clause; returns False on immediate unsatisfiability."""
        if not clause:
            return False
        codes = [self._enc(l) for l in clause]
        if len(codes) == 1:
            c = codes[0]
            val = self.lit_val[c]
            if val == 0:
                return False
            if val == _UNDEF:
                self._assign(c, _NO_REASON)
            return True
        cref = len(self.clauses)
        self.clauses.append(codes)
        self.watches[codes[0]].extend((cref, codes[1]))
        self.watches[codes[1]].extend((cref, codes[0]))
        return True

    def _assign(self, code: int, reason: int) -> None:
        v = code >> 1
        self.lit_val[code] = 1
        self.lit_val[code ^ 1] = 0
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(code)

    def _propagate(self) -> int:
        """Unit propagation; returns a conflicting clause index or -1."""
        lit_val = self.lit_val
        watches = self.watches
        clauses = self.clauses
        trail = self.trail
        level = self.level
        reason = self.reason
        trail_lim_len = len(self.trail_lim)
        qhead = self.qhead
        confl = -1
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            fl = p ^ 1  # the literal that just became false
            ws = watches[fl]
            i = j = 0
            n_ws = len(ws)
            while i < n_ws:
                cref = ws[i]
                blocker = ws[i + 1]
                if lit_val[blocker] == 1:
                    ws[j] = cref
                    ws[j + 1] = blocker
                    j += 2
                    i += 2
                    continue
                lits = clauses[cref]
                if lits[0] == fl:
                    lits[0] = lits[1]
                    lits[1] = fl
                first = lits[0]
                if first != blocker and lit_val[first] == 1:
                    ws[j] = cref
                    ws[j + 1] = first
                    j += 2
                    i += 2
                    continue
                # look for a non-false replacement watch
                moved = False
                for k in range(2, len(lits)):
                    lk = lits[k]
                    if lit_val[lk] != 0:
                        lits[1] = lk
                        lits[k] = fl
                        wl = watches[lk]
                        wl.append(cref)
                        wl.append(first)
                        moved = True
                        break
                if moved:
                    i += 2
                    continue
                ws[j] = cref
                ws[j + 1] = first
                j += 2
                i += 2
                if lit_val[first] == 0:
                    # conflict: keep the remaining watches and stop
                    while i < n_ws:
                        ws[j] = ws[i]
                        ws[j + 1] = ws[i + 1]
                        i += 2
                        j += 2
                    confl = cref
                    qhead = len(trail)
                else:
                    v = first >> 1
                    lit_val[first] = 1
                    lit_val[first ^ 1] = 0
                    level[v] = trail_lim_len
                    reason[v] = cref
                    trail.append(first)
            del ws[j:]
            if confl >= 0:
                break
        self.qhead = len(trail) if confl >= 0 else qhead
        return confl

    def _bump_var(self, v: int) -> None:
        act = self.activity[v] + self.var_inc
        self.activity[v] = act
        if act > _RESCALE_LIMIT:
            inv = 1e-100
            activity = self.activity
            for u in range(1, self.nvars + 1):
                activity[u] *= inv
            self.var_inc *= inv
            self.heap = [(-activity[u], u) for u in range(1, self.nvars + 1)]
            heapify(self.heap)
        else:
            heappush(self.heap, (-act, v))

    def _bump_clause(self, cref: int) -> None:
        idx = cref - self.learnt_from
        act = self.cla_act[idx] + self.cla_inc
        self.cla_act[idx] = act
        if act > _RESCALE_LIMIT:
            inv = 1e-100
            self.cla_act = [a * inv for a in self.cla_act]
            self.cla_inc *= inv

    def _analyze(self, confl: int) -> tuple[list[int], int, int]:
        """First-UIP learning: returns (learnt codes, backtrack level, lbd)."""
        clauses = self.clauses
        level = self.level
        reason = self.reason
        seen = self.seen
        trail = self.trail
        cur_level = len(self.trail_lim)
        learnt_from = self.learnt_from

        tail: list[int] = []
        to_clear: list[int] = []
        counter = 0
        p = -1
        index = len(trail) - 1
        c = confl
        while True:
            lits = clauses[c]
            if c >= learnt_from:
                self._bump_clause(c)
            for pos in range(0 if p == -1 else 1, len(lits)):
                q = lits[pos]
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    to_clear.append(v)
                    self._bump_var(v)
                    if level[v] >= cur_level:
                        counter += 1
                    else:
                        tail.append(q)
            while not seen[trail[index] >> 1]:
                index -= 1
            p = trail[index]
            index -= 1
            v = p >> 1
            c = reason[v]
            seen[v] = 0
            counter -= 1
            if counter == 0:
                break

        # recursive minimization: drop tail literals whose implication paths
        # all end inside the clause (restricted to the clause's level set)
        abstract = 0
        for q in tail:
            abstract |= 1 << (level[q >> 1] & 31)
        kept: list[int] = []
        for q in tail:
            if reason[q >> 1] == _NO_REASON or not self._lit_redundant(
                q, abstract, to_clear
            ):
                kept.append(q)
        learnt = [p ^ 1] + kept
        for v in to_clear:
            seen[v] = 0

        if len(learnt) == 1:
            bt = 0
        else:
            # move a max-level tail literal into the second watch position
            max_i = 1
            max_lv = level[learnt[1] >> 1]
            for i in range(2, len(learnt)):
                lv = level[learnt[i] >> 1]
                if lv > max_lv:
                    max_lv = lv
                    max_i = i
            learnt[1], learnt[max_i] = learnt[max_i], learnt[1]
            bt = max_lv
        lbd = len({level[q >> 1] for q in learnt})
        return learnt, bt, lbd

    def _lit_redundant(self, q: int, abstract_levels: int, to_clear: list[int]) -> bool:
        """Stack DFS through reasons; true when every path from q ends in a
        marked literal without leaving the learnt clause's decision levels."""
        clauses = self.clauses
        reason = self.reason
        level = self.level
        seen = self.seen
        stack = [q]
        top = len(to_clear)
        while stack:
            p = stack.pop()
            for lk in clauses[reason[p >> 1]][1:]:
                v = lk >> 1
                if seen[v] or level[v] == 0:
                    continue
                if reason[v] != _NO_REASON and (1 << (level[v] & 31)) & abstract_levels:
                    seen[v] = 1
                    to_clear.append(v)
                    stack.append(lk)
                else:
                    for u in to_clear[top:]:
                        seen[u] = 0
                    del to_clear[top:]
                    return False
        return True

    def _cancel_until(self, target: int) -> None:
        if len(self.trail_lim) <= target:
            return
        lit_val = self.lit_val
        polarity = self.polarity
        heap = self.heap
        activity = self.activity
        bound = self.trail_lim[target]
        trail = self.trail
        for i in range(len(trail) - 1, bound - 1, -1):
            code = trail[i]
            v = code >> 1
            lit_val[code] = _UNDEF
            lit_val[code ^ 1] = _UNDEF
            polarity[v] = code & 1
            heappush(heap, (-activity[v], v))
        del trail[bound:]
        del self.trail_lim[target:]
        self.qhead = bound

    def _pick_branch(self) -> int:
        heap = self.heap
        lit_val = self.lit_val
        activity = self.activity
        while heap:
            negact, v = heappop(heap)
            if lit_val[v << 1] != _UNDEF:
                continue
            if -negact != activity[v]:
                continue  # stale entry; a fresher one exists
            return (v << 1) | self.polarity[v]
        return -1

    def _learn(self, learnt: list[int], lbd: int) -> None:
        if len(learnt) == 1:
            self._assign(learnt[0], _NO_REASON)
            return
        cref = len(self.clauses)
        self.clauses.append(learnt)
        self.cla_act.append(self.cla_inc)
        self.cla_lbd.append(lbd)
        self.watches[learnt[0]].extend((cref, learnt[1]))
        self.watches[learnt[1]].extend((cref, learnt[0]))
        self._assign(learnt[0], cref)

    def _reduce_db(self) -> None:
        """Drop the less active half of the learnt clauses with LBD > 2."""
        learnt_from = self.learnt_from
        locked = set()
        for code in self.trail:
            r = self.reason[code >> 1]
            if r >= learnt_from:
                locked.add(r)
        removable: list[tuple[float, int]] = []
        for cref in range(learnt_from, len(self.clauses)):
            idx = cref - learnt_from
            if self.cla_lbd[idx] <= 2 or cref in locked:
                continue
            removable.append((self.cla_act[idx], cref))
        removable.sort()
        drop = {cref for _, cref in removable[: len(removable) // 2]}
        if not drop:
            return

        old_clauses = self.clauses
        new_clauses = old_clauses[:learnt_from]
        new_act: list[float] = []
        new_lbd: list[int] = []
        remap: dict[int, int] = {}
        for cref in range(learnt_from, len(old_clauses)):
            if cref in drop:
                continue
            idx = cref - learnt_from
            remap[cref] = len(new_clauses)
            new_clauses.append(old_clauses[cref])
            new_act.append(self.cla_act[idx])
            new_lbd.append(self.cla_lbd[idx])
        self.clauses = new_clauses
        self.cla_act = new_act
        self.cla_lbd = new_lbd

        for v in range(1, self.nvars + 1):
            r = self.reason[v]
            if r >= learnt_from:
                self.reason[v] = remap.get(r, _NO_REASON)
        for code in range(2, 2 * self.nvars + 2):
            self.watches[code].clear()
        for cref, lits in enumerate(self.clauses):
            self.watches[lits[0]].extend((cref, lits[1]))
            self.watches[lits[1]].extend((cref, lits[0]))

    def solve(self) -> SolveResult:
        if not self.ok:
            return SolveResult(Status.UNSAT)
        if self._propagate() >= 0:
            return SolveResult(Status.UNSAT)

        opts = self.opts
        deadline = (
            time.monotonic() + opts.time_budget if opts.time_budget is not None else None
        )
        restart_idx = 1
        restart_limit = _luby(restart_idx) * _RESTART_UNIT
        conflicts_at_restart = 0
        decisions = 0

        while True:
            confl = self._propagate()
            if confl >= 0:
                self.conflicts += 1
                if not self.trail_lim:
                    return SolveResult(Status.UNSAT)
                learnt, bt, lbd = self._analyze(confl)
                self._cancel_until(bt)
                self._learn(learnt, lbd)
                self.var_inc /= _VAR_DECAY
                self.cla_inc /= _CLAUSE_DECAY
                if (
                    opts.conflict_budget is not None
                    and self.conflicts >= opts.conflict_budget
                ):
                    return SolveResult(Status.UNKNOWN, reason="conflict-budget")
                if (
                    deadline is not None
                    and self.conflicts % 256 == 0
                    and time.monotonic() > deadline
                ):
                    return SolveResult(Status.UNKNOWN, reason="time-budget")
                continue

            if self.conflicts - conflicts_at_restart >= restart_limit:
                restart_idx += 1
                restart_limit = _luby(restart_idx) * _RESTART_UNIT
                conflicts_at_restart = self.conflicts
                self._cancel_until(0)
                continue
            if len(self.clauses) - self.learnt_from >= self.max_learnts:
                self._reduce_db()
                self.max_learnts = int(self.max_learnts * 1.2)

            decisions += 1
            if deadline is not None and decisions % 4096 == 0 and time.monotonic() > deadline:
                return SolveResult(Status.UNKNOWN, reason="time-budget")

            if len(self.trail_lim) < len(self.assumptions):
                a = self.assumptions[len(self.trail_lim)]
                val = self.lit_val[a]
                if val == 1:
                    self.trail_lim.append(len(self.trail))
                    continue
                if val == 0:
                    return SolveResult(Status.UNSAT)
                self.trail_lim.append(len(self.trail))
                self._assign(a, _NO_REASON)
                continue

            code = self._pick_branch()
            if code < 0:
                vals = [False] * (self.nvars + 1)
                for v in range(1, self.nvars + 1):
                    vals[v] = self.lit_val[v << 1] == 1
                return SolveResult(Status.SAT, model=Model(vals))
            self.trail_lim.append(len(self.trail))
            self._assign(code, _NO_REASON)


def solve(
    formula: CnfFormula,
    opts: SolverOptions | None = None,
    assumptions: Sequence[Lit] = (),
) -> SolveResult:
    """Solve one formula.  Deterministic for fixed (formula, opts, assumptions)."""
    return _Engine(formula, opts or SolverOptions(), assumptions).solve()


def enumerate_models(
    formula: CnfFormula,
    scope: Sequence[int],
    limit: int,
    opts: SolverOptions | None = None,
) -> list[Model]:
    """Models pairwise distinct on `scope`, at most `limit` of them.

    Each round re-encodes: the previous model's blocking clause over the
    scope is appended to a copy of the formula and the solver runs fresh.
    """
    if not scope:
        raise ValueError("enumeration scope must be non-empty")
    if limit <= 0:
        return []
    work = formula.copy()
    models: list[Model] = []
    while len(models) < limit:
        res = solve(work, opts)
        if res.status is Status.UNKNOWN:
            raise BudgetExhaustedError(
                f"budget exhausted after {len(models)} models ({res.reason})"
            )
        if res.status is Status.UNSAT:
            break
        assert res.model is not None
        models.append(res.model)
        work.add_clause(blocking_clause(res.model, scope))
    return models
