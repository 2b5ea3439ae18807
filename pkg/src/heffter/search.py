"""Backtracking exact search for small shiftable (v, k; r) Heffter spaces.

Strategy: build class 1 as a partition of a candidate half-set, deciding
the sign of each magnitude lazily the first time it is placed, then build
classes 2..r under incremental orthogonality constraints (point pairs
already used together are tracked as bitmasks per magnitude).

Symmetry breaking keeps the enumeration canonical without losing
solvable instances:

* magnitude 1 is fixed positive (global negation maps solutions to
  solutions);
* each block starts at the smallest magnitude not yet covered by its
  class, and grows in increasing magnitude (a set needs one ordering);
* classes are required to be lexicographically decreasing (any solution
  can be reordered that way; decreasing, not increasing, because the
  block holding magnitude 1 forces later classes toward lexicographically
  smaller tuples, so this direction lets the constraint bind early
  instead of exhausting doomed subtrees).

Pruning: per-block positive/negative quotas (k/2 each) and interval
bounds on the achievable completion sum.  A single search runs strictly
sequentially and is deterministic: identical problems give identical
outcomes, node counts included, and growing the budget never changes a
result already returned under a smaller one.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

from .core import (
    MAX_POINT,
    Block,
    ConstructionFault,
    HeffterSpace,
    HeffterSystem,
    ParameterError,
    validate_heffter_space,
)


class SearchMode(Enum):
    FIRST_SOLUTION = "first_solution"
    COUNT_UP_TO_LIMIT = "count_up_to_limit"


class SearchStatus(Enum):
    FOUND = "found"
    EXHAUSTED_NO_SOLUTION = "exhausted_no_solution"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SearchProblem:
    """Search target: shiftable (v, k; r) spaces only, so k must be even."""

    v: int
    k: int
    r: int
    time_budget: float = 60.0
    node_limit: int | None = None
    mode: SearchMode = SearchMode.FIRST_SOLUTION

    def __post_init__(self) -> None:
        for name, value in (("v", self.v), ("k", self.k), ("r", self.r)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ParameterError(f"{name} must be a positive integer, got {value!r}")
        if self.v > MAX_POINT:
            raise ParameterError(f"v must be <= {MAX_POINT}")
        if self.k % 2 != 0:
            raise ParameterError(f"k must be even (blocks need k/2 positives), got k={self.k}")
        if self.v % self.k != 0:
            raise ParameterError(f"k={self.k} does not divide v={self.v}")
        if not (isinstance(self.time_budget, (int, float)) and self.time_budget > 0):
            raise ParameterError(f"time budget must be positive, got {self.time_budget!r}")
        if self.node_limit is not None and (not isinstance(self.node_limit, int) or self.node_limit < 1):
            raise ParameterError(f"node limit must be a positive integer, got {self.node_limit!r}")
        if not isinstance(self.mode, SearchMode):
            raise ParameterError(f"mode must be a SearchMode, got {self.mode!r}")


@dataclass(frozen=True)
class SearchOutcome:
    """Result of one search run.

    `solutions_found` counts canonical solutions seen (at most 1 in
    FIRST_SOLUTION mode); `solution` is the first one.  `best_depth` is a
    diagnostic: the deepest point reached, measured in placed elements
    across classes.  `elapsed` is wall-clock and excluded from equality.
    """

    status: SearchStatus
    solution: HeffterSpace | None
    nodes_explored: int
    elapsed: float = field(default=0.0, compare=False)
    solutions_found: int = 0
    best_depth: int = 0


class _Budget(Exception):
    pass


class _Found(Exception):
    pass


_BUDGET_CHECK_EVERY = 1024


class _Searcher:
    def __init__(self, problem: SearchProblem):
        self.p = problem
        self.v, self.k, self.r = problem.v, problem.k, problem.r
        self.half = self.k // 2
        self.full = (1 << (self.v + 1)) - 2  # bits 1..v
        self.sign = [0] * (self.v + 1)
        self.sign[1] = 1
        self.pair = [0] * (self.v + 1)  # pair[m]: magnitudes already blocked with m
        self.done: list[tuple[tuple[int, ...], ...]] = []
        self.cur: list[tuple[int, ...]] = []
        self.nodes = 0
        self.best_depth = 0
        self.count = 0
        self.first: HeffterSpace | None = None
        self.truncated = False
        self.t0 = 0.0

    def run(self) -> SearchOutcome:
        self.t0 = time.monotonic()
        try:
            self._class_step(0, 0, False)
        except _Budget:
            self.truncated = True
        except _Found:
            pass
        elapsed = time.monotonic() - self.t0
        if self.truncated:
            status = SearchStatus.BUDGET_EXCEEDED
        elif self.count > 0:
            status = SearchStatus.FOUND
        else:
            status = SearchStatus.EXHAUSTED_NO_SOLUTION
        return SearchOutcome(
            status=status,
            solution=self.first,
            nodes_explored=self.nodes,
            elapsed=elapsed,
            solutions_found=self.count,
            best_depth=self.best_depth,
        )

    # -- enumeration --------------------------------------------------

    def _class_step(self, ci: int, used: int, tie: bool) -> None:
        if used == self.full:
            if ci == self.r - 1:
                self._record_solution()
                return
            cls = tuple(self.cur)
            self.done.append(cls)
            added = self._add_pairs(cls)
            outer = self.cur
            self.cur = []
            self._class_step(ci + 1, 0, True)
            self.cur = outer
            self._remove_pairs(added)
            self.done.pop()
            return
        free = ~used & self.full
        m = (free & -free).bit_length() - 1  # smallest uncovered magnitude
        if ci == 0 and self.sign[m] == 0:
            for sgn in (1, -1):
                self.sign[m] = sgn
                self._begin_block(ci, used, m, sgn, tie)
            self.sign[m] = 0
        else:
            self._begin_block(ci, used, m, self.sign[m], tie)

    def _begin_block(self, ci: int, used: int, m: int, sgn: int, tie: bool) -> None:
        pos = 1 if sgn > 0 else 0
        total = m * sgn
        nused = used | (1 << m)
        if not self._can_finish(ci, nused, m, total, self.k - 1, self.half - pos):
            return
        self._tick(ci, nused)
        self._extend(ci, nused, [total], 1 << m, m, total, pos, tie)

    def _extend(
        self,
        ci: int,
        used: int,
        blk: list[int],
        blk_mask: int,
        last: int,
        total: int,
        pos: int,
        tie: bool,
    ) -> None:
        if len(blk) == self.k - 1:
            self._final_slot(ci, used, blk, blk_mask, last, total, pos, tie)
            return
        neg_room = self.k - self.half
        for m in range(last + 1, self.v + 1):
            bit = 1 << m
            if used & bit:
                continue
            if ci > 0 and self.pair[m] & blk_mask:
                continue
            lazy = ci == 0 and self.sign[m] == 0
            for sgn in (1, -1) if lazy else (self.sign[m],):
                if sgn > 0:
                    if pos >= self.half:
                        continue
                    npos = pos + 1
                else:
                    if len(blk) - pos >= neg_room:
                        continue
                    npos = pos
                ntotal = total + m * sgn
                if not self._can_finish(ci, used | bit, m, ntotal, self.k - len(blk) - 1, self.half - npos):
                    continue
                if lazy:
                    self.sign[m] = sgn
                blk.append(m * sgn)
                self._tick(ci, used | bit)
                self._extend(ci, used | bit, blk, blk_mask | bit, m, ntotal, npos, tie)
                blk.pop()
                if lazy:
                    self.sign[m] = 0

    def _final_slot(
        self,
        ci: int,
        used: int,
        blk: list[int],
        blk_mask: int,
        last: int,
        total: int,
        pos: int,
        tie: bool,
    ) -> None:
        """The last element of a block is forced: it must equal -total."""
        elem = -total
        m = elem if elem > 0 else -elem
        if m <= last or m > self.v:
            return
        if (pos + 1 if elem > 0 else pos) != self.half:
            return
        bit = 1 << m
        if used & bit:
            return
        if ci > 0 and self.pair[m] & blk_mask:
            return
        want = 1 if elem > 0 else -1
        lazy = ci == 0 and self.sign[m] == 0
        if not lazy and self.sign[m] != want:
            return
        if lazy:
            self.sign[m] = want
        blk.append(elem)
        self._tick(ci, used | bit)
        self._close_block(ci, used | bit, blk, tie)
        blk.pop()
        if lazy:
            self.sign[m] = 0

    def _close_block(self, ci: int, used: int, blk: list[int], tie: bool) -> None:
        block = tuple(blk)
        if ci > 0 and tie:
            prev = self.done[ci - 1][len(self.cur)]
            if block > prev:
                return  # class would sort above the previous one
            tie = block == prev
        self.cur.append(block)
        self._class_step(ci, used, tie)
        self.cur.pop()

    def _can_finish(self, ci: int, used: int, last: int, total: int, slots: int, qpos: int) -> bool:
        """Can `slots` more magnitudes above `last` cancel `total` with
        exactly `qpos` of them positive?  Interval bound, sign pools fixed
        for classes past the first."""
        if slots == 0:
            return total == 0 and qpos == 0
        qneg = slots - qpos
        if qpos < 0 or qneg < 0:
            return False
        if ci == 0:
            avail = [m for m in range(last + 1, self.v + 1) if not used & (1 << m)]
            if len(avail) < slots:
                return False
            hi = sum(avail[len(avail) - qpos:]) - sum(avail[:qneg])
            lo = sum(avail[:qpos]) - sum(avail[len(avail) - qneg:])
            return lo <= -total <= hi
        pos_pool: list[int] = []
        neg_pool: list[int] = []
        for m in range(last + 1, self.v + 1):
            if used & (1 << m):
                continue
            (pos_pool if self.sign[m] > 0 else neg_pool).append(m)
        if len(pos_pool) < qpos or len(neg_pool) < qneg:
            return False
        hi = sum(pos_pool[len(pos_pool) - qpos:]) - sum(neg_pool[:qneg])
        lo = sum(pos_pool[:qpos]) - sum(neg_pool[len(neg_pool) - qneg:])
        return lo <= -total <= hi

    # -- bookkeeping --------------------------------------------------

    def _add_pairs(self, cls: tuple[tuple[int, ...], ...]) -> list[tuple[int, int]]:
        added = []
        for block in cls:
            mags = [abs(x) for x in block]
            for i in range(len(mags)):
                for j in range(i + 1, len(mags)):
                    a, b = mags[i], mags[j]
                    self.pair[a] |= 1 << b
                    self.pair[b] |= 1 << a
                    added.append((a, b))
        return added

    def _remove_pairs(self, added: list[tuple[int, int]]) -> None:
        for a, b in added:
            self.pair[a] &= ~(1 << b)
            self.pair[b] &= ~(1 << a)

    def _tick(self, ci: int, used: int) -> None:
        self.nodes += 1
        depth = ci * self.v + used.bit_count()
        if depth > self.best_depth:
            self.best_depth = depth
        if self.p.node_limit is not None and self.nodes >= self.p.node_limit:
            raise _Budget()
        if self.nodes % _BUDGET_CHECK_EVERY == 0:
            if time.monotonic() - self.t0 > self.p.time_budget:
                raise _Budget()

    def _record_solution(self) -> None:
        classes = [*self.done, tuple(self.cur)]
        systems = tuple(
            HeffterSystem(self.v, self.k, tuple(Block(b) for b in cls)) for cls in classes
        )
        space = HeffterSpace(
            self.v,
            self.k,
            self.r,
            systems,
            shiftable=True,
            provenance=f"search:{self.v},{self.k},{self.r}",
        )
        report = validate_heffter_space(space, require_shiftable=True)
        if not report.ok:
            raise ConstructionFault(f"search produced an invalid space: {report.failures()[0].line()}")
        self.count += 1
        if self.first is None:
            self.first = space
        if self.p.mode is SearchMode.FIRST_SOLUTION:
            raise _Found()


def search_heffter_space(problem: SearchProblem) -> SearchOutcome:
    """Run the exact search for `problem`; see the module docstring for
    the enumeration order and determinism guarantees."""
    return _Searcher(problem).run()
