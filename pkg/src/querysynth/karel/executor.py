"""Deterministic executor for Karel programs with two crash-handling modes.

In "halt" mode the first faulting action aborts the run with a crash reason.
In "stay_still" mode a faulting action leaves the world unchanged and the run
continues, so the outcome is always Ok or Timeout.  Both actions and sensor
checks count against a shared call budget; exhausting it is a Timeout.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .ast import ActionStmt, Cond, If, IfElse, KarelProgram, Repeat, Stmt, While
from .world import GRID_SIZE, KarelWorld, MAX_MARKERS, OBSTACLE, left_facing, right_facing

_DELTAS = {"N": (-1, 0), "S": (1, 0), "W": (0, -1), "E": (0, 1)}

CALL_BUDGET = 100_000

HALT = "halt"
STAY_STILL = "stay_still"


class Outcome(Enum):
    OK = "ok"
    CRASH = "crash"
    TIMEOUT = "timeout"


class CrashReason(Enum):
    PICK_EMPTY = "PickEmpty"
    PUT_OVERFLOW = "PutOverflow"
    HIT_OBSTACLE_OR_BOUNDARY = "HitObstacleOrBoundary"
    INFINITE_LOOP = "InfiniteLoop"


@dataclass(frozen=True)
class ExecOutcome:
    """Result of one run.  ``world`` is populated only for OK outcomes."""

    status: Outcome
    reason: CrashReason | None
    api_calls: int
    world: KarelWorld | None

    @property
    def ok(self) -> bool:
        return self.status is Outcome.OK


@dataclass(frozen=True)
class CoverageTrace:
    """Branch sites visited during a run.

    Every control statement owns two sites: ("enter") when its body runs and
    ("skip") when it does not (the else arm for ifelse, the guard-false exit
    for loops).  Site ids are (preorder control index, arm).
    """

    visited: frozenset[tuple[int, str]]
    total_sites: int

    @property
    def ratio(self) -> float:
        if self.total_sites == 0:
            return 1.0
        return len(self.visited) / self.total_sites


class _Crash(Exception):
    def __init__(self, reason: CrashReason):
        self.reason = reason


class _Timeout(Exception):
    pass


class _Machine:
    def __init__(self, world: KarelWorld, mode: str, detect_cycles: bool = False):
        self.grid = [list(row) for row in world.grid]
        self.row = world.agent_row
        self.col = world.agent_col
        self.facing = world.facing
        self.mode = mode
        self.detect_cycles = detect_cycles
        self.calls = 0
        self.visited: set[tuple[int, str]] = set()

    def _state_key(self) -> tuple:
        return (self.row, self.col, self.facing, tuple(map(tuple, self.grid)))

    def _tick(self) -> None:
        self.calls += 1
        if self.calls >= CALL_BUDGET:
            raise _Timeout()

    def check(self, cond: Cond) -> bool:
        self._tick()
        if cond.name == "frontIsClear":
            value = self._clear(0)
        elif cond.name == "leftIsClear":
            value = self._clear(1)
        elif cond.name == "rightIsClear":
            value = self._clear(-1)
        elif cond.name == "markersPresent":
            value = self.grid[self.row][self.col] > 0
        else:  # noMarkersPresent
            value = self.grid[self.row][self.col] == 0
        return value != cond.negated

    def _clear(self, turn: int) -> bool:
        facing = self.facing
        if turn == 1:
            facing = left_facing(facing)
        elif turn == -1:
            facing = right_facing(facing)
        dr, dc = _DELTAS[facing]
        r, c = self.row + dr, self.col + dc
        if not (0 <= r < GRID_SIZE and 0 <= c < GRID_SIZE):
            return False
        return self.grid[r][c] != OBSTACLE

    def act(self, name: str) -> None:
        self._tick()
        try:
            if name == "move":
                if not self._clear(0):
                    raise _Crash(CrashReason.HIT_OBSTACLE_OR_BOUNDARY)
                dr, dc = _DELTAS[self.facing]
                self.row += dr
                self.col += dc
            elif name == "turnLeft":
                self.facing = left_facing(self.facing)
            elif name == "turnRight":
                self.facing = right_facing(self.facing)
            elif name == "pickMarker":
                if self.grid[self.row][self.col] == 0:
                    raise _Crash(CrashReason.PICK_EMPTY)
                self.grid[self.row][self.col] -= 1
            elif name == "putMarker":
                if self.grid[self.row][self.col] >= MAX_MARKERS:
                    raise _Crash(CrashReason.PUT_OVERFLOW)
                self.grid[self.row][self.col] += 1
            else:
                raise ValueError(f"unknown action {name!r}")
        except _Crash:
            if self.mode == HALT:
                raise
            # stay_still: the faulting action is a no-op.

    def snapshot(self) -> KarelWorld:
        return KarelWorld(
            grid=tuple(tuple(row) for row in self.grid),
            agent_row=self.row,
            agent_col=self.col,
            facing=self.facing,
        )

    def run_body(self, body: tuple[Stmt, ...], next_id: int) -> int:
        for stmt in body:
            next_id = self.run_stmt(stmt, next_id)
        return next_id

    def run_stmt(self, stmt: Stmt, site: int) -> int:
        if isinstance(stmt, ActionStmt):
            self.act(stmt.name)
            return site
        if isinstance(stmt, If):
            if self.check(stmt.cond):
                self.visited.add((site, "enter"))
                return self.run_body(stmt.body, site + 1)
            self.visited.add((site, "skip"))
            return site + 1 + _count_controls(stmt.body)
        if isinstance(stmt, IfElse):
            then_controls = _count_controls(stmt.then_body)
            if self.check(stmt.cond):
                self.visited.add((site, "enter"))
                self.run_body(stmt.then_body, site + 1)
            else:
                self.visited.add((site, "skip"))
                self.run_body(stmt.else_body, site + 1 + then_controls)
            return site + 1 + then_controls + _count_controls(stmt.else_body)
        if isinstance(stmt, While):
            # With detection on, a repeated loop-head state proves divergence:
            # the machine is deterministic and the state space finite, so the
            # budget guard would fire later with the same status, coverage
            # arms, and (absence of an) end world.  Crashes cannot hide past
            # the repeat point; the cycle already ran crash-free once.
            seen: set[tuple] | None = set() if self.detect_cycles else None
            while self.check(stmt.cond):
                self.visited.add((site, "enter"))
                if seen is not None:
                    key = self._state_key()
                    if key in seen:
                        raise _Timeout()
                    seen.add(key)
                self.run_body(stmt.body, site + 1)
            self.visited.add((site, "skip"))
            return site + 1 + _count_controls(stmt.body)
        if isinstance(stmt, Repeat):
            for _ in range(stmt.count):
                self.visited.add((site, "enter"))
                self.run_body(stmt.body, site + 1)
            # The exhausted counter is the loop's skip arm, mirroring while.
            self.visited.add((site, "skip"))
            return site + 1 + _count_controls(stmt.body)
        raise TypeError(f"not a statement: {stmt!r}")


def _count_controls(body: tuple[Stmt, ...]) -> int:
    n = 0
    for s in body:
        if isinstance(s, (If, While, Repeat)):
            n += 1 + _count_controls(s.body)
        elif isinstance(s, IfElse):
            n += 1 + _count_controls(s.then_body) + _count_controls(s.else_body)
    return n


def execute(
    prog: KarelProgram, world: KarelWorld, mode: str = STAY_STILL, detect_cycles: bool = False
) -> tuple[ExecOutcome, CoverageTrace]:
    """Run a program on a world and report the outcome and branch trace.

    detect_cycles turns on early loop-divergence detection: outcome status,
    crash reason, end world, and coverage arms are unchanged, only api_calls
    can come out lower than a full budget burn.  Off by default so the plain
    call-budget guard stays the reference semantics.
    """
    if mode not in (HALT, STAY_STILL):
        raise ValueError(f"unknown mode {mode!r}")
    machine = _Machine(world, mode, detect_cycles)
    total_sites = 2 * _count_controls(prog.body)
    try:
        machine.run_body(prog.body, 0)
        outcome = ExecOutcome(Outcome.OK, None, machine.calls, machine.snapshot())
    except _Crash as crash:
        outcome = ExecOutcome(Outcome.CRASH, crash.reason, machine.calls, None)
    except _Timeout:
        outcome = ExecOutcome(Outcome.TIMEOUT, CrashReason.INFINITE_LOOP, machine.calls, None)
    trace = CoverageTrace(visited=frozenset(machine.visited), total_sites=total_sites)
    return outcome, trace


def branch_coverage(
    prog: KarelProgram, worlds: list[KarelWorld], detect_cycles: bool = False
) -> CoverageTrace:
    """Union of branch sites visited over stay-still runs on each world."""
    visited: set[tuple[int, str]] = set()
    total = 2 * _count_controls(prog.body)
    for world in worlds:
        _, trace = execute(prog, world, STAY_STILL, detect_cycles)
        visited |= trace.visited
    return CoverageTrace(visited=frozenset(visited), total_sites=total)
