"""AST node types and canonical pretty-printer for the Karel grid-world DSL.

A program is ``def run():`` followed by a body of statements.  Statements are
actions, conditionals (``if`` / ``ifelse``), and loops (``while`` / ``repeat``).
Conditions are agent-relative sensor checks, optionally negated with ``not``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

ACTIONS = ("move", "turnLeft", "turnRight", "pickMarker", "putMarker")

CONDITIONS = (
    "frontIsClear",
    "leftIsClear",
    "rightIsClear",
    "markersPresent",
    "noMarkersPresent",
)

REPEAT_MIN = 0
REPEAT_MAX = 19


@dataclass(frozen=True)
class Cond:
    """A sensor check, optionally negated."""

    name: str
    negated: bool = False

    def __post_init__(self) -> None:
        if self.name not in CONDITIONS:
            raise ValueError(f"unknown condition {self.name!r}")


@dataclass(frozen=True)
class ActionStmt:
    name: str

    def __post_init__(self) -> None:
        if self.name not in ACTIONS:
            raise ValueError(f"unknown action {self.name!r}")


@dataclass(frozen=True)
class If:
    cond: Cond
    body: tuple["Stmt", ...]


@dataclass(frozen=True)
class IfElse:
    cond: Cond
    then_body: tuple["Stmt", ...]
    else_body: tuple["Stmt", ...]


@dataclass(frozen=True)
class While:
    cond: Cond
    body: tuple["Stmt", ...]


@dataclass(frozen=True)
class Repeat:
    count: int
    body: tuple["Stmt", ...]

    def __post_init__(self) -> None:
        if not (REPEAT_MIN <= self.count <= REPEAT_MAX):
            raise ValueError(f"repeat count {self.count} outside {REPEAT_MIN}..{REPEAT_MAX}")


Stmt = Union[ActionStmt, If, IfElse, While, Repeat]


@dataclass(frozen=True)
class KarelProgram:
    """A whole program; the body may be empty (a no-op run)."""

    body: tuple[Stmt, ...]


def pretty(prog: KarelProgram) -> str:
    """Render a program in canonical concrete syntax.

    Multi-statement bodies nested under a control statement are brace-grouped;
    the top-level body is a bare semicolon-joined sequence.  ``parse_karel``
    of the result reproduces the AST exactly.
    """
    if not prog.body:
        return "def run():"
    return "def run(): " + "; ".join(_stmt(s) for s in prog.body)


def _cond(c: Cond) -> str:
    base = f"{c.name}()"
    return f"not {base}" if c.negated else base


def _block(body: tuple[Stmt, ...]) -> str:
    # Grouping is only needed when a nested body holds several statements.
    if len(body) == 1:
        return _stmt(body[0])
    return "{ " + "; ".join(_stmt(s) for s in body) + " }"


def _stmt(s: Stmt) -> str:
    if isinstance(s, ActionStmt):
        return f"{s.name}()"
    if isinstance(s, If):
        return f"if({_cond(s.cond)}): {_block(s.body)}"
    if isinstance(s, IfElse):
        return f"ifelse({_cond(s.cond)}): {_block(s.then_body)} else: {_block(s.else_body)}"
    if isinstance(s, While):
        return f"while({_cond(s.cond)}): {_block(s.body)}"
    if isinstance(s, Repeat):
        return f"repeat({s.count}): {_block(s.body)}"
    raise TypeError(f"not a statement: {s!r}")


def control_statement_count(prog: KarelProgram) -> int:
    """Number of control nodes (if/ifelse/while/repeat) in the program."""

    def walk(body: tuple[Stmt, ...]) -> int:
        n = 0
        for s in body:
            if isinstance(s, (If, While, Repeat)):
                n += 1 + walk(s.body)
            elif isinstance(s, IfElse):
                n += 1 + walk(s.then_body) + walk(s.else_body)
        return n

    return walk(prog.body)


def program_size(prog: KarelProgram) -> int:
    """Statement-node count: every action and control statement counts 1."""

    def walk(body: tuple[Stmt, ...]) -> int:
        n = 0
        for s in body:
            n += 1
            if isinstance(s, (If, While, Repeat)):
                n += walk(s.body)
            elif isinstance(s, IfElse):
                n += walk(s.then_body) + walk(s.else_body)
        return n

    return walk(prog.body)
