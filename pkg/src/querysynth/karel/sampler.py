"""Seeded random program generation for the Karel DSL."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ast import ACTIONS, CONDITIONS, ActionStmt, Cond, If, IfElse, KarelProgram, Repeat, Stmt, While


@dataclass(frozen=True)
class ProgramBounds:
    """Shape limits and grammar restrictions shared by sampler and enumerator.

    max_depth is the remaining control-nesting allowance; max_depth 0 with
    max_stmts 1 yields a single action.  repeat_counts and allow_not restrict
    the grammar so that sampled programs stay inside an enumerable space.
    """

    max_depth: int = 2
    max_stmts: int = 4
    control_prob: float = 0.35
    repeat_counts: tuple[int, ...] = tuple(range(20))
    allow_not: bool = True

    def __post_init__(self) -> None:
        if self.max_depth < 0 or self.max_stmts < 1:
            raise ValueError("bounds must allow at least one statement")
        if any(not (0 <= n <= 19) for n in self.repeat_counts):
            raise ValueError("repeat counts outside 0..19")


def sample_condition(rng: random.Random, bounds: ProgramBounds) -> Cond:
    name = rng.choice(CONDITIONS)
    negated = bounds.allow_not and rng.random() < 0.2
    return Cond(name, negated)


def _sample_stmt(rng: random.Random, bounds: ProgramBounds, depth: int) -> Stmt:
    if depth > 0 and rng.random() < bounds.control_prob:
        kind = rng.choice(("if", "ifelse", "while", "repeat"))
        if kind == "if":
            return If(sample_condition(rng, bounds), _sample_body(rng, bounds, depth - 1))
        if kind == "ifelse":
            return IfElse(
                sample_condition(rng, bounds),
                _sample_body(rng, bounds, depth - 1),
                _sample_body(rng, bounds, depth - 1),
            )
        if kind == "while":
            return While(sample_condition(rng, bounds), _sample_body(rng, bounds, depth - 1))
        return Repeat(rng.choice(bounds.repeat_counts), _sample_body(rng, bounds, depth - 1))
    return ActionStmt(rng.choice(ACTIONS))


def _sample_body(rng: random.Random, bounds: ProgramBounds, depth: int) -> tuple[Stmt, ...]:
    n = rng.randint(1, bounds.max_stmts)
    return tuple(_sample_stmt(rng, bounds, depth) for _ in range(n))


def sample_program(rng: random.Random, bounds: ProgramBounds = ProgramBounds()) -> KarelProgram:
    """Draw a random program within the given bounds; deterministic per rng state."""
    return KarelProgram(body=_sample_body(rng, bounds, bounds.max_depth))
