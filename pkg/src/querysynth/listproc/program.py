"""Straight-line list-DSL programs: structure, text format, and interpreter.

A program declares 1..3 typed input slots and a sequence of statements; each
statement applies one function to earlier variables and binds the next
variable.  The last statement's variable is the output.  Text format is one
line per variable:

    v1 = INPUT LIST
    v2 = INPUT INT
    v3 = MAP (+1) v1
    v4 = TAKE v2 v3
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .functions import FUNCTIONS_BY_NAME, LAMBDA_NAMES, FunctionSpec, apply_function
from .values import INT, LIST, NULL, Value, check_value, is_null, value_type

MAX_INPUTS = 3


class ListProgramError(ValueError):
    pass


@dataclass(frozen=True)
class Statement:
    """One binding: function name, optional lambda token, argument var indices."""

    func: str
    lam: str | None
    args: tuple[int, ...]


@dataclass(frozen=True)
class ListProgram:
    input_types: tuple[str, ...]
    statements: tuple[Statement, ...]

    @property
    def var_count(self) -> int:
        return len(self.input_types) + len(self.statements)


def _spec(name: str) -> FunctionSpec:
    spec = FUNCTIONS_BY_NAME.get(name)
    if spec is None:
        raise ListProgramError(f"unknown function {name!r}")
    return spec


@lru_cache(maxsize=65536)
def infer_types(prog: ListProgram) -> tuple[str, ...]:
    """Type of every variable; raises ListProgramError on any violation."""
    if not (1 <= len(prog.input_types) <= MAX_INPUTS):
        raise ListProgramError("programs take 1..3 inputs")
    if any(t not in (INT, LIST) for t in prog.input_types):
        raise ListProgramError("input slots must be INT or LIST")
    if not prog.statements:
        raise ListProgramError("programs need at least one statement")
    types = list(prog.input_types)
    for i, stmt in enumerate(prog.statements):
        spec = _spec(stmt.func)
        if (spec.lambda_kind is None) != (stmt.lam is None):
            raise ListProgramError(f"{stmt.func} lambda mismatch")
        if stmt.lam is not None and stmt.lam not in LAMBDA_NAMES[spec.lambda_kind]:
            raise ListProgramError(f"{stmt.lam!r} is not a {spec.lambda_kind}")
        if len(stmt.args) != len(spec.arg_types):
            raise ListProgramError(f"{stmt.func} takes {len(spec.arg_types)} args")
        for pos, var in enumerate(stmt.args):
            if not (0 <= var < len(types)):
                raise ListProgramError(
                    f"statement {i + 1} references v{var + 1} before definition"
                )
            if types[var] != spec.arg_types[pos]:
                raise ListProgramError(
                    f"{stmt.func} arg {pos + 1} wants {spec.arg_types[pos]}, "
                    f"v{var + 1} is {types[var]}"
                )
        types.append(spec.ret_type)
    return tuple(types)


def output_type(prog: ListProgram) -> str:
    return infer_types(prog)[-1]


def contributing_statements(prog: ListProgram) -> set[int]:
    """Indices of statements on a dataflow path to the output variable."""
    n_in = len(prog.input_types)
    needed_vars = {prog.var_count - 1}
    contributing: set[int] = set()
    for i in range(len(prog.statements) - 1, -1, -1):
        var = n_in + i
        if var in needed_vars:
            contributing.add(i)
            needed_vars.update(prog.statements[i].args)
    return contributing


def has_dead_code(prog: ListProgram) -> bool:
    return len(contributing_statements(prog)) != len(prog.statements)


def execute_list(prog: ListProgram, inputs: tuple[Value, ...]) -> Value:
    """Run the program; NULL propagates and partial cases return NULL."""
    return execute_list_trace(prog, inputs)[-1]


def execute_list_trace(prog: ListProgram, inputs: tuple[Value, ...]) -> list[Value]:
    """Run the program and return the value of every variable in order."""
    infer_types(prog)
    if len(inputs) != len(prog.input_types):
        raise ListProgramError(
            f"program takes {len(prog.input_types)} inputs, got {len(inputs)}"
        )
    env: list[Value] = []
    for slot, (declared, v) in enumerate(zip(prog.input_types, inputs)):
        check_value(v)
        if not is_null(v) and value_type(v) != declared:
            raise ListProgramError(f"input {slot + 1} should be {declared}")
        env.append(v)
    for stmt in prog.statements:
        spec = FUNCTIONS_BY_NAME[stmt.func]
        args = tuple(env[i] for i in stmt.args)
        if any(is_null(a) for a in args):
            env.append(NULL)
        else:
            env.append(apply_function(spec, stmt.lam, args))
    return env


_INPUT_RE = re.compile(r"^(v\d+)\s*=\s*INPUT\s+(INT|LIST)$")
_BIND_RE = re.compile(r"^(v\d+)\s*=\s*(.+)$")


def pretty_list_program(prog: ListProgram) -> str:
    lines = []
    for i, t in enumerate(prog.input_types):
        lines.append(f"v{i + 1} = INPUT {t}")
    n_in = len(prog.input_types)
    for i, stmt in enumerate(prog.statements):
        parts = [f"v{n_in + i + 1} =", stmt.func]
        if stmt.lam is not None:
            parts.append(f"({stmt.lam})")
        parts.extend(f"v{a + 1}" for a in stmt.args)
        lines.append(" ".join(parts))
    return "\n".join(lines)


def _parse_statement(rhs: str, lineno: int) -> Statement:
    parts = rhs.split(None, 1)
    func = parts[0]
    rest = parts[1].strip() if len(parts) > 1 else ""
    spec = FUNCTIONS_BY_NAME.get(func)
    if spec is None:
        raise ListProgramError(f"line {lineno}: unknown function {func!r}")
    lam = None
    if spec.lambda_kind is not None:
        # Lambda tokens may themselves contain parens, e.g. (*(-1)); match
        # against the known token set rather than scanning for a close paren.
        for candidate in LAMBDA_NAMES[spec.lambda_kind]:
            wrapped = f"({candidate})"
            if rest.startswith(wrapped):
                lam = candidate
                rest = rest[len(wrapped):].strip()
                break
        if lam is None:
            raise ListProgramError(f"line {lineno}: {func} needs a {spec.lambda_kind}")
    args = []
    for tok in rest.split():
        if not re.fullmatch(r"v\d+", tok):
            raise ListProgramError(f"line {lineno}: bad argument {tok!r}")
        args.append(int(tok[1:]) - 1)
    return Statement(func=func, lam=lam, args=tuple(args))


def parse_list_program(text: str) -> ListProgram:
    """Parse the text format back into a program; validates typing."""
    input_types: list[str] = []
    statements: list[Statement] = []
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ListProgramError("empty program text")
    for lineno, line in enumerate(lines, start=1):
        m = _INPUT_RE.match(line)
        if m:
            if statements:
                raise ListProgramError(f"line {lineno}: inputs must come first")
            if m.group(1) != f"v{len(input_types) + 1}":
                raise ListProgramError(f"line {lineno}: inputs must be numbered in order")
            input_types.append(m.group(2))
            continue
        m = _BIND_RE.match(line)
        if m is None:
            raise ListProgramError(f"line {lineno}: cannot parse {line!r}")
        out, rhs = m.groups()
        expected = f"v{len(input_types) + len(statements) + 1}"
        if out != expected:
            raise ListProgramError(f"line {lineno}: expected {expected} on the left")
        statements.append(_parse_statement(rhs, lineno))
    prog = ListProgram(input_types=tuple(input_types), statements=tuple(statements))
    infer_types(prog)
    return prog
