"""Seeded sampling of list-DSL programs and inputs, plus the start signal."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .functions import FUNCTIONS, FUNCTIONS_BY_NAME, LAMBDA_NAMES
from .program import ListProgram, Statement, has_dead_code
from .values import INT, INT_MAX, INT_MIN, LIST, MAX_LIST_LEN, NULL, Value


@dataclass(frozen=True)
class ListSamplerConfig:
    max_statements: int = 3
    max_inputs: int = 3
    min_list_len: int = 0
    max_list_len: int = MAX_LIST_LEN
    int_low: int = INT_MIN
    int_high: int = INT_MAX

    def __post_init__(self) -> None:
        if self.max_statements < 1:
            raise ValueError("need at least one statement")
        if not (1 <= self.max_inputs <= 3):
            raise ValueError("programs take 1..3 inputs")
        if not (0 <= self.min_list_len <= self.max_list_len <= MAX_LIST_LEN):
            raise ValueError("bad list length bounds")
        if not (INT_MIN <= self.int_low <= self.int_high <= INT_MAX):
            raise ValueError("bad int bounds")


def list_start_signal(n_inputs: int) -> tuple[Value, ...]:
    """The protocol start input: every slot NULL."""
    return (NULL,) * n_inputs


def sample_input_types(rng: random.Random, cfg: ListSamplerConfig) -> tuple[str, ...]:
    # At least one LIST slot; every function consumes a list somewhere.
    n = rng.randint(1, cfg.max_inputs)
    types = [rng.choice((INT, LIST)) for _ in range(n)]
    if LIST not in types:
        types[rng.randrange(n)] = LIST
    return tuple(types)


def _sample_statement(
    rng: random.Random, types: list[str], must_use: int | None = None
) -> Statement | None:
    """One random well-typed statement; if must_use is set, that variable
    appears among the arguments."""
    usable = []
    for spec in FUNCTIONS:
        if any(t not in types for t in set(spec.arg_types)):
            continue
        if must_use is not None and types[must_use] not in spec.arg_types:
            continue
        usable.append(spec)
    if not usable:
        return None
    spec = rng.choice(usable)
    args = [rng.choice([i for i, t in enumerate(types) if t == want]) for want in spec.arg_types]
    if must_use is not None and must_use not in args:
        slots = [p for p, want in enumerate(spec.arg_types) if want == types[must_use]]
        args[rng.choice(slots)] = must_use
    lam = rng.choice(LAMBDA_NAMES[spec.lambda_kind]) if spec.lambda_kind else None
    return Statement(func=spec.name, lam=lam, args=tuple(args))


def sample_list_program(
    rng: random.Random,
    cfg: ListSamplerConfig = ListSamplerConfig(),
    n_statements: int | None = None,
    input_types: tuple[str, ...] | None = None,
) -> ListProgram:
    """Draw a well-typed program with no dead statements.

    Rejection-samples whole programs; if acceptance stalls, chains every
    statement through the previous variable, which cannot leave dead code.
    """
    length = n_statements if n_statements is not None else rng.randint(1, cfg.max_statements)
    for _ in range(200):
        types = list(input_types) if input_types else list(sample_input_types(rng, cfg))
        n_in = len(types)
        statements = []
        for _ in range(length):
            stmt = _sample_statement(rng, types)
            if stmt is None:
                break
            statements.append(stmt)
            types.append(FUNCTIONS_BY_NAME[stmt.func].ret_type)
        if len(statements) != length:
            continue
        prog = ListProgram(tuple(types[:n_in]), tuple(statements))
        if not has_dead_code(prog):
            return prog
    # Chained fallback: statement i must consume variable i-1's result.
    types = list(input_types) if input_types else list(sample_input_types(rng, cfg))
    n_in = len(types)
    statements = []
    for i in range(length):
        must_use = n_in + i - 1 if i > 0 else None
        stmt = _sample_statement(rng, types, must_use=must_use)
        if stmt is None:  # cannot happen: TAKE/DROP consume INT, plenty consume LIST
            raise RuntimeError("statement sampling wedged")
        statements.append(stmt)
        types.append(FUNCTIONS_BY_NAME[stmt.func].ret_type)
    prog = ListProgram(tuple(types[:n_in]), tuple(statements))
    assert not has_dead_code(prog)
    return prog


def sample_value(rng: random.Random, slot_type: str, cfg: ListSamplerConfig,
                 list_len: int | None = None) -> Value:
    if slot_type == INT:
        return rng.randint(cfg.int_low, cfg.int_high)
    n = list_len if list_len is not None else rng.randint(cfg.min_list_len, cfg.max_list_len)
    return tuple(rng.randint(cfg.int_low, cfg.int_high) for _ in range(n))


def sample_list_input(
    rng: random.Random,
    input_types: tuple[str, ...],
    cfg: ListSamplerConfig = ListSamplerConfig(),
    list_len: int | None = None,
) -> tuple[Value, ...]:
    """Concrete values for each slot; list_len pins every list's length."""
    return tuple(sample_value(rng, t, cfg, list_len) for t in input_types)
