"""Domain adapters giving both DSLs one interface for querying and search.

A domain bundles: program and query-input sampling, the oracle's response
semantics, crash probing, canonical text forms, feature vectors for the
Gaussian encoders, and exhaustive enumeration in a fixed canonical order.
Query strategies, the synthesizer, and the experiment harness all speak to
domains through this surface and never branch on the DSL themselves.

Response conventions:
  - Robot programs answer with the stay-still end-of-run world, or the
    string sentinel TIMEOUT_RESPONSE when the call budget runs out.
  - List programs answer with the produced Value (NULL on any fault).
  - Crash probing uses halt-mode status for robot programs and the NULL
    response for list programs.

The start signal is a fixed protocol token, not evidence: the empty
centered world paired with itself, and the all-NULL input tuple paired
with NULL.  Consumers exclude it from consistency checks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .fspace.features import (
    KAREL_EXAMPLE_DIM,
    KAREL_PROGRAM_DIM,
    LIST_EXAMPLE_DIM,
    LIST_PROGRAM_DIM,
    TIMEOUT_RESPONSE,
    karel_example_features,
    karel_program_features,
    list_example_features,
    list_program_features,
)
from .karel.ast import (
    ACTIONS,
    CONDITIONS,
    ActionStmt,
    Cond,
    If,
    IfElse,
    KarelProgram,
    Repeat,
    Stmt,
    While,
    pretty,
    program_size,
)
from .karel.executor import HALT, STAY_STILL, Outcome, execute
from .karel.parser import parse_karel
from .karel.sampler import ProgramBounds, sample_program
from .karel.world import KarelWorld, WorldConfig, build_start_world, parse_world, sample_world, serialize_world
from .listproc.functions import FUNCTIONS, LAMBDA_NAMES
from .listproc.program import ListProgram, Statement, execute_list, parse_list_program, pretty_list_program
from .listproc.sampler import ListSamplerConfig, list_start_signal, sample_list_input, sample_list_program
from .listproc.values import LIST, NULL, Value, format_value, is_null, parse_value


@dataclass
class KarelDomain:
    """Grid-robot DSL adapter; queries are whole worlds."""

    bounds: ProgramBounds = field(default_factory=ProgramBounds)
    world_config: WorldConfig = field(default_factory=WorldConfig)
    probe_count: int = 10
    min_ok_probes: int = 1

    name = "karel"
    example_feature_dim = KAREL_EXAMPLE_DIM
    program_feature_dim = KAREL_PROGRAM_DIM

    def sample_program(self, rng: random.Random) -> KarelProgram:
        """Rejects programs that crash on nearly every probe world, so
        crash-filtered query sampling terminates quickly downstream."""
        while True:
            prog = sample_program(rng, self.bounds)
            probes = [sample_world(rng, self.world_config) for _ in range(self.probe_count)]
            ok = sum(not self.is_crash(prog, w) for w in probes)
            if ok >= self.min_ok_probes:
                return prog

    def sample_query_input(self, rng: random.Random) -> KarelWorld:
        return sample_world(rng, self.world_config)

    def respond(self, prog: KarelProgram, world: KarelWorld):
        outcome, _ = execute(prog, world, mode=STAY_STILL, detect_cycles=True)
        if outcome.status is Outcome.TIMEOUT:
            return TIMEOUT_RESPONSE
        return outcome.world

    def is_crash(self, prog: KarelProgram, world: KarelWorld) -> bool:
        outcome, _ = execute(prog, world, mode=HALT, detect_cycles=True)
        return outcome.status is not Outcome.OK

    def start_example(self):
        w = build_start_world()
        return w, w

    def serialize_query(self, world: KarelWorld) -> str:
        return serialize_world(world)

    def parse_query(self, text: str) -> KarelWorld:
        return parse_world(text)

    def serialize_response(self, response) -> str:
        if response == TIMEOUT_RESPONSE:
            return TIMEOUT_RESPONSE
        return serialize_world(response)

    def parse_response(self, text: str):
        if text == TIMEOUT_RESPONSE:
            return TIMEOUT_RESPONSE
        return parse_world(text)

    def program_text(self, prog: KarelProgram) -> str:
        return pretty(prog)

    def parse_program(self, text: str) -> KarelProgram:
        return parse_karel(text)

    def program_size(self, prog: KarelProgram) -> int:
        return program_size(prog)

    def example_features(self, query, response) -> np.ndarray:
        return karel_example_features(query, response)

    def program_features(self, prog: KarelProgram) -> np.ndarray:
        return karel_program_features(prog)

    def enumerate_programs(self, max_size: int):
        """All programs with statement-node count <= max_size, smallest
        first, each size stratum sorted by canonical text."""
        for size in range(1, max_size + 1):
            stratum = [KarelProgram(body) for body in _karel_sequences(size, self.bounds)]
            stratum.sort(key=pretty)
            yield from stratum


def _karel_conditions(bounds: ProgramBounds) -> list[Cond]:
    conds = [Cond(name) for name in CONDITIONS]
    if bounds.allow_not:
        conds += [Cond(name, negated=True) for name in CONDITIONS]
    return conds


def _karel_statements(size: int, bounds: ProgramBounds, memo: dict) -> list[Stmt]:
    key = ("stmt", size)
    if key in memo:
        return memo[key]
    out: list[Stmt] = []
    if size == 1:
        out.extend(ActionStmt(a) for a in ACTIONS)
    else:
        conds = _karel_conditions(bounds)
        bodies = _karel_sequences_memo(size - 1, bounds, memo)
        for cond in conds:
            for body in bodies:
                out.append(If(cond, body))
        for cond in conds:
            for body in bodies:
                out.append(While(cond, body))
        for count in bounds.repeat_counts:
            for body in bodies:
                out.append(Repeat(count, body))
        for split in range(1, size - 1):
            thens = _karel_sequences_memo(split, bounds, memo)
            elses = _karel_sequences_memo(size - 1 - split, bounds, memo)
            for cond in conds:
                for t in thens:
                    for e in elses:
                        out.append(IfElse(cond, t, e))
    memo[key] = out
    return out


def _karel_sequences_memo(size: int, bounds: ProgramBounds, memo: dict) -> list[tuple[Stmt, ...]]:
    key = ("seq", size)
    if key in memo:
        return memo[key]
    out: list[tuple[Stmt, ...]] = []
    for head_size in range(1, size + 1):
        for head in _karel_statements(head_size, bounds, memo):
            if head_size == size:
                out.append((head,))
            else:
                for tail in _karel_sequences_memo(size - head_size, bounds, memo):
                    out.append((head,) + tail)
    memo[key] = out
    return out


def _karel_sequences(size: int, bounds: ProgramBounds) -> list[tuple[Stmt, ...]]:
    return _karel_sequences_memo(size, bounds, {})


@dataclass
class ListDomain:
    """List DSL adapter; a task fixes the input signature up front."""

    input_types: tuple[str, ...] = (LIST,)
    sampler_config: ListSamplerConfig = field(default_factory=ListSamplerConfig)
    max_statements: int = 2
    min_statements: int = 1
    probe_count: int = 10
    min_ok_probes: int = 1
    query_list_len: int | None = None

    name = "list"
    example_feature_dim = LIST_EXAMPLE_DIM
    program_feature_dim = LIST_PROGRAM_DIM

    def __post_init__(self) -> None:
        if not self.input_types or LIST not in self.input_types:
            raise ValueError("need at least one LIST input slot")
        if not 1 <= self.min_statements <= self.max_statements:
            raise ValueError("need 1 <= min_statements <= max_statements")
        # programs longer than the featurizer window are fine to sample and
        # run; only program_features refuses them

    def sample_program(self, rng: random.Random) -> ListProgram:
        """Rejects programs that answer NULL on nearly every probe input."""
        while True:
            prog = sample_list_program(
                rng,
                self.sampler_config,
                n_statements=rng.randint(self.min_statements, self.max_statements),
                input_types=self.input_types,
            )
            probes = [self.sample_query_input(rng) for _ in range(self.probe_count)]
            ok = sum(not self.is_crash(prog, q) for q in probes)
            if ok >= self.min_ok_probes:
                return prog

    def sample_query_input(self, rng: random.Random) -> tuple[Value, ...]:
        return sample_list_input(rng, self.input_types, self.sampler_config, self.query_list_len)

    def respond(self, prog: ListProgram, inputs: tuple[Value, ...]) -> Value:
        return execute_list(prog, inputs)

    def is_crash(self, prog: ListProgram, inputs: tuple[Value, ...]) -> bool:
        return is_null(self.respond(prog, inputs))

    def start_example(self):
        return list_start_signal(len(self.input_types)), NULL

    def serialize_query(self, inputs: tuple[Value, ...]) -> str:
        return " | ".join(format_value(v) for v in inputs)

    def parse_query(self, text: str) -> tuple[Value, ...]:
        return tuple(parse_value(part.strip()) for part in text.split("|"))

    def serialize_response(self, response: Value) -> str:
        return format_value(response)

    def parse_response(self, text: str) -> Value:
        return parse_value(text)

    def program_text(self, prog: ListProgram) -> str:
        return pretty_list_program(prog)

    def parse_program(self, text: str) -> ListProgram:
        return parse_list_program(text)

    def program_size(self, prog: ListProgram) -> int:
        return len(prog.statements)

    def example_features(self, query, response) -> np.ndarray:
        return list_example_features(query, response)

    def program_features(self, prog: ListProgram) -> np.ndarray:
        return list_program_features(prog)

    def enumerate_programs(self, max_size: int):
        """All well-typed programs with 1..max_size statements over this
        signature, fewest statements first, then option order per slot:
        function, then lambda, then argument indices."""
        for length in range(1, max_size + 1):
            yield from self._enumerate_exact(length, tuple(self.input_types), ())

    def _enumerate_exact(self, remaining: int, var_types: tuple[str, ...], acc: tuple[Statement, ...]):
        if remaining == 0:
            yield ListProgram(self.input_types, acc)
            return
        for stmt in _list_statement_options(var_types):
            ret = _FUNC_RET[stmt.func]
            yield from self._enumerate_exact(remaining - 1, var_types + (ret,), acc + (stmt,))


_FUNC_RET = {spec.name: spec.ret_type for spec in FUNCTIONS}


def _list_statement_options(var_types: tuple[str, ...]) -> list[Statement]:
    options: list[Statement] = []
    for spec in FUNCTIONS:
        slots = []
        for t in spec.arg_types:
            slots.append([i for i, vt in enumerate(var_types) if vt == t])
        lams = LAMBDA_NAMES[spec.lambda_kind] if spec.lambda_kind else (None,)
        for lam in lams:
            for args in itertools.product(*slots):
                options.append(Statement(spec.name, lam, args))
    return options


def sample_noncrash_input(domain, prog, rng: random.Random):
    """Draws query inputs until one runs clean for the given program.

    Unbounded by design: domain program samplers reject programs that
    crash on nearly all inputs, so this terminates in a few draws.
    """
    tries = 0
    while True:
        tries += 1
        q = domain.sample_query_input(rng)
        if not domain.is_crash(prog, q):
            return q, tries
