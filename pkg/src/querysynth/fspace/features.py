"""Hand-rolled feature vectors for examples and programs in both domains.

Every featurizer returns a fixed-length float64 vector so the affine
encoders can consume histories of any content.  The layouts are plain
one-hots and scaled scalars; nothing here is learned.
"""

from __future__ import annotations

import math
import re

import numpy as np

from ..karel.ast import KarelProgram, pretty
from ..karel.world import GRID_SIZE, KarelWorld, cell_features
from ..listproc.functions import FUNCTIONS, LAMBDA_NAMES
from ..listproc.program import MAX_INPUTS, ListProgram
from ..listproc.values import INT_MAX, MAX_LIST_LEN, NULL, Value, is_null

_F = np.float64

# --- list domain -----------------------------------------------------------

# per value: [is_null, is_int, is_list, scaled int, squashed int, scaled len]
# + per-element scaled and squashed channels + presence mask.  The squashed
# channel (tanh of x/8) keeps small integers distinguishable; the linear one
# keeps large magnitudes ordered.
_VALUE_DIM = 6 + 3 * MAX_LIST_LEN
LIST_EXAMPLE_DIM = (MAX_INPUTS + 1) * _VALUE_DIM

_ALL_LAMBDAS: tuple[str, ...] = tuple(
    name for kind in ("transform", "predicate", "combiner") for name in LAMBDA_NAMES[kind]
)
_FUNC_INDEX = {spec.name: i for i, spec in enumerate(FUNCTIONS)}
_LAMBDA_INDEX = {name: i for i, name in enumerate(_ALL_LAMBDAS)}

MAX_PROGRAM_STATEMENTS = 6
_MAX_VARS = MAX_INPUTS + MAX_PROGRAM_STATEMENTS
# per statement: function one-hot, lambda one-hot (+1 for none), two arg slots
_STMT_DIM = len(FUNCTIONS) + len(_ALL_LAMBDAS) + 1 + 2 * (_MAX_VARS + 1)
LIST_PROGRAM_DIM = MAX_INPUTS * 3 + MAX_PROGRAM_STATEMENTS * _STMT_DIM


def _value_features(v: Value) -> np.ndarray:
    out = np.zeros(_VALUE_DIM, dtype=_F)
    if is_null(v):
        out[0] = 1.0
    elif isinstance(v, int):
        out[1] = 1.0
        out[3] = v / INT_MAX
        out[4] = math.tanh(v / 8.0)
    else:
        out[2] = 1.0
        out[5] = len(v) / MAX_LIST_LEN
        for i, x in enumerate(v[:MAX_LIST_LEN]):
            out[6 + i] = x / INT_MAX
            out[6 + MAX_LIST_LEN + i] = math.tanh(x / 8.0)
            out[6 + 2 * MAX_LIST_LEN + i] = 1.0
    return out


def list_example_features(inputs: tuple[Value, ...], output: Value) -> np.ndarray:
    """One query/response record to a (LIST_EXAMPLE_DIM,) vector."""
    if len(inputs) > MAX_INPUTS:
        raise ValueError(f"at most {MAX_INPUTS} inputs, got {len(inputs)}")
    slots = list(inputs) + [NULL] * (MAX_INPUTS - len(inputs)) + [output]
    return np.concatenate([_value_features(v) for v in slots])


def list_program_features(prog: ListProgram) -> np.ndarray:
    """Program structure to a (LIST_PROGRAM_DIM,) vector."""
    if len(prog.statements) > MAX_PROGRAM_STATEMENTS:
        raise ValueError(f"at most {MAX_PROGRAM_STATEMENTS} statements, got {len(prog.statements)}")
    out = np.zeros(LIST_PROGRAM_DIM, dtype=_F)
    for slot in range(MAX_INPUTS):
        base = slot * 3
        if slot >= len(prog.input_types):
            out[base] = 1.0
        elif prog.input_types[slot] == "INT":
            out[base + 1] = 1.0
        else:
            out[base + 2] = 1.0
    offset = MAX_INPUTS * 3
    for i, stmt in enumerate(prog.statements):
        base = offset + i * _STMT_DIM
        out[base + _FUNC_INDEX[stmt.func]] = 1.0
        lam_base = base + len(FUNCTIONS)
        if stmt.lam is None:
            out[lam_base + len(_ALL_LAMBDAS)] = 1.0
        else:
            out[lam_base + _LAMBDA_INDEX[stmt.lam]] = 1.0
        for slot in range(2):
            arg_base = lam_base + len(_ALL_LAMBDAS) + 1 + slot * (_MAX_VARS + 1)
            if slot >= len(stmt.args):
                out[arg_base + _MAX_VARS] = 1.0
            else:
                out[arg_base + stmt.args[slot]] = 1.0
    return out


# --- robot domain ----------------------------------------------------------

_WORLD_BITS = GRID_SIZE * GRID_SIZE * 16
KAREL_EXAMPLE_DIM = 2 * _WORLD_BITS + 1

TIMEOUT_RESPONSE = "TIMEOUT"


def world_bits(world: KarelWorld) -> np.ndarray:
    out = np.zeros(_WORLD_BITS, dtype=_F)
    i = 0
    for r in range(GRID_SIZE):
        for c in range(GRID_SIZE):
            out[i : i + 16] = cell_features(world, r, c)
            i += 16
    return out


def karel_example_features(world: KarelWorld, response) -> np.ndarray:
    """A (start world, run summary) record; the summary is a world or a timeout."""
    out = np.zeros(KAREL_EXAMPLE_DIM, dtype=_F)
    out[:_WORLD_BITS] = world_bits(world)
    if response == TIMEOUT_RESPONSE:
        out[-1] = 1.0
    elif isinstance(response, KarelWorld):
        out[_WORLD_BITS : 2 * _WORLD_BITS] = world_bits(response)
    else:
        raise ValueError(f"response must be a world or {TIMEOUT_RESPONSE!r}")
    return out


_KAREL_VOCAB: tuple[str, ...] = (
    "def", "run", "(", ")", ":", ";", "{", "}",
    "not", "if", "ifelse", "while", "repeat",
    "move", "turnLeft", "turnRight", "pickMarker", "putMarker",
    "frontIsClear", "leftIsClear", "rightIsClear",
    "markersPresent", "noMarkersPresent",
) + tuple(str(i) for i in range(20))
_KAREL_TOKEN_INDEX = {tok: i for i, tok in enumerate(_KAREL_VOCAB)}
_KAREL_TOKEN_RE = re.compile(r"[A-Za-z_]\w*|\d+|[(){}:;]")

MAX_KAREL_TOKENS = 48
KAREL_PROGRAM_DIM = MAX_KAREL_TOKENS * len(_KAREL_VOCAB)


def karel_program_features(prog: KarelProgram) -> np.ndarray:
    """Token one-hots of the canonical text, truncated to a fixed window."""
    out = np.zeros(KAREL_PROGRAM_DIM, dtype=_F)
    tokens = _KAREL_TOKEN_RE.findall(pretty(prog))
    for i, tok in enumerate(tokens[:MAX_KAREL_TOKENS]):
        out[i * len(_KAREL_VOCAB) + _KAREL_TOKEN_INDEX[tok]] = 1.0
    return out
