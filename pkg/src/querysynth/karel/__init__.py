"""Karel grid-world DSL: AST, parser, executor, worlds, and samplers."""

from .ast import (
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
    control_statement_count,
    pretty,
    program_size,
)
from .executor import (
    CALL_BUDGET,
    HALT,
    STAY_STILL,
    CoverageTrace,
    CrashReason,
    ExecOutcome,
    Outcome,
    branch_coverage,
    execute,
)
from .parser import KarelSyntaxError, parse_karel
from .sampler import ProgramBounds, sample_program
from .world import (
    GRID_SIZE,
    MAX_MARKERS,
    OBSTACLE,
    KarelWorld,
    WorldConfig,
    WorldError,
    build_start_world,
    cell_features,
    parse_world,
    sample_world,
    serialize_world,
    validate_world,
)

__all__ = [
    "ACTIONS",
    "CONDITIONS",
    "CALL_BUDGET",
    "GRID_SIZE",
    "HALT",
    "MAX_MARKERS",
    "OBSTACLE",
    "STAY_STILL",
    "ActionStmt",
    "Cond",
    "CoverageTrace",
    "CrashReason",
    "ExecOutcome",
    "If",
    "IfElse",
    "KarelProgram",
    "KarelSyntaxError",
    "KarelWorld",
    "Outcome",
    "ProgramBounds",
    "Repeat",
    "Stmt",
    "While",
    "WorldConfig",
    "WorldError",
    "branch_coverage",
    "build_start_world",
    "cell_features",
    "control_statement_count",
    "execute",
    "parse_karel",
    "parse_world",
    "pretty",
    "program_size",
    "sample_program",
    "sample_world",
    "serialize_world",
    "validate_world",
]
