"""List-processing DSL: bounded values, interpreter, samplers, text formats."""

from .examples import format_example, parse_example
from .functions import (
    COMBINERS,
    ELEMENT_TRANSFORMS,
    FUNCTIONS,
    FUNCTIONS_BY_NAME,
    LAMBDA_NAMES,
    PREDICATES,
    FunctionSpec,
    apply_function,
)
from .program import (
    ListProgram,
    ListProgramError,
    Statement,
    contributing_statements,
    execute_list,
    execute_list_trace,
    has_dead_code,
    infer_types,
    output_type,
    parse_list_program,
    pretty_list_program,
)
from .sampler import (
    ListSamplerConfig,
    list_start_signal,
    sample_input_types,
    sample_list_input,
    sample_list_program,
    sample_value,
)
from .values import (
    INT,
    INT_MAX,
    INT_MIN,
    LIST,
    MAX_LIST_LEN,
    NULL,
    Value,
    check_value,
    clamp,
    format_value,
    is_null,
    parse_value,
    value_type,
)

__all__ = [
    "COMBINERS",
    "ELEMENT_TRANSFORMS",
    "FUNCTIONS",
    "FUNCTIONS_BY_NAME",
    "INT",
    "INT_MAX",
    "INT_MIN",
    "LAMBDA_NAMES",
    "LIST",
    "MAX_LIST_LEN",
    "NULL",
    "FunctionSpec",
    "ListProgram",
    "ListProgramError",
    "ListSamplerConfig",
    "Statement",
    "Value",
    "apply_function",
    "check_value",
    "clamp",
    "contributing_statements",
    "execute_list",
    "execute_list_trace",
    "format_example",
    "format_value",
    "has_dead_code",
    "infer_types",
    "is_null",
    "list_start_signal",
    "output_type",
    "parse_example",
    "parse_list_program",
    "parse_value",
    "pretty_list_program",
    "sample_input_types",
    "sample_list_input",
    "sample_list_program",
    "sample_value",
    "value_type",
]
