"""Line-delimited IO-example records for the list DSL.

One example per line: inputs joined by " | ", then " -> ", then the output.
NULL is written literally, ints bare, lists bracketed:

    [1 2 3] | NULL -> [2 4 6]
"""

from __future__ import annotations

from .values import Value, format_value, parse_value


def format_example(inputs: tuple[Value, ...], output: Value) -> str:
    return " | ".join(format_value(v) for v in inputs) + " -> " + format_value(output)


def parse_example(line: str) -> tuple[tuple[Value, ...], Value]:
    if " -> " not in line:
        raise ValueError(f"missing '->' in example record: {line!r}")
    left, right = line.rsplit(" -> ", 1)
    inputs = tuple(parse_value(part) for part in left.split(" | "))
    return inputs, parse_value(right)
