"""Function tables for the list-processing DSL.

Element transforms (int to int) and predicates (int to bool) parameterize the
unary higher-order functions; combiners (int, int to int) parameterize ZIPWITH
and SCANL1.  First-order functions act on lists and ints directly.  Partial
cases (empty-list reductions, out-of-range indices) yield NULL.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .values import INT, LIST, NULL, Value, clamp


def _div_toward_zero(x: int, d: int) -> int:
    q = abs(x) // d
    return q if x >= 0 else -q


# Order is canonical for enumeration and featurization.
ELEMENT_TRANSFORMS: dict[str, Callable[[int], int]] = {
    "+1": lambda x: x + 1,
    "-1": lambda x: x - 1,
    "*2": lambda x: x * 2,
    "/2": lambda x: _div_toward_zero(x, 2),
    "*(-1)": lambda x: -x,
    "**2": lambda x: x * x,
    "*3": lambda x: x * 3,
    "/3": lambda x: _div_toward_zero(x, 3),
    "*4": lambda x: x * 4,
    "/4": lambda x: _div_toward_zero(x, 4),
}

PREDICATES: dict[str, Callable[[int], bool]] = {
    ">0": lambda x: x > 0,
    "<0": lambda x: x < 0,
    "%2": lambda x: x % 2 == 0,
    "%2==1": lambda x: x % 2 == 1,
}

COMBINERS: dict[str, Callable[[int, int], int]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "MIN": min,
    "MAX": max,
}

TRANSFORM = "transform"
PREDICATE = "predicate"
COMBINER = "combiner"

LAMBDA_NAMES = {
    TRANSFORM: tuple(ELEMENT_TRANSFORMS),
    PREDICATE: tuple(PREDICATES),
    COMBINER: tuple(COMBINERS),
}


@dataclass(frozen=True)
class FunctionSpec:
    """Statement-level function: positional value args plus an optional lambda."""

    name: str
    lambda_kind: str | None
    arg_types: tuple[str, ...]
    ret_type: str


FUNCTIONS: tuple[FunctionSpec, ...] = (
    FunctionSpec("HEAD", None, (LIST,), INT),
    FunctionSpec("LAST", None, (LIST,), INT),
    FunctionSpec("TAKE", None, (INT, LIST), LIST),
    FunctionSpec("DROP", None, (INT, LIST), LIST),
    FunctionSpec("ACCESS", None, (INT, LIST), INT),
    FunctionSpec("MINIMUM", None, (LIST,), INT),
    FunctionSpec("MAXIMUM", None, (LIST,), INT),
    FunctionSpec("REVERSE", None, (LIST,), LIST),
    FunctionSpec("SORT", None, (LIST,), LIST),
    FunctionSpec("SUM", None, (LIST,), INT),
    FunctionSpec("MAP", TRANSFORM, (LIST,), LIST),
    FunctionSpec("FILTER", PREDICATE, (LIST,), LIST),
    FunctionSpec("COUNT", PREDICATE, (LIST,), INT),
    FunctionSpec("ZIPWITH", COMBINER, (LIST, LIST), LIST),
    FunctionSpec("SCANL1", COMBINER, (LIST,), LIST),
)

FUNCTIONS_BY_NAME = {f.name: f for f in FUNCTIONS}


def apply_function(func: FunctionSpec, lam: str | None, args: tuple[Value, ...]) -> Value:
    """Apply one statement function to concrete (non-NULL) argument values.

    Every produced integer is clamped as it is produced, including combiner
    accumulator steps, so no intermediate escapes the representable range.
    """
    name = func.name
    if name == "HEAD":
        (xs,) = args
        return xs[0] if xs else NULL
    if name == "LAST":
        (xs,) = args
        return xs[-1] if xs else NULL
    if name == "TAKE":
        n, xs = args
        return xs[:n] if 0 <= n <= len(xs) else NULL
    if name == "DROP":
        n, xs = args
        return xs[n:] if 0 <= n <= len(xs) else NULL
    if name == "ACCESS":
        n, xs = args
        return xs[n] if 0 <= n < len(xs) else NULL
    if name == "MINIMUM":
        (xs,) = args
        return min(xs) if xs else NULL
    if name == "MAXIMUM":
        (xs,) = args
        return max(xs) if xs else NULL
    if name == "REVERSE":
        (xs,) = args
        return tuple(reversed(xs))
    if name == "SORT":
        (xs,) = args
        return tuple(sorted(xs))
    if name == "SUM":
        (xs,) = args
        if not xs:
            return NULL
        total = 0
        for x in xs:
            total = clamp(total + x)
        return total
    if name == "MAP":
        f = ELEMENT_TRANSFORMS[lam]
        (xs,) = args
        return tuple(clamp(f(x)) for x in xs)
    if name == "FILTER":
        p = PREDICATES[lam]
        (xs,) = args
        return tuple(x for x in xs if p(x))
    if name == "COUNT":
        p = PREDICATES[lam]
        (xs,) = args
        return sum(1 for x in xs if p(x))
    if name == "ZIPWITH":
        g = COMBINERS[lam]
        xs, ys = args
        return tuple(clamp(g(x, y)) for x, y in zip(xs, ys))
    if name == "SCANL1":
        g = COMBINERS[lam]
        (xs,) = args
        if not xs:
            return ()
        out = [xs[0]]
        for x in xs[1:]:
            out.append(clamp(g(out[-1], x)))
        return tuple(out)
    raise ValueError(f"unknown function {name!r}")
