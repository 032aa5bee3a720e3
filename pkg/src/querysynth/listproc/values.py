"""Values for the list-processing DSL: bounded ints, bounded lists, and Null.

Integers live in [-256, 255] and lists hold at most 20 in-range integers.
Null marks absent or undefined results and propagates through execution.
"""

from __future__ import annotations

INT_MIN = -256
INT_MAX = 255
MAX_LIST_LEN = 20

INT = "INT"
LIST = "LIST"


class _Null:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NULL"

    def __reduce__(self):
        return (_Null, ())


NULL = _Null()

# A value is an int, a tuple of ints, or NULL.
Value = object


def is_null(v: Value) -> bool:
    return v is NULL


def clamp(x: int) -> int:
    """Truncate an integer into the representable range."""
    if x < INT_MIN:
        return INT_MIN
    if x > INT_MAX:
        return INT_MAX
    return x


def value_type(v: Value) -> str | None:
    """INT or LIST for concrete values, None for NULL."""
    if v is NULL:
        return None
    if isinstance(v, bool):
        raise TypeError("booleans are not DSL values")
    if isinstance(v, int):
        return INT
    if isinstance(v, tuple):
        return LIST
    raise TypeError(f"not a DSL value: {v!r}")


def check_value(v: Value) -> None:
    """Raise unless v is NULL, an in-range int, or an in-range bounded list."""
    t = value_type(v)
    if t == INT:
        if not (INT_MIN <= v <= INT_MAX):
            raise ValueError(f"int {v} outside [{INT_MIN}, {INT_MAX}]")
    elif t == LIST:
        if len(v) > MAX_LIST_LEN:
            raise ValueError(f"list of length {len(v)} exceeds {MAX_LIST_LEN}")
        for x in v:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValueError(f"list element {x!r} is not an int")
            if not (INT_MIN <= x <= INT_MAX):
                raise ValueError(f"list element {x} outside [{INT_MIN}, {INT_MAX}]")


def format_value(v: Value) -> str:
    """Token form: NULL, a bare integer, or bracketed space-separated ints."""
    if v is NULL:
        return "NULL"
    if value_type(v) == INT:
        return str(v)
    return "[" + " ".join(str(x) for x in v) + "]"


def parse_value(text: str) -> Value:
    text = text.strip()
    if text == "NULL":
        return NULL
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1].strip()
        if not inner:
            return ()
        return tuple(int(tok) for tok in inner.split())
    return int(text)
