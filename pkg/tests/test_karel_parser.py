"""Parser and pretty-printer round-trip tests for the Karel DSL."""

from __future__ import annotations

import random

import pytest

from querysynth.karel import (
    ActionStmt,
    Cond,
    If,
    IfElse,
    KarelProgram,
    KarelSyntaxError,
    ProgramBounds,
    Repeat,
    While,
    parse_karel,
    pretty,
    sample_program,
)


def test_parse_single_action():
    prog = parse_karel("def run(): move()")
    assert prog == KarelProgram(body=(ActionStmt("move"),))


def test_parse_repeat_nested():
    prog = parse_karel("def run(): repeat(19): move()")
    assert prog == KarelProgram(body=(Repeat(19, (ActionStmt("move"),)),))


def test_parse_ifelse():
    text = "def run(): ifelse(markersPresent()): pickMarker() else: putMarker()"
    prog = parse_karel(text)
    expected = KarelProgram(
        body=(
            IfElse(
                Cond("markersPresent"),
                (ActionStmt("pickMarker"),),
                (ActionStmt("putMarker"),),
            ),
        )
    )
    assert prog == expected
    assert pretty(prog) == text


def test_parse_top_level_sequence():
    prog = parse_karel("def run(): turnLeft();turnLeft();turnLeft()")
    assert prog.body == (ActionStmt("turnLeft"),) * 3


def test_parse_empty_body():
    prog = parse_karel("def run():")
    assert prog == KarelProgram(body=())
    assert pretty(prog) == "def run():"
    assert parse_karel(pretty(prog)) == prog


def test_braced_multi_statement_body():
    text = "def run(): while(frontIsClear()): { move(); turnLeft() }"
    prog = parse_karel(text)
    assert prog.body == (
        While(Cond("frontIsClear"), (ActionStmt("move"), ActionStmt("turnLeft"))),
    )
    assert pretty(prog) == text


def test_unbraced_body_is_single_statement():
    # The semicolon continues the enclosing sequence, not the if body.
    prog = parse_karel("def run(): if(markersPresent()): move(); turnLeft()")
    assert prog.body == (
        If(Cond("markersPresent"), (ActionStmt("move"),)),
        ActionStmt("turnLeft"),
    )


def test_not_condition_round_trip():
    text = "def run(): while(not frontIsClear()): turnLeft()"
    prog = parse_karel(text)
    assert prog.body[0].cond == Cond("frontIsClear", negated=True)
    assert parse_karel(pretty(prog)) == prog


def test_double_not_folds_by_parity():
    prog = parse_karel("def run(): if(not not markersPresent()): move()")
    assert prog.body[0].cond == Cond("markersPresent", negated=False)


def test_repeat_count_out_of_range_rejected():
    with pytest.raises(KarelSyntaxError) as err:
        parse_karel("def run(): repeat(20): move()")
    assert "20" in str(err.value)
    assert err.value.pos > 0


@pytest.mark.parametrize(
    "text",
    [
        "def run(): mov()",
        "def run(): if(frontIsClear) move()",
        "def run(): move(); ",
        "run(): move()",
        "def run(): repeat(x): move()",
        "def run(): ifelse(markersPresent()): move()",
    ],
)
def test_malformed_programs_rejected(text):
    with pytest.raises(KarelSyntaxError):
        parse_karel(text)


def test_syntax_error_reports_position():
    with pytest.raises(KarelSyntaxError) as err:
        parse_karel("def run(): move(); junk()")
    assert err.value.pos == len("def run(): move(); ")


def test_round_trip_sampled_programs():
    # parse(pretty(ast)) must reproduce the AST exactly, across a broad sample.
    rng = random.Random(7)
    bounds = ProgramBounds(max_depth=3, max_stmts=4)
    for _ in range(500):
        prog = sample_program(rng, bounds)
        text = pretty(prog)
        assert parse_karel(text) == prog
        # And canonical text is a fixed point.
        assert pretty(parse_karel(text)) == text
