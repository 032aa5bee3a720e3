"""Tokenizer and recursive-descent parser for the Karel DSL concrete syntax.

The body of a control statement is a single statement unless grouped with
braces, so ``if(b): move(); turnLeft()`` parses as an if followed by a
turnLeft.  Stacked ``not`` prefixes are folded by parity into the canonical
negation flag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    ACTIONS,
    CONDITIONS,
    REPEAT_MAX,
    REPEAT_MIN,
    ActionStmt,
    Cond,
    If,
    IfElse,
    KarelProgram,
    Repeat,
    Stmt,
    While,
)


class KarelSyntaxError(ValueError):
    """Raised on malformed program text; carries the character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


@dataclass(frozen=True)
class _Tok:
    kind: str  # "name", "int", or a literal symbol
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<sym>[(){}:;]))")


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise KarelSyntaxError(f"unexpected character {stripped[0]!r}", pos)
        if m.lastgroup == "name":
            toks.append(_Tok("name", m.group("name"), m.start("name")))
        elif m.lastgroup == "int":
            toks.append(_Tok("int", m.group("int"), m.start("int")))
        else:
            toks.append(_Tok(m.group("sym"), m.group("sym"), m.start("sym")))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise KarelSyntaxError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Tok:
        tok = self.next()
        if tok.kind != kind:
            raise KarelSyntaxError(f"expected {kind!r}, found {tok.text!r}", tok.pos)
        return tok

    def expect_name(self, name: str) -> _Tok:
        tok = self.next()
        if tok.kind != "name" or tok.text != name:
            raise KarelSyntaxError(f"expected {name!r}, found {tok.text!r}", tok.pos)
        return tok

    def parse_program(self) -> KarelProgram:
        self.expect_name("def")
        self.expect_name("run")
        self.expect("(")
        self.expect(")")
        self.expect(":")
        if self.peek() is None:
            return KarelProgram(body=())
        body = self.parse_sequence()
        tok = self.peek()
        if tok is not None:
            raise KarelSyntaxError(f"trailing input {tok.text!r}", tok.pos)
        return KarelProgram(body=body)

    def parse_sequence(self) -> tuple[Stmt, ...]:
        stmts = [self.parse_stmt()]
        while self.peek() is not None and self.peek().kind == ";":
            self.next()
            stmts.append(self.parse_stmt())
        return tuple(stmts)

    def parse_block(self) -> tuple[Stmt, ...]:
        tok = self.peek()
        if tok is not None and tok.kind == "{":
            self.next()
            body = self.parse_sequence()
            self.expect("}")
            return body
        return (self.parse_stmt(),)

    def parse_stmt(self) -> Stmt:
        tok = self.next()
        if tok.kind != "name":
            raise KarelSyntaxError(f"expected a statement, found {tok.text!r}", tok.pos)
        word = tok.text
        if word in ACTIONS:
            self.expect("(")
            self.expect(")")
            return ActionStmt(word)
        if word == "if":
            cond = self.parse_paren_cond()
            self.expect(":")
            return If(cond, self.parse_block())
        if word == "ifelse":
            cond = self.parse_paren_cond()
            self.expect(":")
            then_body = self.parse_block()
            self.expect_name("else")
            self.expect(":")
            return IfElse(cond, then_body, self.parse_block())
        if word == "while":
            cond = self.parse_paren_cond()
            self.expect(":")
            return While(cond, self.parse_block())
        if word == "repeat":
            self.expect("(")
            count_tok = self.expect("int")
            count = int(count_tok.text)
            if not (REPEAT_MIN <= count <= REPEAT_MAX):
                raise KarelSyntaxError(
                    f"repeat count {count} outside {REPEAT_MIN}..{REPEAT_MAX}", count_tok.pos
                )
            self.expect(")")
            self.expect(":")
            return Repeat(count, self.parse_block())
        raise KarelSyntaxError(f"unknown statement {word!r}", tok.pos)

    def parse_paren_cond(self) -> Cond:
        self.expect("(")
        cond = self.parse_cond()
        self.expect(")")
        return cond

    def parse_cond(self) -> Cond:
        negated = False
        tok = self.next()
        while tok.kind == "name" and tok.text == "not":
            negated = not negated
            tok = self.next()
        # "not(b)" nests the check in parentheses; unwrap it.
        if tok.kind == "(":
            inner = self.parse_cond()
            self.expect(")")
            return Cond(inner.name, inner.negated != negated)
        if tok.kind != "name" or tok.text not in CONDITIONS:
            raise KarelSyntaxError(f"unknown condition {tok.text!r}", tok.pos)
        self.expect("(")
        self.expect(")")
        return Cond(tok.text, negated)


def parse_karel(text: str) -> KarelProgram:
    """Parse program text into an AST; raises KarelSyntaxError with position."""
    return _Parser(text).parse_program()
