"""Concrete syntax for terms, types and typing contexts.

Terms::

    t    ::= atom | t atom
    atom ::= ident | "\\" ident [":" type] "." t | "<" t "," t ">"
           | "p1" atom | "p2" atom | "(" t ")"

Types (``&`` binds tighter than ``->``, both associate to the right)::

    type ::= conj ["->" type]
    conj ::= base ["&" conj]
    base ::= Ident | "(" type ")"

Contexts are comma separated ``ident ":" type`` entries.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Optional

from .syntax import (
    Abs, App, Arrow, Atom, Bound, Conj, Pair, Proj, Term, Type, Var, RESERVED,
)
from .context import TypingContext


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, text: str = ""):
        self.message = message
        self.span = span
        self.text = text
        super().__init__(f"{message} at {span.start}:{span.end}")

    def render(self) -> str:
        """Message plus the offending line with a caret underline."""
        if not self.text:
            return str(self)
        width = max(self.span.end - self.span.start, 1)
        return f"{self}\n  {self.text}\n  {' ' * self.span.start}{'^' * width}"


class ShadowedBindingWarning(UserWarning):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<punct>[\\.:<>,()&])|(?P<ident>[A-Za-z][A-Za-z0-9]*)|(?P<bad>\S))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "ident", a punctuation string, "->" or "eof"
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {value!r}", SourceSpan(start, start + 1), text)
        toks.append(_Tok("ident" if kind == "ident" else value, value, start, m.end()))
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Optional[_Tok] = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {found}", SourceSpan(tok.start, tok.end), self.text)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            raise self.error(f"expected {kind!r}")
        return self.advance()

    def finish(self) -> None:
        if self.tok.kind != "eof":
            raise self.error("unexpected trailing input")

    # -- types ---------------------------------------------------------------

    def type_(self) -> Type:
        left = self.conj()
        if self.tok.kind == "->":
            self.advance()
            return Arrow(left, self.type_())
        return left

    def conj(self) -> Type:
        left = self.base_type()
        if self.tok.kind == "&":
            self.advance()
            return Conj(left, self.conj())
        return left

    def base_type(self) -> Type:
        tok = self.tok
        if tok.kind == "(":
            self.advance()
            inner = self.type_()
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text[0].isupper():
            self.advance()
            return Atom(tok.text)
        raise self.error("expected a type (atoms start with an uppercase letter)")

    # -- terms ---------------------------------------------------------------

    def ident(self) -> _Tok:
        tok = self.tok
        if tok.kind != "ident" or not tok.text[0].islower() or tok.text in RESERVED:
            raise self.error("expected a variable name")
        return self.advance()

    def starts_atom(self) -> bool:
        tok = self.tok
        return tok.kind in ("\\", "<", "(") or (tok.kind == "ident" and tok.text[0].islower())

    def term(self, scope: list[str]) -> Term:
        if not self.starts_atom():
            raise self.error("expected a term")
        t = self.atom(scope)
        while self.starts_atom():
            t = App(t, self.atom(scope))
        return t

    def atom(self, scope: list[str]) -> Term:
        tok = self.tok
        if tok.kind == "\\":
            self.advance()
            name = self.ident().text
            ann = None
            if self.tok.kind == ":":
                self.advance()
                ann = self.type_()
            self.expect(".")
            body = self.term(scope + [name])
            return Abs(body, ann, name)
        if tok.kind == "<":
            self.advance()
            left = self.term(scope)
            self.expect(",")
            right = self.term(scope)
            self.expect(">")
            return Pair(left, right)
        if tok.kind == "(":
            self.advance()
            inner = self.term(scope)
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text in RESERVED:
            self.advance()
            if not self.starts_atom():
                raise self.error(f"expected an argument for {tok.text}")
            return Proj(int(tok.text[1]), self.atom(scope))
        name = self.ident().text
        for k, bound in enumerate(reversed(scope)):
            if bound == name:
                return Bound(k)
        return Var(name)

    def context(self) -> TypingContext:
        ctx = TypingContext()
        if self.tok.kind == "eof":
            return ctx
        while True:
            tok = self.ident()
            self.expect(":")
            ty = self.type_()
            if tok.text in ctx:
                warnings.warn(
                    f"binding for {tok.text!r} at {tok.start} shadows an earlier one",
                    ShadowedBindingWarning,
                    stacklevel=4,
                )
            ctx = ctx.extend(tok.text, ty)
            if self.tok.kind != ",":
                return ctx
            self.advance()


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term([])
    p.finish()
    return t


def parse_type(text: str) -> Type:
    p = _Parser(text)
    a = p.type_()
    p.finish()
    return a


def parse_context(text: str) -> TypingContext:
    p = _Parser(text)
    ctx = p.context()
    p.finish()
    return ctx
