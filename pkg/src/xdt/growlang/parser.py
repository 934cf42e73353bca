"""Concrete syntax for the demo language.

Accepts both the printers' unicode output and ASCII aliases: `λ` or `\\`,
`->` or `→`, `*` or `×`. Annotation attaches to applications; lambda and
let bodies extend maximally to the right; application is left-associative;
`->` and `*` share one precedence level and associate to the right (the
printers parenthesize only left operands). `--` starts a line comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import Diagnostic, LEXICAL_ERROR, Location, UNEXPECTED_TOKEN, error
from .syntax import (
    Arrow,
    IntTy,
    Node,
    Prod,
    SrcSpan,
    Ty,
    abs_,
    ann,
    app,
    let,
    lit,
    prj,
    tup,
    val,
    var,
)

_KEYWORDS = {"let", "in"}
_SYMBOL_MAP = [
    ("::", "::"),
    (":=", ":="),
    ("->", "->"),
    ("→", "->"),
    ("×", "*"),
    ("*", "*"),
    ("λ", "\\"),
    ("\\", "\\"),
    ("(", "("),
    (")", ")"),
    (",", ","),
    (".", "."),
]


class GlParseError(Exception):
    """Syntax failure; carries positioned diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    begin: int
    end: int


def _location(text: str, offset: int) -> Location:
    line = text.count("\n", 0, offset) + 1
    last_nl = text.rfind("\n", 0, offset)
    return Location(line, offset - last_nl)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        # Symbols first: 'λ' counts as alphabetic in Python but is a token here.
        matched = False
        for raw, kind in _SYMBOL_MAP:
            if text.startswith(raw, i):
                tokens.append(_Token(kind, raw, i, i + len(raw)))
                i += len(raw)
                matched = True
                break
        if matched:
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i, j))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            word = text[i:j]
            if word in _KEYWORDS:
                tokens.append(_Token(word, word, i, j))
            elif word == "Int":
                tokens.append(_Token("Int", word, i, j))
            elif word[0].islower():
                tokens.append(_Token("ident", word, i, j))
            else:
                raise GlParseError(
                    [error(LEXICAL_ERROR, f"unknown name {word!r}", _location(text, i))]
                )
            i = j
            continue
        raise GlParseError(
            [error(LEXICAL_ERROR, f"unexpected character {ch!r}", _location(text, i))]
        )
    tokens.append(_Token("eof", "", n, n))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def here(self) -> _Token:
        return self.tokens[self.pos]

    def at(self, *kinds: str) -> bool:
        return self.here.kind in kinds

    def advance(self) -> _Token:
        tok = self.here
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        if not self.at(kind):
            self.fail(f"expected {what}, found {self._describe()}")
        return self.advance()

    def _describe(self) -> str:
        return "end of input" if self.at("eof") else repr(self.here.text)

    def fail(self, message: str) -> None:
        raise GlParseError(
            [error(UNEXPECTED_TOKEN, message, _location(self.text, self.here.begin))]
        )

    def _span(self, begin: int) -> SrcSpan:
        return SrcSpan(begin, self.tokens[self.pos - 1].end)

    # -- expressions -------------------------------------------------------

    def exp(self) -> Node:
        if self.at("\\"):
            begin = self.advance().begin
            x = self.expect("ident", "a variable").text
            self.expect(".", "'.'")
            body = self.exp()
            return abs_(x, body, span=self._span(begin))
        if self.at("let"):
            begin = self.advance().begin
            d = self.dec()
            self.expect("in", "'in'")
            body = self.exp()
            return let(d, body, span=self._span(begin))
        return self.annotated()

    def annotated(self) -> Node:
        begin = self.here.begin
        e = self.application()
        while self.at("::"):
            self.advance()
            t = self.ty()
            e = ann(e, t, span=self._span(begin))
        return e

    def application(self) -> Node:
        begin = self.here.begin
        e = self.atom()
        while self.at("int", "ident", "("):
            arg = self.atom()
            e = app(e, arg, span=self._span(begin))
        return e

    def atom(self) -> Node:
        if self.at("int"):
            tok = self.advance()
            return lit(int(tok.text), span=SrcSpan(tok.begin, tok.end))
        if self.at("ident"):
            tok = self.advance()
            return var(tok.text, span=SrcSpan(tok.begin, tok.end))
        if self.at("("):
            begin = self.advance().begin
            first = self.exp()
            if self.at(","):
                self.advance()
                second = self.exp()
                self.expect(")", "')'")
                return tup(first, second, span=self._span(begin))
            self.expect(")", "')'")
            return first
        self.fail(f"expected an expression, found {self._describe()}")
        raise AssertionError("unreachable")

    # -- declarations ------------------------------------------------------

    def dec(self) -> Node:
        begin = self.here.begin
        if self.at("("):
            self.advance()
            x = self.expect("ident", "a variable").text
            self.expect(",", "','")
            y = self.expect("ident", "a variable").text
            self.expect(")", "')'")
            self.expect(":=", "':='")
            scrutinee = self.exp()
            return prj(x, y, scrutinee, span=self._span(begin))
        x = self.expect("ident", "a variable").text
        self.expect(":=", "':='")
        rhs = self.exp()
        return val(x, rhs, span=self._span(begin))

    # -- types ---------------------------------------------------------

    def ty(self) -> Ty:
        left = self.ty_atom()
        if self.at("->"):
            self.advance()
            return Arrow(left, self.ty())
        if self.at("*"):
            self.advance()
            return Prod(left, self.ty())
        return left

    def ty_atom(self) -> Ty:
        if self.at("Int"):
            self.advance()
            return IntTy()
        if self.at("("):
            self.advance()
            t = self.ty()
            self.expect(")", "')'")
            return t
        self.fail(f"expected a type, found {self._describe()}")
        raise AssertionError("unreachable")


def _finish(p: _Parser, result):
    if not p.at("eof"):
        p.fail(f"trailing input: {p._describe()}")
    return result


def parse_exp(text: str) -> Node:
    """Parse an expression into a plain tree; raises GlParseError."""
    p = _Parser(text)
    return _finish(p, p.exp())


def parse_dec(text: str) -> Node:
    """Parse a declaration into a plain tree; raises GlParseError."""
    p = _Parser(text)
    return _finish(p, p.dec())


def parse_ty(text: str) -> Ty:
    """Parse a type; raises GlParseError."""
    p = _Parser(text)
    return _finish(p, p.ty())
