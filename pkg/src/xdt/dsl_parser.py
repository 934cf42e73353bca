"""Parser for `.xdt` declaration files and standalone `<+>` fragments.

The surface grammar is published in docs/grammar.md. Keywords are
`extensible`, `data`, `extends`, `by`, `partial`; `empty` spells the empty
field addition; `<+>` applies an extension argument; `--` starts a
line comment. Declarations are layout-insensitive: one ends at the next
declaration keyword or at end of input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ConExtensionClause,
    ConstructorDecl,
    Diagnostic,
    ExtensibleDataDecl,
    ExtensionDecl,
    Ident,
    LEXICAL_ERROR,
    Location,
    OPLUS_ON_NONEXTENSIBLE,
    OplusType,
    Program,
    TypeApp,
    TypeExpr,
    TypeVarRef,
    UNEXPECTED_TOKEN,
    UNTERMINATED_DECLARATION,
    error,
)


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the parsed text; line/column derive via a LineMap."""

    begin: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.begin <= self.end:
            raise ValueError(f"invalid span {self.begin}..{self.end}")


class LineMap:
    """Offset to 1-based line/column translation for one source text."""

    def __init__(self, text: str, file: str | None = None) -> None:
        self.file = file
        self._starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self._starts.append(i + 1)

    def location(self, offset: int) -> Location:
        lo, hi = 0, len(self._starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return Location(lo + 1, offset - self._starts[lo] + 1, self.file)


class ParseFailure(Exception):
    """Raised when parsing fails; carries the error diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


KEYWORDS = {"extensible", "data", "extends", "by", "empty", "partial"}

_SYMBOLS = ("<+>", "=", "|", "(", ")", "_")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", a keyword, a symbol, or "eof"
    text: str
    span: SourceSpan


def _tokenize(text: str, linemap: LineMap) -> list[Token]:
    tokens: list[Token] = []
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
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(sym, sym, SourceSpan(i, i + len(sym))))
                i += len(sym)
                break
        else:
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(Token("int", text[i:j], SourceSpan(i, j)))
                i = j
            elif ch.isalpha():
                j = i
                while j < n and (text[j].isalnum() or text[j] in "_'"):
                    j += 1
                word = text[i:j]
                kind = word if word in KEYWORDS else "ident"
                tokens.append(Token(kind, word, SourceSpan(i, j)))
                i = j
            else:
                raise ParseFailure(
                    [
                        error(
                            LEXICAL_ERROR,
                            f"unexpected character {ch!r}",
                            linemap.location(i),
                        )
                    ]
                )
    tokens.append(Token("eof", "", SourceSpan(n, n)))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], linemap: LineMap) -> None:
        self.tokens = tokens
        self.pos = 0
        self.linemap = linemap

    @property
    def here(self) -> Token:
        return self.tokens[self.pos]

    def at(self, *kinds: str) -> bool:
        return self.here.kind in kinds

    def advance(self) -> Token:
        tok = self.here
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.here.kind != kind:
            self.fail(UNEXPECTED_TOKEN, f"expected {what}, found {self._describe()}")
        return self.advance()

    def _describe(self) -> str:
        tok = self.here
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def fail(self, code: str, message: str) -> None:
        raise ParseFailure([error(code, message, self.linemap.location(self.here.span.begin))])

    def ident(self, what: str, *, upper: bool | None = None) -> Ident:
        tok = self.expect("ident", what)
        ident = Ident(tok.text)
        if upper is True and not ident.is_constructor:
            self.pos -= 1
            self.fail(UNEXPECTED_TOKEN, f"expected {what} (uppercase), found {tok.text!r}")
        if upper is False and ident.is_constructor:
            self.pos -= 1
            self.fail(UNEXPECTED_TOKEN, f"expected {what} (lowercase), found {tok.text!r}")
        return ident


# --------------------------------------------------------------------------
# Programs


def parse_program(text: str, file: str | None = None) -> Program:
    """Parse a whole `.xdt` source; raises ParseFailure with diagnostics."""
    linemap = LineMap(text, file)
    cur = _Cursor(_tokenize(text, linemap), linemap)
    extensibles: list[ExtensibleDataDecl] = []
    extensions: list[ExtensionDecl] = []
    while not cur.at("eof"):
        if cur.at("extensible"):
            extensibles.append(_parse_extensible(cur))
        elif cur.at("data", "partial"):
            decl = _parse_data(cur)
            if isinstance(decl, ExtensionDecl):
                extensions.append(decl)
            else:
                extensibles.append(decl)
        else:
            cur.fail(UNEXPECTED_TOKEN, f"expected a declaration, found {cur._describe()}")
    return Program(tuple(extensibles), tuple(extensions))


def _at_decl_boundary(cur: _Cursor) -> bool:
    return cur.at("extensible", "data", "partial", "eof")


def _parse_extensible(cur: _Cursor) -> ExtensibleDataDecl:
    start = cur.expect("extensible", "'extensible'").span.begin
    cur.expect("data", "'data'")
    name = cur.ident("type name", upper=True)
    params = _parse_params(cur)
    cur.expect("=", "'='")
    ctors = [_parse_constructor(cur)]
    while cur.at("|"):
        cur.advance()
        ctors.append(_parse_constructor(cur))
    span = SourceSpan(start, cur.tokens[cur.pos - 1].span.end)
    return ExtensibleDataDecl(name, params, tuple(ctors), extensible=True, span=span)


def _parse_data(cur: _Cursor) -> ExtensibleDataDecl | ExtensionDecl:
    partial = False
    start = cur.here.span.begin
    if cur.at("partial"):
        partial = True
        cur.advance()
    cur.expect("data", "'data'")
    name = cur.ident("type name", upper=True)
    params = _parse_params(cur)
    if cur.at("extends"):
        cur.advance()
        base = cur.ident("base type name", upper=True)
        base_args = _parse_params(cur)
        news: list[ConstructorDecl] = []
        clauses: list[ConExtensionClause] = []
        if cur.at("="):  # a pure parameter extension has no body
            cur.advance()
            _parse_extension_item(cur, news, clauses)
            while cur.at("|"):
                cur.advance()
                _parse_extension_item(cur, news, clauses)
        elif not _at_decl_boundary(cur):
            cur.fail(UNEXPECTED_TOKEN, f"expected '=' or a declaration, found {cur._describe()}")
        span = SourceSpan(start, cur.tokens[cur.pos - 1].span.end)
        return ExtensionDecl(
            name, params, base, base_args, tuple(news), tuple(clauses), partial, span=span
        )
    if partial:
        cur.fail(UNEXPECTED_TOKEN, "'partial' applies only to extension declarations")
    cur.expect("=", "'='")
    ctors = [_parse_constructor(cur)]
    while cur.at("|"):
        cur.advance()
        ctors.append(_parse_constructor(cur))
    span = SourceSpan(start, cur.tokens[cur.pos - 1].span.end)
    return ExtensibleDataDecl(name, params, tuple(ctors), extensible=False, span=span)


def _parse_params(cur: _Cursor) -> tuple[Ident, ...]:
    params: list[Ident] = []
    while cur.at("ident") and not Ident(cur.here.text).is_constructor:
        params.append(cur.ident("type variable", upper=False))
    return tuple(params)


def _parse_constructor(cur: _Cursor) -> ConstructorDecl:
    if _at_decl_boundary(cur):
        cur.fail(UNTERMINATED_DECLARATION, "constructor expected before end of declaration")
    name = cur.ident("constructor name", upper=True)
    fields: list[TypeExpr] = []
    while _at_type_atom(cur):
        fields.append(_parse_atom_type(cur))
    return ConstructorDecl(name, tuple(fields))


def _parse_extension_item(
    cur: _Cursor, news: list[ConstructorDecl], clauses: list[ConExtensionClause]
) -> None:
    if _at_decl_boundary(cur):
        cur.fail(UNTERMINATED_DECLARATION, "constructor expected before end of declaration")
    name = cur.ident("constructor name", upper=True)
    if cur.at("extends"):
        cur.advance()
        base_ctor = cur.ident("base constructor name", upper=True)
        cur.expect("by", "'by'")
        if cur.at("empty"):
            cur.advance()
            clauses.append(ConExtensionClause(name, base_ctor, ()))
            return
        fields = [_parse_atom_type(cur)]
        while _at_type_atom(cur):
            fields.append(_parse_atom_type(cur))
        clauses.append(ConExtensionClause(name, base_ctor, tuple(fields)))
        return
    fields = []
    while _at_type_atom(cur):
        fields.append(_parse_atom_type(cur))
    news.append(ConstructorDecl(name, tuple(fields)))


def _at_type_atom(cur: _Cursor) -> bool:
    return cur.at("(") or (cur.at("ident") and not _at_decl_boundary(cur))


def _parse_atom_type(cur: _Cursor) -> TypeExpr:
    if cur.at("("):
        cur.advance()
        t = _parse_type(cur)
        cur.expect(")", "')'")
        return t
    name = cur.ident("type")
    if name.is_constructor:
        return TypeApp(name)
    return TypeVarRef(name)


def _parse_type(cur: _Cursor) -> TypeExpr:
    t = _parse_app_type(cur)
    if cur.at("<+>"):
        cur.advance()
        ext = _parse_app_type(cur)
        if cur.at("<+>"):
            cur.fail(OPLUS_ON_NONEXTENSIBLE, "nested '<+>' has no meaning")
        return OplusType(t, ext)
    return t


def _parse_app_type(cur: _Cursor) -> TypeExpr:
    if cur.at("("):
        return _parse_atom_type(cur)
    name = cur.ident("type")
    if name.is_variable:
        return TypeVarRef(name)
    args: list[TypeExpr] = []
    while _at_type_atom(cur):
        args.append(_parse_atom_type(cur))
    return TypeApp(name, tuple(args))


# --------------------------------------------------------------------------
# Oplus fragments: types, patterns, and constructor applications


@dataclass(frozen=True)
class FragApp:
    """A constructor (or type) applied to argument terms."""

    head: Ident
    args: tuple[FragTerm, ...] = ()


@dataclass(frozen=True)
class FragInt:
    value: int


@dataclass(frozen=True)
class FragVar:
    name: Ident


@dataclass(frozen=True)
class FragWildcard:
    pass


FragTerm = FragApp | FragInt | FragVar | FragWildcard

FRAGMENT_KINDS = ("type", "pattern", "conapp")


@dataclass(frozen=True)
class OplusFragment:
    """A head applied to ordinary arguments plus one extension argument."""

    kind: str
    head: Ident
    ordinary_args: tuple[FragTerm, ...]
    extension_arg: FragTerm


def parse_fragment(text: str, kind: str) -> OplusFragment:
    """Parse `Head a1 .. an <+> ext` in the given grammatical category."""
    if kind not in FRAGMENT_KINDS:
        raise ValueError(f"unknown fragment kind {kind!r}")
    linemap = LineMap(text)
    cur = _Cursor(_tokenize(text, linemap), linemap)
    head = cur.ident("fragment head", upper=True)
    args: list[FragTerm] = []
    while not cur.at("<+>", "eof"):
        args.append(_parse_frag_atom(cur, kind))
    if not cur.at("<+>"):
        cur.fail(UNEXPECTED_TOKEN, "expected '<+>'")
    cur.advance()
    ext = _parse_frag_atom(cur, kind)
    if not cur.at("eof"):
        if cur.at("<+>"):
            cur.fail(OPLUS_ON_NONEXTENSIBLE, "nested '<+>' has no meaning")
        cur.fail(UNEXPECTED_TOKEN, f"trailing input after fragment: {cur._describe()}")
    return OplusFragment(kind, head, tuple(args), ext)


def _parse_frag_atom(cur: _Cursor, kind: str) -> FragTerm:
    if cur.at("_"):
        if kind != "pattern":
            cur.fail(UNEXPECTED_TOKEN, "'_' is a pattern, not a term")
        cur.advance()
        return FragWildcard()
    if cur.at("int"):
        return FragInt(int(cur.advance().text))
    if cur.at("("):
        cur.advance()
        head = cur.ident("constructor", upper=True)
        args: list[FragTerm] = []
        while not cur.at(")"):
            if cur.at("<+>"):
                cur.fail(OPLUS_ON_NONEXTENSIBLE, "nested '<+>' has no meaning")
            args.append(_parse_frag_atom(cur, kind))
        cur.expect(")", "')'")
        return FragApp(head, tuple(args))
    name = cur.ident("term")
    if name.is_constructor:
        return FragApp(name)
    return FragVar(name)


def render_fragment_term(term: FragTerm) -> str:
    """Render a fragment term back to source syntax."""
    if isinstance(term, FragInt):
        return str(term.value)
    if isinstance(term, FragVar):
        return term.name.text
    if isinstance(term, FragWildcard):
        return "_"
    if not term.args:
        return term.head.text
    return f"{term.head} " + " ".join(_frag_atom_str(a) for a in term.args)


def _frag_atom_str(term: FragTerm) -> str:
    if isinstance(term, FragApp) and term.args:
        return f"({render_fragment_term(term)})"
    return render_fragment_term(term)
