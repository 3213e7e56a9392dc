"""Concrete syntax: lexing, parsing, name resolution and printing.

Grammar (whitespace insignificant, ``--`` starts a line comment)::

    type ::= atype ('->' type)?
    atype ::= '*' | '(' type ')'
    term ::= '\\' ident ':' type '.' term | app
    app  ::= atom+ ('\\' ... )?        -- a lambda may close an application
    atom ::= ident | '(' term ')'

Printers choose binder names ``x0, x1, ...`` by binder depth, skipping any
name that is free in the printed term, so output is canonical and re-parses
to the same de Bruijn term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from ._deep import deep
from .syntax import (
    STAR,
    Abs,
    App,
    Arrow,
    Lam,
    Ne,
    NeNf,
    Nf,
    Star,
    Tm,
    Ty,
    Var,
)

Pos = tuple[int, int]


class FrontendError(Exception):
    pass


class ParseError(FrontendError):
    def __init__(self, message: str, line: int, column: int, expected: Sequence[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"; expected one of: {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{detail}")


class ScopeError(FrontendError):
    def __init__(self, name: str, pos: Pos | None = None):
        self.name = name
        self.pos = pos
        where = f"line {pos[0]}, column {pos[1]}: " if pos else ""
        super().__init__(f"{where}unbound name {name!r}")


# -- surface syntax --------------------------------------------------------------


@dataclass(frozen=True)
class NamedVar:
    name: str
    pos: Pos | None = field(default=None, compare=False)


@dataclass(frozen=True)
class NamedAbs:
    name: str
    dom: Ty
    body: "SurfaceTm"
    pos: Pos | None = field(default=None, compare=False)


@dataclass(frozen=True)
class NamedApp:
    fun: "SurfaceTm"
    arg: "SurfaceTm"
    pos: Pos | None = field(default=None, compare=False)


SurfaceTm = Union[NamedVar, NamedAbs, NamedApp]


# -- lexer -------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # ident, '\\', ':', '.', '(', ')', '*', '->', eof
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[\\:.()*])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> Iterator[Token]:
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        if kind == "ident":
            yield Token("ident", m.group(), line, column)
        elif kind == "arrow":
            yield Token("->", "->", line, column)
        elif kind == "punct":
            yield Token(m.group(), m.group(), line, column)
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    yield Token("eof", "", line, pos - line_start + 1)


# -- parser ------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected: Sequence[str]):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {found}", tok.line, tok.column, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail([kind])
        tok = self.tok
        self.i += 1
        return tok

    def type_(self) -> Ty:
        dom = self.atype()
        if self.tok.kind == "->":
            self.i += 1
            return Arrow(dom, self.type_())
        return dom

    def atype(self) -> Ty:
        if self.tok.kind == "*":
            self.i += 1
            return STAR
        if self.tok.kind == "(":
            self.i += 1
            ty = self.type_()
            self.expect(")")
            return ty
        self.fail(["*", "("])

    def term(self) -> SurfaceTm:
        if self.tok.kind == "\\":
            return self.lam()
        return self.app()

    def lam(self) -> NamedAbs:
        start = self.expect("\\")
        name = self.expect("ident").text
        self.expect(":")
        dom = self.type_()
        self.expect(".")
        return NamedAbs(name, dom, self.term(), (start.line, start.column))

    def app(self) -> SurfaceTm:
        tok = self.tok
        t = self.atom()
        while self.tok.kind in ("ident", "(", "\\"):
            arg = self.lam() if self.tok.kind == "\\" else self.atom()
            t = NamedApp(t, arg, (tok.line, tok.column))
        return t

    def atom(self) -> SurfaceTm:
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            return NamedVar(tok.text, (tok.line, tok.column))
        if tok.kind == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        self.fail(["ident", "(", "\\"])


@deep
def parse(text: str) -> SurfaceTm:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        p.fail(["eof", "ident", "(", "\\"])
    return t


@deep
def parse_type(text: str) -> Ty:
    p = _Parser(text)
    ty = p.type_()
    if p.tok.kind != "eof":
        p.fail(["eof", "->"])
    return ty


# -- resolution ---------------------------------------------------------------------


def _resolve(scope: list[str], t: SurfaceTm) -> Tm:
    if isinstance(t, NamedVar):
        for depth, name in enumerate(reversed(scope)):
            if name == t.name:
                return Var(depth)
        raise ScopeError(t.name, t.pos)
    if isinstance(t, NamedAbs):
        scope.append(t.name)
        try:
            return Abs(t.dom, _resolve(scope, t.body))
        finally:
            scope.pop()
    return App(_resolve(scope, t.fun), _resolve(scope, t.arg))


@deep
def resolve(free: Sequence[tuple[str, Ty]], t: SurfaceTm) -> Tm:
    """Convert names to de Bruijn indices; ``free`` is declared outermost first."""
    return _resolve([name for name, _ in free], t)


# -- printers -----------------------------------------------------------------------


def print_type(ty: Ty) -> str:
    return str(ty)


class _Namer:
    def __init__(self, free: Sequence[str]):
        self.n_free = len(free)
        self.names = list(free)

    def bind(self) -> str:
        # numbered by binder depth, bumped past anything already in scope
        k = len(self.names) - self.n_free
        while f"x{k}" in self.names:
            k += 1
        return f"x{k}"

    def name_of(self, index: int) -> str:
        return self.names[len(self.names) - 1 - index]


def _print_tm(namer: _Namer, t: Tm) -> str:
    if isinstance(t, Var):
        return namer.name_of(t.index)
    if isinstance(t, Abs):
        name = namer.bind()
        namer.names.append(name)
        try:
            return f"\\{name}:{t.dom}. {_print_tm(namer, t.body)}"
        finally:
            namer.names.pop()
    fun = _print_tm(namer, t.fun)
    if isinstance(t.fun, Abs):
        fun = f"({fun})"
    arg = _print_tm(namer, t.arg)
    if not isinstance(t.arg, Var):
        arg = f"({arg})"
    return f"{fun} {arg}"


@deep
def print_tm(free_names: Sequence[str], t: Tm) -> str:
    return _print_tm(_Namer(free_names), t)


def _print_nf(namer: _Namer, n: Nf, ty: Ty) -> str:
    if isinstance(n, Lam):
        assert isinstance(ty, Arrow)
        name = namer.bind()
        namer.names.append(name)
        try:
            return f"\\{name}:{ty.dom}. {_print_nf(namer, n.body, ty.cod)}"
        finally:
            namer.names.pop()
    return _print_ne(namer, n.ne)


def _print_ne(namer: _Namer, ne: Ne) -> str:
    parts = [namer.name_of(ne.head)]
    for arg, arg_ty in zip(ne.spine, ne.arg_types()):
        text = _print_nf(namer, arg, arg_ty)
        if isinstance(arg, Lam) or arg.ne.spine:
            text = f"({text})"
        parts.append(text)
    return " ".join(parts)


@deep
def print_nf(free_names: Sequence[str], n: Nf, ty: Ty) -> str:
    """Named rendering of a normal form of type ``ty``."""
    return _print_nf(_Namer(free_names), n, ty)


def _print_nf_db(n: Nf, ty: Ty) -> str:
    if isinstance(n, Lam):
        assert isinstance(ty, Arrow)
        return f"\\:{ty.dom}. {_print_nf_db(n.body, ty.cod)}"
    parts = [f"#{n.ne.head}"]
    for arg, arg_ty in zip(n.ne.spine, n.ne.arg_types()):
        text = _print_nf_db(arg, arg_ty)
        if isinstance(arg, Lam) or arg.ne.spine:
            text = f"({text})"
        parts.append(text)
    return " ".join(parts)


@deep
def print_nf_de_bruijn(n: Nf, ty: Ty) -> str:
    """De Bruijn rendering: ``\\:T. body`` for binders and ``#i`` for variables."""
    return _print_nf_db(n, ty)
