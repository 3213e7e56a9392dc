"""Simple types, de Bruijn terms, neutrals, normal forms and the typechecker.

Contexts are tuples of types with the innermost binding last; de Bruijn index
0 refers to the last entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Generic, TypeVar, Union

from ._deep import deep

X = TypeVar("X")


# -- types -------------------------------------------------------------------


@dataclass(frozen=True)
class Star:
    def __str__(self) -> str:
        return "*"


@dataclass(frozen=True)
class Arrow:
    dom: "Ty"
    cod: "Ty"

    def __str__(self) -> str:
        dom = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{dom} -> {self.cod}"


Ty = Union[Star, Arrow]
STAR = Star()

Cxt = tuple  # tuple[Ty, ...], innermost last


def arrows(*tys: Ty) -> Ty:
    """``arrows(a, b, c)`` is ``a -> b -> c``."""
    result = tys[-1]
    for ty in reversed(tys[:-1]):
        result = Arrow(ty, result)
    return result


def type_depth(ty: Ty) -> int:
    if isinstance(ty, Arrow):
        return 1 + max(type_depth(ty.dom), type_depth(ty.cod))
    return 0


def cxt_type(ctx: Cxt, index: int) -> Ty:
    return ctx[len(ctx) - 1 - index]


# -- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Abs:
    dom: Ty
    body: "Tm"


@dataclass(frozen=True)
class App:
    fun: "Tm"
    arg: "Tm"


Tm = Union[Var, Abs, App]


@dataclass(frozen=True)
class Checked:
    """A term together with the context it was checked in and its type."""

    ctx: Cxt
    term: Tm
    ty: Ty


def term_size(t: Tm) -> int:
    size, stack = 0, [t]
    while stack:
        t = stack.pop()
        size += 1
        if isinstance(t, Abs):
            stack.append(t.body)
        elif isinstance(t, App):
            stack.extend((t.fun, t.arg))
    return size


# -- neutrals and normal forms -----------------------------------------------


@dataclass(frozen=True)
class Ne(Generic[X]):
    """A variable applied to a spine of arguments, outermost application last.

    ``head_ty`` is the variable's type; argument types are read off it.
    """

    head: int
    head_ty: Ty
    spine: tuple = ()

    def app(self, arg: X) -> "Ne[X]":
        return Ne(self.head, self.head_ty, self.spine + (arg,))

    def arg_types(self) -> list[Ty]:
        tys, ty = [], self.head_ty
        for _ in self.spine:
            assert isinstance(ty, Arrow), "spine longer than head type allows"
            tys.append(ty.dom)
            ty = ty.cod
        return tys

    @property
    def ty(self) -> Ty:
        ty = self.head_ty
        for _ in self.spine:
            assert isinstance(ty, Arrow)
            ty = ty.cod
        return ty


@dataclass(frozen=True)
class Lam:
    body: "Nf"


@dataclass(frozen=True)
class NeNf:
    ne: Ne


Nf = Union[Lam, NeNf]


# -- typechecking --------------------------------------------------------------


class TypingError(Exception):
    """Base class for typechecking failures."""


class UnboundVariable(TypingError):
    def __init__(self, index: int):
        super().__init__(f"unbound variable #{index}")
        self.index = index


class ExpectedFunction(TypingError):
    def __init__(self, actual: Ty):
        super().__init__(f"expected a function, got a term of type {actual}")
        self.actual = actual


class ArgumentMismatch(TypingError):
    def __init__(self, expected: Ty, actual: Ty):
        super().__init__(f"argument type mismatch: expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


def _synth(ctx: Cxt, t: Tm) -> Ty:
    if isinstance(t, Var):
        if not 0 <= t.index < len(ctx):
            raise UnboundVariable(t.index)
        return cxt_type(ctx, t.index)
    if isinstance(t, Abs):
        return Arrow(t.dom, _synth(ctx + (t.dom,), t.body))
    if isinstance(t, App):
        fun_ty = _synth(ctx, t.fun)
        if not isinstance(fun_ty, Arrow):
            raise ExpectedFunction(fun_ty)
        arg_ty = _synth(ctx, t.arg)
        if arg_ty != fun_ty.dom:
            raise ArgumentMismatch(fun_ty.dom, arg_ty)
        return fun_ty.cod
    raise TypeError(f"not a term: {t!r}")


@deep
def infer_type(ctx: Cxt, t: Tm | Checked) -> Checked:
    """Synthesize the type of ``t`` under ``ctx``.

    Raises a :class:`TypingError` subclass when ``t`` is ill-typed.
    """
    if isinstance(t, Checked):
        t = t.term
    ctx = tuple(ctx)
    return Checked(ctx, t, _synth(ctx, t))


# -- embedding normal forms back into terms -----------------------------------


def _embed(n: Nf, ty: Ty) -> Tm:
    if isinstance(n, Lam):
        assert isinstance(ty, Arrow), "Lam at non-arrow type"
        return Abs(ty.dom, _embed(n.body, ty.cod))
    assert isinstance(ty, Star), "neutral normal form at arrow type"
    return _embed_ne(n.ne)


def _embed_ne(ne: Ne) -> Tm:
    t: Tm = Var(ne.head)
    for arg, arg_ty in zip(ne.spine, ne.arg_types()):
        t = App(t, _embed(arg, arg_ty))
    return t


@deep
def embed_nf(n: Nf, ty: Ty) -> Tm:
    """The term denoted by a normal form of type ``ty``."""
    return _embed(n, ty)


def _eta_long(n: Nf, ty: Ty) -> bool:
    if isinstance(n, Lam):
        return isinstance(ty, Arrow) and _eta_long(n.body, ty.cod)
    if not isinstance(n, NeNf) or not isinstance(ty, Star):
        return False
    ne = n.ne
    try:
        if ne.ty != STAR:
            return False
        arg_tys = ne.arg_types()
    except AssertionError:
        return False
    return all(_eta_long(arg, a) for arg, a in zip(ne.spine, arg_tys))


@deep
def is_eta_long(n: Nf, ty: Ty) -> bool:
    """Check the normal-form discipline: arrow types are ``Lam``, base is neutral."""
    return _eta_long(n, ty)
