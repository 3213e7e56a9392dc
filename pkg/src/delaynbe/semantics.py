"""Weak-head values, environments, order-preserving embeddings, weakening.

An environment for context ``G`` living in ``D`` is a tuple of values, one per
entry of ``G``, innermost last.  An OPE ``G <= D`` witnesses that ``D`` embeds
into ``G`` in order; it is built from ``ID``, :class:`Weak` (skip one entry of
``G``) and :class:`Lift` (keep one entry on both sides).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .syntax import Cxt, Lam, Ne, NeNf, Nf, Tm


@dataclass(frozen=True)
class NeV:
    ne: Ne


@dataclass(frozen=True)
class Closure:
    """A lambda body (checked one binder deeper) with values for its free variables."""

    body: Tm
    env: tuple


Val = Union[NeV, Closure]
Env = tuple  # tuple[Val, ...], innermost last


def var_val(index: int, ty) -> NeV:
    return NeV(Ne(index, ty))


def lookup(x: int, env: Env) -> Val:
    if not 0 <= x < len(env):
        raise IndexError(f"variable #{x} outside environment of length {len(env)}")
    return env[len(env) - 1 - x]


# -- order-preserving embeddings ----------------------------------------------


@dataclass(frozen=True)
class Id:
    def __repr__(self) -> str:
        return "ID"


@dataclass(frozen=True)
class Weak:
    rest: "OPE"


@dataclass(frozen=True)
class Lift:
    rest: "OPE"


OPE = Union[Id, Weak, Lift]
ID = Id()
WK = Weak(ID)


def compose(eta: OPE, eta2: OPE) -> OPE:
    """``eta . eta2``: first embed by ``eta2``, then by ``eta``."""
    if isinstance(eta, Id):
        return eta2
    if isinstance(eta, Weak):
        return Weak(compose(eta.rest, eta2))
    if isinstance(eta2, Id):
        return eta
    if isinstance(eta2, Weak):
        return Weak(compose(eta.rest, eta2.rest))
    return Lift(compose(eta.rest, eta2.rest))


def weaken_var(eta: OPE, x: int) -> int:
    shift = 0
    while True:
        if isinstance(eta, Id):
            return x + shift
        if isinstance(eta, Weak):
            shift += 1
        elif x == 0:
            return shift
        else:
            x -= 1
            shift += 1
        eta = eta.rest


def weaken_val(eta: OPE, v: Val) -> Val:
    if isinstance(eta, Id):
        return v
    if isinstance(v, NeV):
        return NeV(weaken_ne_val(eta, v.ne))
    return Closure(v.body, weaken_env(eta, v.env))


def weaken_env(eta: OPE, env: Env) -> Env:
    if isinstance(eta, Id):
        return env
    return tuple(weaken_val(eta, v) for v in env)


def weaken_ne_val(eta: OPE, ne: Ne) -> Ne:
    if isinstance(eta, Id):
        return ne
    spine = tuple(weaken_val(eta, v) for v in ne.spine)
    return Ne(weaken_var(eta, ne.head), ne.head_ty, spine)


def weaken_nf(eta: OPE, n: Nf) -> Nf:
    if isinstance(eta, Id):
        return n
    if isinstance(n, Lam):
        return Lam(weaken_nf(Lift(eta), n.body))
    return NeNf(weaken_ne_nf(eta, n.ne))


def weaken_ne_nf(eta: OPE, ne: Ne) -> Ne:
    if isinstance(eta, Id):
        return ne
    spine = tuple(weaken_nf(eta, n) for n in ne.spine)
    return Ne(weaken_var(eta, ne.head), ne.head_ty, spine)


def ide(ctx: Cxt) -> Env:
    """The identity environment: every variable of ``ctx`` as a neutral value.

    Unfolds the recursive definition (weaken the environment for the shorter
    context, then push variable 0); entry ``i`` from the inside is ``var i``.
    """
    env: Env = ()
    for ty in ctx:
        env = weaken_env(WK, env) + (var_val(0, ty),)
    return env


def ope_source_len(eta: OPE, target_len: int) -> int:
    """Length of ``G`` for ``eta : G <= D`` with ``len(D) == target_len``."""
    extra = 0
    while not isinstance(eta, Id):
        if isinstance(eta, Weak):
            extra += 1
        eta = eta.rest
    return target_len + extra


def ope_min_target(eta: OPE) -> int:
    """Minimum length of ``D`` that ``eta`` can embed (one per ``Lift``)."""
    lifts = 0
    while not isinstance(eta, Id):
        if isinstance(eta, Lift):
            lifts += 1
        eta = eta.rest
    return lifts
