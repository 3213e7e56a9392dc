"""Normalization by evaluation into the delay monad.

``eval_term`` turns a term and an environment into a delayed value, using
closures for lambdas.  ``readback`` turns a value back into a delayed
eta-long beta-normal form, directed by its type.  Exactly two places issue a
``Later``: applying a closure (one per beta-redex fired) and eta-expanding at
an arrow type.  Everything between two delays is bounded by the size of the
term and type at hand, so building any of these computations is cheap; the
cost is paid only when an observer unfolds them.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._deep import deep
from .delay import DEFAULT_FUEL, Converged, Delay, Later, Now, bind, converge, fmap
from .semantics import WK, Closure, Env, NeV, Val, lookup, var_val, weaken_val, ide
from .syntax import Abs, App, Arrow, Checked, Lam, Ne, NeNf, Nf, Star, Tm, Ty, Var


def eval_term(t: Tm, env: Env) -> Delay:
    if isinstance(t, Var):
        return Now(lookup(t.index, env))
    if isinstance(t, Abs):
        return Now(Closure(t.body, env))
    return bind(
        eval_term(t.fun, env),
        lambda f: bind(eval_term(t.arg, env), lambda v: apply(f, v)),
    )


def apply(f: Val, v: Val) -> Delay:
    if isinstance(f, NeV):
        return Now(NeV(f.ne.app(v)))
    return Later(Beta(f.body, f.env, v))


@dataclass(frozen=True)
class Beta:
    """Suspended beta-reduction: forcing evaluates ``body`` in ``env`` extended by ``arg``."""

    body: Tm
    env: Env
    arg: Val

    def force(self) -> Delay:
        return eval_term(self.body, self.env + (self.arg,))


def beta(body: Tm, env: Env, arg: Val) -> Beta:
    return Beta(body, env, arg)


def readback(ty: Ty, v: Val) -> Delay:
    if isinstance(ty, Star):
        if not isinstance(v, NeV):
            raise TypeError(f"value at base type must be neutral, got {v!r}")
        return fmap(NeNf, nereadback(v.ne))
    return fmap(Lam, Later(Eta(ty, v)))


@dataclass(frozen=True)
class Eta:
    """Suspended eta-expansion of a function value ``v`` of type ``ty``.

    Forcing weakens ``v`` past a fresh variable, applies it to that variable
    and reads the result back at the codomain.
    """

    ty: Arrow
    v: Val

    def force(self) -> Delay:
        fresh = var_val(0, self.ty.dom)
        cod = self.ty.cod
        return bind(apply(weaken_val(WK, self.v), fresh), lambda r: readback(cod, r))


def eta(ty: Arrow, v: Val) -> Eta:
    return Eta(ty, v)


def nereadback(ne: Ne) -> Delay:
    d: Delay = Now(Ne(ne.head, ne.head_ty))
    for arg, arg_ty in zip(ne.spine, ne.arg_types()):
        d = bind(d, _readback_arg(arg_ty, arg))
    return d


def _readback_arg(arg_ty: Ty, arg: Val):
    return lambda m: fmap(m.app, readback(arg_ty, arg))


@deep
def nf(t: Checked) -> Delay:
    """The delayed normal form of a checked term, in its own context."""
    return bind(eval_term(t.term, ide(t.ctx)), lambda v: readback(t.ty, v))


# -- fuel-bounded driver ---------------------------------------------------------


class FuelExhausted(Exception):
    """The normalizer had not converged when its fuel ran out."""

    def __init__(self, fuel_spent: int):
        super().__init__(f"fuel exhausted after {fuel_spent} steps")
        self.fuel_spent = fuel_spent


@dataclass(frozen=True)
class NormalizeReport:
    normal: Nf
    eval_steps: int
    readback_steps: int

    @property
    def total_steps(self) -> int:
        return self.eval_steps + self.readback_steps


@deep
def normalize(t: Checked, fuel: int = DEFAULT_FUEL) -> NormalizeReport:
    """Run ``nf`` under a fuel budget, attributing steps to each phase.

    Raises :class:`FuelExhausted` if evaluation and readback together need
    more than ``fuel`` delay steps.
    """
    evaluated = converge(eval_term(t.term, ide(t.ctx)), fuel)
    if not isinstance(evaluated, Converged):
        raise FuelExhausted(fuel)
    read = converge(readback(t.ty, evaluated.value), fuel - evaluated.steps)
    if not isinstance(read, Converged):
        raise FuelExhausted(fuel)
    return NormalizeReport(read.value, evaluated.steps, read.steps)
