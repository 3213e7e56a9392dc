"""Substitution-based reference normalizer used to cross-check NbE.

Leftmost-outermost beta-reduction to beta-normal form, followed by
type-directed eta-expansion.  Shares no code with the evaluator beyond the
syntax definitions.
"""

from __future__ import annotations

from ._deep import deep
from .syntax import (
    Abs,
    App,
    Arrow,
    Checked,
    Cxt,
    Lam,
    Ne,
    NeNf,
    Nf,
    Tm,
    Ty,
    Var,
    cxt_type,
)

DEFAULT_MAX_REDUCTIONS = 1_000_000


class NegativeIndex(ValueError):
    pass


class LimitExceeded(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"no beta-normal form within {limit} reductions")
        self.limit = limit


def shift(d: int, cutoff: int, t: Tm) -> Tm:
    if isinstance(t, Var):
        if t.index < cutoff:
            return t
        if t.index + d < 0:
            raise NegativeIndex(f"shifting #{t.index} by {d} goes negative")
        return Var(t.index + d)
    if isinstance(t, Abs):
        return Abs(t.dom, shift(d, cutoff + 1, t.body))
    return App(shift(d, cutoff, t.fun), shift(d, cutoff, t.arg))


def _subst(t: Tm, j: int, s: Tm, depth: int) -> Tm:
    # s is shifted lazily by the binder depth crossed so far
    if isinstance(t, Var):
        if t.index == j + depth:
            return shift(depth, 0, s) if depth else s
        return t
    if isinstance(t, Abs):
        return Abs(t.dom, _subst(t.body, j, s, depth + 1))
    return App(_subst(t.fun, j, s, depth), _subst(t.arg, j, s, depth))


def subst(t: Tm, j: int, s: Tm) -> Tm:
    """Substitute ``s`` for index ``j`` in ``t``, removing that binder.

    Indices above ``j`` drop by one, as when contracting the redex that bound
    ``j``; ``s`` is shifted up under binders and then down with the rest.
    """
    return shift(-1, j, _subst(t, j, shift(1, j, s), 0))


def contract(redex: App) -> Tm:
    assert isinstance(redex.fun, Abs)
    return subst(redex.fun.body, 0, redex.arg)


def reduce_step(t: Tm) -> Tm | None:
    """One leftmost-outermost beta step, or ``None`` if ``t`` is normal."""
    if isinstance(t, Var):
        return None
    if isinstance(t, Abs):
        body = reduce_step(t.body)
        return None if body is None else Abs(t.dom, body)
    if isinstance(t.fun, Abs):
        return contract(t)
    fun = reduce_step(t.fun)
    if fun is not None:
        return App(fun, t.arg)
    arg = reduce_step(t.arg)
    return None if arg is None else App(t.fun, arg)


def _unwind(t: Tm) -> tuple[Tm, list[Tm]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise LimitExceeded(self.limit)


def _normal_order(t: Tm, budget: _Budget) -> Tm:
    # Contract the head redex until none is left, then normalize the
    # remaining subterms left to right: the same redex sequence as repeated
    # reduce_step, without re-searching from the root every time.
    head, args = _unwind(t)
    while isinstance(head, Abs) and args:
        budget.spend()
        head, more = _unwind(subst(head.body, 0, args[0]))
        args = more + args[1:]
    if isinstance(head, Abs):
        return Abs(head.dom, _normal_order(head.body, budget))
    result = head
    for arg in args:
        result = App(result, _normal_order(arg, budget))
    return result


@deep
def beta_normalize(t: Tm | Checked, max_reductions: int = DEFAULT_MAX_REDUCTIONS) -> Tm:
    if isinstance(t, Checked):
        t = t.term
    return _normal_order(t, _Budget(max_reductions))


def _expand(ctx: Cxt, ty: Ty, t: Tm) -> Nf:
    if isinstance(ty, Arrow):
        if isinstance(t, Abs):
            return Lam(_expand(ctx + (ty.dom,), ty.cod, t.body))
        return Lam(_expand(ctx + (ty.dom,), ty.cod, App(shift(1, 0, t), Var(0))))
    head, args = _unwind(t)
    if not isinstance(head, Var):
        raise ValueError(f"not beta-normal at base type: {t!r}")
    head_ty = cxt_type(ctx, head.index)
    spine, arg_ty = [], head_ty
    for arg in args:
        assert isinstance(arg_ty, Arrow)
        spine.append(_expand(ctx, arg_ty.dom, arg))
        arg_ty = arg_ty.cod
    return NeNf(Ne(head.index, head_ty, tuple(spine)))


@deep
def eta_expand(ctx: Cxt, ty: Ty, t: Tm) -> Nf:
    """The eta-long form of a beta-normal term ``t : ty`` in ``ctx``."""
    return _expand(tuple(ctx), ty, t)


@deep
def oracle_nf(t: Checked, max_reductions: int = DEFAULT_MAX_REDUCTIONS) -> Nf:
    return _expand(t.ctx, t.ty, beta_normalize(t.term, max_reductions))
