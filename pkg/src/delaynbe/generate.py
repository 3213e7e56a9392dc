"""Seeded random instances for property tests and the acceptance corpus.

Everything here takes an explicit :class:`random.Random`, so a seed fixes the
whole corpus across runs and platforms.
"""

from __future__ import annotations

import random

from .delay import Converged, Delay, bind, converge, later, never, now
from .nbe import eval_term
from .semantics import ID, OPE, Env, Lift, Weak, ide
from .syntax import (
    STAR,
    Abs,
    App,
    Arrow,
    Checked,
    Cxt,
    Tm,
    Ty,
    Var,
    cxt_type,
    term_size,
    type_depth,
)


def random_type(rng: random.Random, max_depth: int) -> Ty:
    if max_depth <= 0 or rng.random() < 0.45:
        return STAR
    return Arrow(random_type(rng, max_depth - 1), random_type(rng, max_depth - 1))


def _result_after(ty: Ty, n: int) -> Ty | None:
    for _ in range(n):
        if not isinstance(ty, Arrow):
            return None
        ty = ty.cod
    return ty


class _OutOfTries(Exception):
    pass


class _TermGen:
    def __init__(self, rng: random.Random, max_type_depth: int, max_calls: int = 4000):
        self.rng = rng
        self.max_type_depth = max_type_depth
        self.calls = 0
        self.max_calls = max_calls

    def arg_type(self, result: Ty) -> Ty | None:
        room = self.max_type_depth - 1 - type_depth(result)
        if room < 0:
            return None
        return random_type(self.rng, min(room, 2))

    def term(self, ctx: Cxt, ty: Ty, budget: int) -> Tm | None:
        self.calls += 1
        if self.calls > self.max_calls:
            raise _OutOfTries
        if budget <= 0:
            return None
        rng = self.rng
        options: list[tuple[float, str]] = []
        if any(cxt_type(ctx, i) == ty for i in range(len(ctx))):
            options.append((3.0 if budget < 4 else 0.6, "var"))
        if isinstance(ty, Arrow) and budget >= 2:
            options.append((1.5, "abs"))
        if budget >= 5:
            options.append((1.6, "redex"))
        if budget >= 3:
            options.append((1.0, "app"))
            options.append((1.8, "spine"))
        while options:
            weights = [w for w, _ in options]
            (pick,) = rng.choices(range(len(options)), weights)
            _, kind = options.pop(pick)
            t = getattr(self, "_" + kind)(ctx, ty, budget)
            if t is not None:
                return t
        return None

    def _var(self, ctx: Cxt, ty: Ty, budget: int) -> Tm | None:
        return Var(self.rng.choice([i for i in range(len(ctx)) if cxt_type(ctx, i) == ty]))

    def _abs(self, ctx: Cxt, ty: Arrow, budget: int) -> Tm | None:
        body = self.term(ctx + (ty.dom,), ty.cod, budget - 1)
        return None if body is None else Abs(ty.dom, body)

    def _split(self, budget: int) -> tuple[int, int]:
        left = self.rng.randint(1, budget - 2)
        return left, budget - 1 - left

    def _app(self, ctx: Cxt, ty: Ty, budget: int) -> Tm | None:
        a = self.arg_type(ty)
        if a is None:
            return None
        b_fun, b_arg = self._split(budget)
        fun = self.term(ctx, Arrow(a, ty), b_fun)
        if fun is None:
            return None
        arg = self.term(ctx, a, b_arg)
        return None if arg is None else App(fun, arg)

    def _redex(self, ctx: Cxt, ty: Ty, budget: int) -> Tm | None:
        a = self.arg_type(ty)
        if a is None:
            return None
        b_fun, b_arg = self._split(budget)
        body = self.term(ctx + (a,), ty, b_fun - 1)
        if body is None:
            return None
        arg = self.term(ctx, a, b_arg)
        return None if arg is None else App(Abs(a, body), arg)

    def _spine(self, ctx: Cxt, ty: Ty, budget: int) -> Tm | None:
        heads = []
        for i in range(len(ctx)):
            head_ty, n = cxt_type(ctx, i), 1
            while isinstance(head_ty, Arrow) and 1 + 2 * n <= budget:
                if _result_after(cxt_type(ctx, i), n) == ty:
                    heads.append((i, n))
                head_ty, n = head_ty.cod, n + 1
        if not heads:
            return None
        i, n = self.rng.choice(heads)
        t: Tm = Var(i)
        head_ty = cxt_type(ctx, i)
        remaining = budget - 1 - n
        for k in range(n):
            share = max(1, remaining // (n - k))
            arg = self.term(ctx, head_ty.dom, share)
            if arg is None:
                return None
            remaining -= term_size(arg)
            t = App(t, arg)
            head_ty = head_ty.cod
        return t


def random_term(
    rng: random.Random, ctx: Cxt, ty: Ty, max_size: int, max_type_depth: int = 4
) -> Tm | None:
    """A term of type ``ty`` in ``ctx`` with at most ``max_size`` nodes, or ``None``."""
    gen = _TermGen(rng, max_type_depth)
    try:
        return gen.term(tuple(ctx), ty, max_size)
    except _OutOfTries:
        return None


def random_context(rng: random.Random, max_len: int = 3, max_type_depth: int = 2) -> Cxt:
    return tuple(random_type(rng, max_type_depth) for _ in range(rng.randint(0, max_len)))


def random_checked(
    rng: random.Random, max_size: int = 60, max_type_depth: int = 4
) -> Checked:
    """A random well-typed term in a random context (retries until one is found)."""
    while True:
        ctx = random_context(rng)
        ty = random_type(rng, min(3, max_type_depth))
        size = rng.randint(1, max_size)
        t = random_term(rng, ctx, ty, size, max_type_depth)
        if t is not None:
            return Checked(ctx, t, ty)


def random_ope(rng: random.Random, target_len: int, max_weak: int = 3) -> OPE:
    """A random ``G <= D`` for ``len(D) == target_len``."""
    lifts = rng.randint(0, target_len)
    weaks = rng.randint(0, max_weak)
    ops = ["lift"] * lifts + ["weak"] * weaks
    rng.shuffle(ops)
    eta: OPE = ID
    for op in reversed(ops):
        eta = Lift(eta) if op == "lift" else Weak(eta)
    return eta


def random_env(rng: random.Random, ctx: Cxt, target: Cxt, max_size: int = 12) -> Env | None:
    """Values living in ``target``, one for each entry of ``ctx``.

    Each value is the evaluation of a random term in ``target``'s identity
    environment, so closures and neutral spines both occur.
    """
    env = []
    rho = ide(target)
    for ty in ctx:
        t = random_term(rng, target, ty, max_size)
        if t is None:
            return None
        res = converge(eval_term(t, rho), 10_000)
        if not isinstance(res, Converged):
            return None
        env.append(res.value)
    return tuple(env)


# -- delayed computations ----------------------------------------------------------


def delayed(value, laters: int) -> Delay:
    d = now(value)
    for _ in range(laters):
        d = later(_const(d))
    return d


def _const(d: Delay):
    return lambda: d


def random_delay(rng: random.Random, max_depth: int = 20, p_never: float = 0.1) -> Delay:
    """A random ``Delay[int]`` built from at most ``max_depth`` layers, or ``never``."""
    if rng.random() < p_never:
        return never()
    if max_depth >= 2 and rng.random() < 0.3:
        first = rng.randint(0, max_depth // 2)
        return bind(delayed(rng.randint(-50, 50), first), random_kleisli(rng, max_depth - first))
    return delayed(rng.randint(-50, 50), rng.randint(0, max_depth))


def random_kleisli(rng: random.Random, max_laters: int = 5, p_never: float = 0.3):
    """A pure ``int -> Delay[int]`` whose delay and result depend on its input.

    With probability ``p_never`` it diverges on one residue class mod 10.
    """
    a, b = rng.randint(1, 7), rng.randint(0, 7)
    c, d = rng.randint(-3, 3), rng.randint(-20, 20)
    modulus = max(1, max_laters + 1)
    diverge_on = rng.randint(0, 9) if rng.random() < p_never else None

    def k(x: int) -> Delay:
        if diverge_on is not None and x % 10 == diverge_on:
            return never()
        return delayed(c * x + d, (a * x + b) % modulus)

    return k
