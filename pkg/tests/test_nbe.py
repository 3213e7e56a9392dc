import operator
import random

import pytest
from hypothesis import given

from delaynbe._deep import run_deep
from delaynbe.delay import Converged, Diverged, Later, Now, bisim, converge, fmap
from delaynbe.generate import random_checked, random_env, random_ope, random_term
from delaynbe.nbe import (
    Beta,
    FuelExhausted,
    apply,
    beta,
    eta,
    eval_term,
    nereadback,
    nf,
    normalize,
    readback,
)
from delaynbe.oracle import oracle_nf
from delaynbe.semantics import (
    ID,
    WK,
    Closure,
    Lift,
    NeV,
    compose,
    ide,
    ope_source_len,
    var_val,
    weaken_env,
    weaken_ne_nf,
    weaken_ne_val,
    weaken_nf,
    weaken_val,
)
from delaynbe.syntax import STAR, Abs, App, Arrow, Lam, Ne, NeNf, Var, embed_nf, infer_type

from conftest import ARR, checked_terms, church, seeds, skk

V = var_val(0, STAR)
ID_NF = Lam(NeNf(Ne(0, STAR)))
ETA_F = Lam(NeNf(Ne(1, ARR, (NeNf(Ne(0, STAR)),))))


# -- eval / apply / beta ----------------------------------------------------------


def test_eval_var_and_abs():
    assert eval_term(Var(0), (V,)) == Now(V)
    assert eval_term(Abs(STAR, Var(0)), ()) == Now(Closure(Var(0), ()))


def test_eval_redex_takes_one_step():
    t = App(Abs(STAR, Var(0)), Var(0))
    assert converge(eval_term(t, ide((STAR,))), 10) == Converged(V, 1)


def test_apply_neutral_is_immediate():
    f = var_val(0, ARR)
    w = var_val(1, STAR)
    assert apply(f, w) == Now(NeV(Ne(0, ARR, (w,))))


def test_apply_closure_is_delayed():
    clo = Closure(Var(0), ())
    assert converge(apply(clo, V), 1) == Converged(V, 1)
    assert converge(apply(clo, V), 0) == Diverged(0)
    assert apply(clo, V) == Later(beta(Var(0), (), V))


def test_beta_forces_to_eval():
    assert beta(Var(0), (), V).force() == Now(V)
    assert beta(Abs(STAR, Var(1)), (), V).force() == Now(Closure(Var(1), (V,)))


# -- readback ---------------------------------------------------------------------


def test_readback_base_neutral_is_free():
    assert converge(readback(STAR, V), 0) == Converged(NeNf(Ne(0, STAR)), 0)


def test_readback_closure_at_arrow():
    assert converge(readback(ARR, Closure(Var(0), ())), 5) == Converged(ID_NF, 2)


def test_readback_neutral_at_arrow_eta_expands():
    assert converge(readback(ARR, var_val(0, ARR)), 5) == Converged(ETA_F, 1)


def test_eta_on_closure_and_neutral():
    assert converge(eta(ARR, Closure(Var(0), ())).force(), 5) == Converged(NeNf(Ne(0, STAR)), 1)
    assert converge(eta(ARR, var_val(0, ARR)).force(), 5) == Converged(
        NeNf(Ne(1, ARR, (NeNf(Ne(0, STAR)),))), 0
    )


def test_eta_applies_the_weakened_function():
    clo = Closure(Var(1), (var_val(0, STAR),))
    # the body returns the captured variable, which must be shifted past the fresh one
    assert converge(eta(ARR, clo).force(), 5).value == NeNf(Ne(1, STAR))


def test_nereadback():
    assert nereadback(Ne(3, STAR)) == Now(Ne(3, STAR))
    w = Ne(0, ARR, (var_val(1, STAR),))
    assert nereadback(w) == Now(Ne(0, ARR, (NeNf(Ne(1, STAR)),)))
    higher = Ne(0, Arrow(ARR, STAR), (Closure(Var(0), ()),))
    res = converge(nereadback(higher), 10)
    assert res == Converged(Ne(0, Arrow(ARR, STAR), (ID_NF,)), 2)


# -- nf / normalize: golden step counts, hand-traced ---------------------------------


def test_nf_identity():
    assert converge(nf(infer_type((), Abs(STAR, Var(0)))), 10) == Converged(ID_NF, 2)


def test_nf_base_variable():
    assert converge(nf(infer_type((STAR,), Var(0))), 10) == Converged(NeNf(Ne(0, STAR)), 0)


def test_nf_arrow_variable_is_eta_expanded():
    assert converge(nf(infer_type((ARR,), Var(0))), 10) == Converged(ETA_F, 1)


def test_normalize_report():
    report = normalize(infer_type((), Abs(STAR, Var(0))), 10)
    assert (report.normal, report.eval_steps, report.readback_steps) == (ID_NF, 0, 2)
    assert report.total_steps == 2


def test_skk_is_identity():
    report = normalize(infer_type((), skk()))
    assert report.normal == ID_NF
    assert (report.eval_steps, report.readback_steps, report.total_steps) == (2, 5, 7)


def test_church_addition(church_add_2_3):
    report = normalize(church_add_2_3)
    five = converge(nf(infer_type((), church(5))), 100).value
    assert report.normal == five
    assert (report.eval_steps, report.readback_steps) == (2, 8)


@pytest.mark.parametrize("fuel", [0, 1, 6])
def test_normalize_out_of_fuel(fuel):
    with pytest.raises(FuelExhausted) as info:
        normalize(infer_type((), skk()), fuel)
    assert info.value.fuel_spent == fuel


def test_normalize_exact_fuel_is_enough():
    assert normalize(infer_type((), skk()), 7).total_steps == 7


def test_construction_is_immediate_for_deep_terms():
    # a 20000-deep tower of redexes; building nf must not run any of them
    t = Var(0)
    for _ in range(20_000):
        t = App(Abs(STAR, Var(0)), t)
    c = infer_type((STAR,), t)
    d = nf(c)
    assert isinstance(d, Later)
    assert converge(d, 10) == Diverged(10)
    assert normalize(c).normal == NeNf(Ne(0, STAR))


def test_long_neutral_spines():
    # f (f (... (f x))) with 5000 applications reads back without stack trouble
    t = Var(0)
    for _ in range(5000):
        t = App(Var(1), t)
    c = infer_type((ARR,), Abs(STAR, t))
    report = normalize(c)
    assert report.total_steps == 2
    # structural equality on 5000-deep trees needs the big stack too
    assert run_deep(operator.eq, report.normal, oracle_nf(c))


# -- properties ------------------------------------------------------------------------


@given(checked_terms)
def test_agrees_with_oracle(c):
    assert normalize(c).normal == oracle_nf(c)


@given(checked_terms)
def test_normal_forms_are_idempotent(c):
    n = normalize(c).normal
    again = infer_type(c.ctx, embed_nf(n, c.ty))
    assert normalize(again).normal == n


@given(checked_terms)
def test_normalize_is_deterministic(c):
    assert normalize(c) == normalize(c)


@given(checked_terms)
def test_report_matches_composed_nf(c):
    report = normalize(c)
    assert converge(nf(c)) == Converged(report.normal, report.total_steps)


def _setup(seed):
    rng = random.Random(seed)
    c = random_checked(rng, max_size=30)
    target = c.ctx + tuple(rng.choice([STAR, ARR]) for _ in range(rng.randint(0, 2)))
    env = random_env(rng, c.ctx, target)
    eta_ = random_ope(rng, len(target))
    return rng, c, target, env, eta_


DEPTH = 10_000


@given(seeds)
def test_eval_commutes_with_weakening(seed):
    _, c, _, env, eta_ = _setup(seed)
    if env is None:
        return
    lhs = fmap(lambda v: weaken_val(eta_, v), eval_term(c.term, env))
    rhs = eval_term(c.term, weaken_env(eta_, env))
    assert bisim(lhs, rhs, DEPTH)


@given(seeds)
def test_apply_and_beta_commute_with_weakening(seed):
    rng, c, target, env, eta_ = _setup(seed)
    if env is None or not isinstance(c.ty, Arrow):
        return
    f = converge(eval_term(c.term, env), DEPTH).value
    arg_t = random_term(rng, target, c.ty.dom, 10)
    if arg_t is None:
        return
    v = converge(eval_term(arg_t, ide(target)), DEPTH).value
    lhs = fmap(lambda r: weaken_val(eta_, r), apply(f, v))
    rhs = apply(weaken_val(eta_, f), weaken_val(eta_, v))
    assert bisim(lhs, rhs, DEPTH)
    if isinstance(f, Closure):
        b = Beta(f.body, f.env, v)
        b_weak = Beta(f.body, weaken_env(eta_, f.env), weaken_val(eta_, v))
        assert bisim(fmap(lambda r: weaken_val(eta_, r), b.force()), b_weak.force(), DEPTH)


@given(seeds)
def test_readback_and_eta_commute_with_weakening(seed):
    _, c, _, env, eta_ = _setup(seed)
    if env is None:
        return
    v = converge(eval_term(c.term, env), DEPTH).value
    lhs = fmap(lambda n: weaken_nf(eta_, n), readback(c.ty, v))
    assert bisim(lhs, readback(c.ty, weaken_val(eta_, v)), DEPTH)
    if isinstance(v, NeV):
        lhs = fmap(lambda m: weaken_ne_nf(eta_, m), nereadback(v.ne))
        assert bisim(lhs, nereadback(weaken_ne_val(eta_, v.ne)), DEPTH)
    if isinstance(c.ty, Arrow):
        lhs = fmap(lambda n: weaken_nf(Lift(eta_), n), eta(c.ty, v).force())
        assert bisim(lhs, eta(c.ty, weaken_val(eta_, v)).force(), DEPTH)


def test_weakening_helpers_agree():
    assert compose(WK, ID) == WK
    assert ope_source_len(WK, 2) == 3
