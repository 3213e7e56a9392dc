"""Normalization by evaluation for the simply-typed lambda calculus, in the delay monad."""

from .delay import (
    DEFAULT_FUEL,
    Converged,
    Delay,
    Diverged,
    Later,
    Now,
    bind,
    bisim,
    converge,
    fmap,
    later,
    never,
    now,
)
from .frontend import (
    ParseError,
    ScopeError,
    parse,
    parse_type,
    print_nf,
    print_nf_de_bruijn,
    print_tm,
    resolve,
)
from .nbe import FuelExhausted, NormalizeReport, apply, eval_term, nf, normalize, readback
from .oracle import beta_normalize, eta_expand, oracle_nf
from .semantics import ID, WK, Closure, Lift, NeV, Weak, compose, ide, lookup
from .syntax import (
    STAR,
    Abs,
    App,
    Arrow,
    Checked,
    Lam,
    Ne,
    NeNf,
    Star,
    TypingError,
    Var,
    embed_nf,
    infer_type,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
