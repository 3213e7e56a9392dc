import random

import pytest
from hypothesis import settings, strategies as st

from delaynbe import infer_type, parse, resolve
from delaynbe.generate import random_checked
from delaynbe.syntax import STAR, Abs, App, Arrow, Var, arrows

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ARR = Arrow(STAR, STAR)
NAT = Arrow(ARR, ARR)  # Church numerals: (* -> *) -> * -> *

seeds = st.integers(min_value=0, max_value=2**32 - 1)
checked_terms = seeds.map(lambda s: random_checked(random.Random(s)))


def church(n: int):
    body = Var(0)
    for _ in range(n):
        body = App(Var(1), body)
    return Abs(ARR, Abs(STAR, body))


CHURCH_ADD = Abs(
    NAT,
    Abs(NAT, Abs(ARR, Abs(STAR, App(App(Var(3), Var(1)), App(App(Var(2), Var(1)), Var(0)))))),
)


def skk():
    s = Abs(
        arrows(STAR, ARR, STAR),
        Abs(arrows(STAR, ARR), Abs(STAR, App(App(Var(2), Var(0)), App(Var(1), Var(0))))),
    )
    k1 = Abs(STAR, Abs(ARR, Var(1)))
    k2 = Abs(STAR, Abs(STAR, Var(1)))
    return App(App(s, k1), k2)


def check(src: str, free=()):
    return infer_type([ty for _, ty in free], resolve(list(free), parse(src)))


@pytest.fixture
def church_add_2_3():
    return infer_type((), App(App(CHURCH_ADD, church(2)), church(3)))
