"""The delay (partiality) monad.

A ``Delay`` is either :class:`Now`, holding a value, or :class:`Later`,
holding a suspension that produces another ``Delay`` when forced.  Building a
``Delay`` never runs unbounded work; only observers (:func:`converge`,
:func:`bisim`) unfold ``Later`` layers, one step per layer.

Suspensions are any object with a zero-argument ``force()`` method returning a
``Delay``.  Plain callables are wrapped in :class:`Thunk`.

Binding on a ``Later`` does not nest Python closures.  Pending continuations
are collected in a :class:`_Bound` suspension and applied by an iterative loop
when forced, so left-nested binds of any depth force in constant Python stack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Generic, Protocol, TypeVar, Union

from ._deep import deep

A = TypeVar("A")
B = TypeVar("B")

DEFAULT_FUEL = 1_000_000


class Suspension(Protocol):
    def force(self) -> "Delay": ...


@dataclass(frozen=True)
class Now(Generic[A]):
    value: A

    def __repr__(self) -> str:
        return f"Now({self.value!r})"


@dataclass(frozen=True)
class Later:
    pending: Suspension

    def __repr__(self) -> str:
        return f"Later({self.pending!r})"


Delay = Union[Now, Later]


@dataclass(frozen=True, eq=False)
class Thunk:
    """A suspension backed by a pure zero-argument callable."""

    fn: Callable[[], Delay]

    def force(self) -> Delay:
        return self.fn()


@dataclass(frozen=True)
class _Seq:
    """Catenation node of a continuation tree; leaves are plain callables."""

    first: Any
    then: Any


@dataclass(frozen=True)
class _Bound:
    """``source`` forced, then fed through the continuation tree ``conts``."""

    source: Suspension
    conts: Any

    def force(self) -> Delay:
        d = self.source.force()
        rest = self.conts
        while True:
            if isinstance(d, Later):
                if rest is None:
                    return d
                return Later(_bound(d.pending, rest))
            if rest is None:
                return d
            # pop the leftmost leaf, rotating the left spine rightwards
            while isinstance(rest, _Seq) and isinstance(rest.first, _Seq):
                rest = _Seq(rest.first.first, _Seq(rest.first.then, rest.then))
            if isinstance(rest, _Seq):
                k, rest = rest.first, rest.then
            else:
                k, rest = rest, None
            d = k(d.value)


def _bound(source: Suspension, conts: Any) -> _Bound:
    if isinstance(source, _Bound):
        return _Bound(source.source, _Seq(source.conts, conts))
    return _Bound(source, conts)


def now(value: A) -> Now[A]:
    return Now(value)


def later(pending: Suspension | Callable[[], Delay]) -> Later:
    """Wrap a suspension (or a pure zero-argument callable) in one delay step."""
    if not hasattr(pending, "force"):
        pending = Thunk(pending)
    return Later(pending)


class _Never:
    def force(self) -> Delay:
        return NEVER

    def __repr__(self) -> str:
        return "never"


NEVER: Later = Later(_Never())


def never() -> Later:
    """The computation that stays ``Later`` forever."""
    return NEVER


def bind(a: Delay, f: Callable[[Any], Delay]) -> Delay:
    if isinstance(a, Now):
        return f(a.value)
    return Later(_bound(a.pending, f))


def fmap(f: Callable[[A], B], a: Delay) -> Delay:
    """Functorial map; adds no delay steps."""
    return bind(a, lambda x: Now(f(x)))


@dataclass(frozen=True)
class Converged(Generic[A]):
    value: A
    steps: int


@dataclass(frozen=True)
class Diverged:
    fuel_spent: int


Convergence = Union[Converged, Diverged]


@deep
def converge(a: Delay, fuel: int = DEFAULT_FUEL) -> Convergence:
    """Unwrap at most ``fuel`` ``Later`` layers of ``a``.

    >>> converge(later(lambda: now(3)), 1)
    Converged(value=3, steps=1)
    >>> converge(later(lambda: now(3)), 0)
    Diverged(fuel_spent=0)
    """
    if fuel < 0:
        raise ValueError(f"fuel must be non-negative, got {fuel}")
    steps = 0
    while isinstance(a, Later):
        if steps == fuel:
            return Diverged(fuel)
        a = a.pending.force()
        steps += 1
    return Converged(a.value, steps)


def _default_eq(x: Any, y: Any) -> bool:
    return x == y


@deep
def bisim(
    a: Delay,
    b: Delay,
    depth: int,
    eq: Callable[[Any, Any], bool] = _default_eq,
) -> bool:
    """Strong bisimilarity observed at most ``depth`` layers deep.

    Values must agree under ``eq`` at the same number of delays.  Two
    computations still ``Later`` when the bound is reached are related.
    """
    for level in range(depth + 1):
        a_now, b_now = isinstance(a, Now), isinstance(b, Now)
        if a_now and b_now:
            return bool(eq(a.value, b.value))
        if a_now or b_now:
            return False
        if level == depth:
            break
        a = a.pending.force()
        b = b.pending.force()
    return True
