"""Run deeply recursive work on a worker thread with a large C stack.

CPython 3.10 spends C stack on every Python call, so the default 8 MiB main
thread stack overflows long before the recursion depths that normal forms of
desk-scale terms can reach.  Public entry points are wrapped with
:func:`deep`, which re-dispatches the call onto a thread whose stack is big
enough; nested calls from inside such a thread run inline.
"""

from __future__ import annotations

import functools
import sys
import threading
from typing import Callable, TypeVar

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 400_000

_local = threading.local()
_limit_lock = threading.Lock()
_active = 0
_saved_limit = 0

F = TypeVar("F", bound=Callable)


def _enter() -> None:
    global _active, _saved_limit
    with _limit_lock:
        if _active == 0:
            _saved_limit = sys.getrecursionlimit()
            sys.setrecursionlimit(max(_saved_limit, RECURSION_LIMIT))
        _active += 1


def _leave() -> None:
    global _active
    with _limit_lock:
        _active -= 1
        if _active == 0:
            sys.setrecursionlimit(_saved_limit)


def run_deep(fn: Callable, *args, **kwargs):
    """Call ``fn`` on a big-stack thread and return (or re-raise) its outcome."""
    if getattr(_local, "deep", False):
        return fn(*args, **kwargs)

    outcome: dict = {}

    def worker() -> None:
        _local.deep = True
        try:
            outcome["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised in the caller's thread
            outcome["error"] = exc

    _enter()
    try:
        with _limit_lock:
            old = threading.stack_size(STACK_BYTES)
            try:
                thread = threading.Thread(target=worker, name="delaynbe-deep")
                thread.start()
            finally:
                threading.stack_size(old)
        thread.join()
    finally:
        _leave()
    if "error" in outcome:
        raise outcome["error"]
    return outcome["value"]


def deep(fn: F) -> F:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return run_deep(fn, *args, **kwargs)

    return wrapper  # type: ignore[return-value]
