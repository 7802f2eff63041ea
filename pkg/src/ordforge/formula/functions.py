"""Registry of primitive recursive function and decidable predicate symbols.

Closed applications are evaluated by the kernel's conversion check; open ones
stay symbolic.  Theories register the symbols that depend on them (``ax@T``,
``ded@T`` and so on) when they are constructed.
"""

from __future__ import annotations

from typing import Callable

_FUNCS: dict[str, Callable[..., int]] = {}
_PREDS: dict[str, Callable[..., bool]] = {}


class EvalError(Exception):
    pass


def register_fn(name: str, fn: Callable[..., int]) -> None:
    _FUNCS[name] = fn


def register_pred(name: str, fn: Callable[..., bool]) -> None:
    _PREDS[name] = fn


def has_fn(name: str) -> bool:
    return name in _FUNCS


def has_pred(name: str) -> bool:
    return name in _PREDS


def eval_fn(name: str, args: tuple[int, ...]) -> int:
    fn = _FUNCS.get(name)
    if fn is None:
        raise EvalError(f"unknown function symbol {name!r}")
    try:
        out = fn(*args)
    except EvalError:
        raise
    except (ValueError, TypeError, ArithmeticError, LookupError, RecursionError) as exc:
        raise EvalError(f"{name}{args}: {exc}") from exc
    if not isinstance(out, int) or out < 0:
        raise EvalError(f"{name} returned {out!r}")
    return out


def eval_pred(name: str, args: tuple[int, ...]) -> bool:
    fn = _PREDS.get(name)
    if fn is None:
        raise EvalError(f"unknown predicate symbol {name!r}")
    try:
        return bool(fn(*args))
    except EvalError:
        raise
    except (ValueError, TypeError, ArithmeticError, LookupError, RecursionError) as exc:
        raise EvalError(f"{name}{args}: {exc}") from exc


def registered() -> tuple[list[str], list[str]]:
    return sorted(_FUNCS), sorted(_PREDS)
