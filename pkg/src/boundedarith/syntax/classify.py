"""Quantifier-alternation classification and bounded-discipline checks.

A Sigma_{i+1} formula is an existential block over a boolean combination of
Sigma_i formulas; Pi dually.  Bounded and definitional quantifiers are
transparent.  For each formula we track three minimal indices:

* ``s`` - least i with the formula in Sigma_i,
* ``p`` - least i with the formula in Pi_i,
* ``b`` - least i with the formula a boolean combination of Sigma_i formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast import (
    And, Apply, BoundedQ, DefQ, Eq, Implies, Lt, Mu, Not, Or, UnboundedQ, Var,
    term_sort, walk,
)
from .printer import print_term


@dataclass(frozen=True)
class AlternationClass:
    kind: str  # "Sigma" | "Pi" | "BooleanCombination"
    k: int

    def __str__(self):
        if self.kind == "BooleanCombination":
            return f"BC(Sigma_{self.k})"
        return f"{self.kind}_{self.k}"


@dataclass(frozen=True)
class _Level:
    s: int
    p: int
    b: int


_BOUNDED = _Level(0, 0, 0)


def _combine(parts) -> _Level:
    b = max((x.b for x in parts), default=0)
    if b == 0:
        return _BOUNDED
    return _Level(b + 1, b + 1, b)


def _nested_formulas(term):
    return [n.body for n in walk(term) if isinstance(n, Mu)]


def _levels(f) -> _Level:
    if isinstance(f, (Eq, Lt)):
        inner = [_levels(g) for g in _nested_formulas(f.left) + _nested_formulas(f.right)]
        return _combine(inner)
    if isinstance(f, Not):
        x = _levels(f.body)
        return _Level(x.p, x.s, x.b)
    if isinstance(f, (And, Or, Implies)):
        return _combine([_levels(f.left), _levels(f.right)])
    if isinstance(f, BoundedQ):
        inner = [_levels(g) for g in _nested_formulas(f.bound)]
        return _combine(inner + [_levels(f.body)]) if inner else _levels(f.body)
    if isinstance(f, DefQ):
        inner = [_levels(f.definition.body)]
        body = _levels(f.body)
        if all(x.b == 0 for x in inner):
            return body
        return _combine(inner + [body])
    if isinstance(f, UnboundedQ):
        x = _levels(f.body)
        if f.kind == "E":
            s = max(1, min(x.s, x.b + 1))
            return _Level(s, s + 1, s)
        p = max(1, min(x.p, x.b + 1))
        return _Level(p + 1, p, p)
    raise TypeError(f"not a formula: {f!r}")


def classify_alternation(f) -> AlternationClass:
    lv = _levels(f)
    if lv.s == 0 and lv.p == 0:
        return AlternationClass("Sigma", 0)
    if lv.b < min(lv.s, lv.p) and lv.s == lv.p:
        return AlternationClass("BooleanCombination", lv.b)
    if lv.s <= lv.p:
        return AlternationClass("Sigma", lv.s)
    return AlternationClass("Pi", lv.p)


@dataclass(frozen=True)
class Violation:
    kind: str  # "unbounded" | "self-bound" | "extensional-equality"
    var: str
    message: str
    span: tuple | None = field(default=None, compare=False)


def _mentions(term, name: str) -> bool:
    return any(isinstance(n, Var) and n.name == name for n in walk(term))


def check_bounded(f) -> list[Violation]:
    """Every quantifier or comparison that breaks the bounded discipline."""
    out: list[Violation] = []
    for n in walk(f):
        if isinstance(n, UnboundedQ):
            out.append(Violation("unbounded", n.var.name, f"{n.kind} {n.var.name}. is unbounded", n.span))
        elif isinstance(n, (BoundedQ, Mu)) and _mentions(n.bound, n.var.name):
            what = "mu" if isinstance(n, Mu) else n.kind
            out.append(Violation(
                "self-bound", n.var.name,
                f"bound of {what} {n.var.name} < {print_term(n.bound)} mentions {n.var.name}", n.span,
            ))
        elif isinstance(n, Eq) and not term_sort(n.left).is_number:
            out.append(Violation(
                "extensional-equality", "",
                f"{print_term(n.left)} = {print_term(n.right)} compares functions", n.span,
            ))
    return out


def is_bounded(f) -> bool:
    return not check_bounded(f)


def max_level(node) -> int:
    """Highest function level mentioned anywhere in ``node``."""
    best = 0
    for n in walk(node):
        if isinstance(n, Var):
            best = max(best, n.sort.level)
        elif isinstance(n, Apply):
            best = max(best, term_sort(n.head).level)
    return best


__all__ = ["AlternationClass", "Violation", "classify_alternation", "check_bounded", "is_bounded", "max_level"]
