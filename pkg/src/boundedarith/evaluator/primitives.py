"""Builtins and direct constructions over function tables."""

from __future__ import annotations

from typing import Callable, Mapping

from ..errors import BudgetExceeded, EvalError
from ..syntax.ast import Apply, BoundedQ, Definition, Mu, Var, walk
from .core import Evaluator
from .values import FuncTable, Model, OpApplied, OpDef, PrimitiveOperator


def mu_eval(bound: int, pred: Callable[[int], bool], model: Model | None = None) -> int:
    """Least ``x < bound`` with ``pred(x)``, or ``bound`` when there is none."""
    if model is not None:
        model.check(bound, "mu bound")
    for x in range(bound):
        if pred(x):
            return x
    return bound


def define_function(d: Definition, env: Mapping | None = None, model: Model | None = None,
                    length: int | None = None) -> FuncTable:
    """Materialise a level-1 definition as a table of length at least the threshold."""
    if d.level != 1:
        raise EvalError("define_function takes a level-1 definition")
    ev = Evaluator(model)
    env = dict(env or {})
    L = max(ev.model.threshold, length or 0)
    (param,) = d.params
    entries = [ev.run_definition(d, {**env, param.name: n}, 0) for n in range(L)]
    return FuncTable(tuple(entries))


def apply_operator(F, f, n: int, model: Model | None = None) -> int:
    """``F(f)(n)`` for an operator definition or primitive operator."""
    if not isinstance(F, (OpDef, PrimitiveOperator)):
        raise EvalError("apply_operator needs an operator value")
    ev = Evaluator(model)
    ev.model.check(n, "argument")
    return ev.call(OpApplied(F, f), n, 0)


def builtin_sum(f: FuncTable, n: int) -> int:
    """``SUM(f)(n)``, the prefix sum of ``f`` up to and including ``n``."""
    return sum(f.lookup(i) for i in range(n + 1))


def digit_comprehension(lenT: int, pred: Callable[[int], bool], model: Model | None = None) -> int:
    """The number whose bit ``i`` is ``pred(i)`` for ``0 <= i <= lenT``."""
    if model is not None:
        model.check((1 << (lenT + 1)) - 1, "digit comprehension")
    return sum(1 << i for i in range(lenT + 1) if pred(i))


def compose(f: FuncTable, g: FuncTable) -> FuncTable:
    """``f o g`` on the domain of ``g``."""
    return FuncTable(tuple(f.lookup(g.lookup(i)) for i in range(len(g))))


def iterate_power(f: FuncTable, n: int, max_compositions: int = 1 << 16) -> FuncTable:
    """``F_n(f)``: F_0(f) = f o f and F_{k+1}(f) = F_k(F_k(f)), i.e. f composed 2^(2^n) times.

    The doubling recursion performs 2^n table compositions.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n >= max_compositions.bit_length():
        raise BudgetExceeded(f"F_{n} needs 2^{n} compositions, budget is {max_compositions}")

    def F(k: int, g: FuncTable) -> FuncTable:
        if k == 0:
            return compose(g, g)
        return F(k - 1, F(k - 1, g))

    return F(n, f)


def query_bound(d: Definition, model: Model) -> tuple[int, int]:
    """Static bound ``(count, index)`` on the queries an operator definition makes to its argument.

    Every probe lands below the ceiling.  Each occurrence of the function
    parameter is reached at most once per assignment to the binders of the
    definition (quantified variables, mu variables, nested definition
    parameters and call-site arguments), each ranging below the ceiling.
    """
    if d.level != 2:
        raise EvalError("query_bound takes an operator definition")
    fname = d.params[0].name
    occurrences = binders = 0
    for node in walk(d):
        if isinstance(node, Apply):
            if isinstance(node.head, Var) and node.head.name == fname:
                occurrences += 1
            else:
                binders += 1
        elif isinstance(node, (BoundedQ, Mu)):
            binders += 1
        elif isinstance(node, Definition):
            binders += 2
    return occurrences * model.ceiling ** binders, model.ceiling - 1


__all__ = [
    "mu_eval", "define_function", "apply_operator", "builtin_sum", "digit_comprehension",
    "compose", "iterate_power", "query_bound",
]
