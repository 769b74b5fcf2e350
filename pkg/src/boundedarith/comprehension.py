"""Comprehension schemes for the counting hierarchy, PSPACE and EXPTIME as table recurrences.

Words are numbers.  A word predicate for the counting scheme is
``phi(P, v) -> bool``; for the set schemes it is ``phi(P, w, S) -> bool``,
with S the finite set handed over at step w.  P is a tuple of bits.
Formulas in the surface grammar can be used through :func:`formula_phi`,
where P and S appear as 0/1-valued functions.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import BudgetExceeded
from .evaluator import FuncTable, Model, eval_formula
from .syntax import parse_formula
from .syntax.ast import FUNC
from .towerutil import bitlen

DEFAULT_BUDGET = 1 << 12
COUNTING, PSPACE, EXPTIME = "counting", "pspace", "exptime"
SCHEMES = (COUNTING, PSPACE, EXPTIME)

WordPhi = Callable[[tuple, int], bool]
SetPhi = Callable[[tuple, int, frozenset], bool]


def _check_budget(wmax: int, budget: int):
    if wmax < 0:
        raise ValueError("wmax must be non-negative")
    if wmax > budget:
        raise BudgetExceeded(f"wmax {wmax} exceeds the table budget {budget}")


def counting_Q(phi: WordPhi, wmax: int, P: Sequence[int] = (), budget: int = DEFAULT_BUDGET) -> list[int]:
    """Q(w) = |{v < w : phi(P, v)}| for w = 0..wmax."""
    _check_budget(wmax, budget)
    P = tuple(P)
    out, count = [], 0
    for w in range(wmax + 1):
        out.append(count)
        if phi(P, w):
            count += 1
    return out


def window(w: int) -> range:
    """Words v with w - len(w) < v < w."""
    return range(max(0, w - bitlen(w) + 1), w)


def pspace_Q(phi: SetPhi, wmax: int, P: Sequence[int] = (), budget: int = DEFAULT_BUDGET,
             trace: Callable[[int, frozenset], None] | None = None) -> list[bool]:
    """Q(w) = phi(P, w, {v : Q(v) and w - len(w) < v < w}); ``trace`` sees every window handed to phi."""
    _check_budget(wmax, budget)
    P = tuple(P)
    Q: list[bool] = []
    for w in range(wmax + 1):
        S = frozenset(v for v in window(w) if Q[v])
        if trace is not None:
            trace(w, S)
        Q.append(bool(phi(P, w, S)))
    return Q


def exptime_Q(phi: SetPhi, wmax: int, P: Sequence[int] = (), budget: int = DEFAULT_BUDGET) -> list[bool]:
    """Q(w) = phi(P, w, {v < w : Q(v)})."""
    _check_budget(wmax, budget)
    P = tuple(P)
    Q: list[bool] = []
    history: set = set()
    for w in range(wmax + 1):
        q = bool(phi(P, w, frozenset(history)))
        Q.append(q)
        if q:
            history.add(w)
    return Q


def run_scheme(scheme: str, phi, wmax: int, P: Sequence[int] = (), budget: int = DEFAULT_BUDGET) -> list:
    if scheme == COUNTING:
        return counting_Q(phi, wmax, P, budget)
    if scheme == PSPACE:
        return pspace_Q(phi, wmax, P, budget)
    if scheme == EXPTIME:
        return exptime_Q(phi, wmax, P, budget)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")


def formula_phi(text: str, scheme: str, wmax: int, model: Model | None = None):
    """A word predicate from a bounded formula.

    For the counting scheme the free word variable is ``v``; for the set
    schemes it is ``w`` and the set is the function ``S`` on 0..wmax.  The
    oracle ``P`` is a function on its bit table, so probes past the table
    are errors.
    """
    f = parse_formula(text, sorts={"P": FUNC, "S": FUNC})
    model = model or Model(ceiling=max(1 << 12, 4 * (wmax + 2)))

    if scheme == COUNTING:
        def phi(P, v):
            return eval_formula(f, {"P": FuncTable(P), "v": v}, model)
    elif scheme in (PSPACE, EXPTIME):
        def phi(P, w, S):
            table = FuncTable(tuple(1 if i in S else 0 for i in range(wmax + 1)))
            return eval_formula(f, {"P": FuncTable(P), "w": w, "S": table}, model)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return phi


def parse_bits(text: str) -> tuple:
    """A bit string such as ``0110`` (whitespace ignored)."""
    bits = "".join(text.split())
    if any(c not in "01" for c in bits):
        raise ValueError("oracle file must contain only 0 and 1")
    return tuple(int(c) for c in bits)


def compose_levels(phi_next: WordPhi, previous: Sequence[int]) -> WordPhi:
    """Feed one level's table to the next as its oracle: P(v) is bit 0 of the previous count."""
    P = tuple(int(x) & 1 for x in previous)
    return lambda _P, v: phi_next(P, v)
