"""Finite Example Property search and the comprehension/choice constructions on codes."""

from __future__ import annotations

from typing import Callable, Iterable

from ..errors import InvalidCode, PremiseFails
from ..evaluator import FuncTable, Model, PrimitiveOperator, eval_formula
from ..syntax import parse_formula
from .universe import CodeUniverse, LevelCode, extend, universe


def code_value(c: LevelCode, u: CodeUniverse):
    """The evaluator value standing for a level 0, 1 or 2 code."""
    if c.level == 0:
        return c.payload
    if c.level == 1:
        return FuncTable(c.payload)
    if c.level == 2:
        def fn(call, n):
            arg = tuple(call(i) for i in range(u.N))
            if any(not 0 <= v < u.N for v in arg):
                raise InvalidCode(f"argument {arg} is not a level-1 code over N={u.N}")
            image = u.apply(c, LevelCode(1, arg))
            return FuncTable(image.payload).lookup(n)

        return PrimitiveOperator(f"code{u.index(c)}", fn)
    raise InvalidCode("only codes up to level 2 can be handed to the evaluator")


def formula_predicate(formula, names: Iterable[str], u: CodeUniverse,
                      env: dict | None = None, model: Model | None = None) -> Callable[..., bool]:
    """Turn a bounded formula into a predicate on codes bound to ``names`` in order."""
    names = tuple(names)
    if isinstance(formula, str):
        formula = parse_formula(formula)
    model = model or Model(ceiling=max(1 << 16, u.N + 1))
    base = dict(env or {})

    def P(*codes):
        values = {n: code_value(c, u) for n, c in zip(names, codes)}
        return eval_formula(formula, {**base, **values}, model)

    return P


def finite_example_search(P: Callable[[LevelCode], bool], u: CodeUniverse, level: int,
                          maxN: int | None = None):
    """Least ``N`` (from ``t`` up to ``maxN``) and the first valid level-``level`` code over ``N``
    whose extension to ``u`` satisfies ``P``; ``None`` when there is none."""
    maxN = u.N if maxN is None else min(maxN, u.N)
    for N in range(u.t, maxN + 1):
        small = universe(N, u.t, u.max_level) if N != u.N else u
        for g in small.valid_codes(level):
            big = extend(g, small, u)
            if P(big):
                return N, g, big
    return None


def op_recursive_comprehension(P: Callable[[LevelCode, int], bool], u: CodeUniverse) -> LevelCode:
    """A level-2 code F with F(f)(0) the least n < t such that P(f, n), for every valid f.

    F(f) is the constant function at that witness; invalid f are sent to the
    constant 0.  Raises :class:`PremiseFails` naming an f without a witness.
    """
    images = []
    for f in u.codes(1):
        if not u.is_valid(f):
            images.append((0,) * u.N)
            continue
        n = next((n for n in range(u.t) if P(f, n)), None)
        if n is None:
            raise PremiseFails(f"no n < {u.t} with P(f, n) for f = {f.payload}", witness=f)
        images.append((n,) * u.N)
    return LevelCode(2, tuple(images))


def uniformize(P: Callable[[LevelCode, LevelCode], bool], u: CodeUniverse, level: int = 1,
               maxN: int | None = None) -> LevelCode:
    """Choice code F of level ``level + 1`` with F(f) = E(g) for the least (N, g) such that P(f, E(g)).

    ``f`` ranges over valid level-``level`` codes of ``u`` and ``g`` over valid
    codes of the universes (N, t) with t <= N <= maxN.  Invalid inputs are sent
    to the image of the least valid input.
    """
    maxN = u.N if maxN is None else min(maxN, u.N)
    candidates = []
    for N in range(u.t, maxN + 1):
        small = universe(N, u.t, u.max_level) if N != u.N else u
        candidates.extend(extend(g, small, u) for g in small.valid_codes(level))
    domain = u.codes(level)
    chosen: dict = {}
    for f in domain:
        if not u.is_valid(f):
            continue
        g = next((g for g in candidates if P(f, g)), None)
        if g is None:
            if not any(P(f, h) for h in u.valid_codes(level)):
                raise PremiseFails(f"no g with P(f, g) for f = {f.payload}", witness=f)
            raise PremiseFails(f"no finite example within N <= {maxN} for f = {f.payload}", witness=f)
        chosen[f.payload] = g.payload
    if not chosen:
        raise PremiseFails("no valid inputs at this level")
    fallback = next(iter(chosen.values()))
    return LevelCode(level + 1, tuple(chosen.get(f.payload, fallback) for f in domain))
