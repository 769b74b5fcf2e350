"""Seeded random generation of well-sorted ASTs.

``bounded=True`` restricts output to formulas the evaluator accepts: only
bounded quantifiers, definitional quantifiers and mu, with small literal
bounds so that evaluation at desk scale terminates quickly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ast import (
    BINARY, FUNC, OPER, UNARY, Add, And, Apply, BoundedQ, DefQ, Definition, Eq,
    Implies, Len, Lit, Lt, Mu, Mul, Not, Omega1, Or, QuasiPoly, Tower, UnboundedQ, Var,
)


@dataclass
class GenConfig:
    bounded: bool = True
    max_lit: int = 4
    max_bound: int = 4
    fun_params: tuple = ("f", "g")
    op_params: tuple = ("F",)
    num_params: tuple = ("y",)
    allow_defs: bool = True
    allow_exotic: bool = False  # towers, omega, qpoly, unary binders


@dataclass
class _Ctx:
    nums: list = field(default_factory=list)
    funs: list = field(default_factory=list)
    ops: list = field(default_factory=list)
    counter: list = field(default_factory=lambda: [0])

    def fresh(self, stem):
        self.counter[0] += 1
        return f"{stem}{self.counter[0]}"

    def with_num(self, v):
        return _Ctx(self.nums + [v], self.funs, self.ops, self.counter)

    def with_fun(self, v):
        return _Ctx(self.nums, self.funs + [v], self.ops, self.counter)

    def with_op(self, v):
        return _Ctx(self.nums, self.funs, self.ops + [v], self.counter)


class Generator:
    def __init__(self, seed: int | random.Random = 0, config: GenConfig | None = None):
        self.rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        self.cfg = config or GenConfig()

    def context(self) -> _Ctx:
        c = self.cfg
        return _Ctx(
            nums=[Var(n, BINARY) for n in c.num_params],
            funs=[Var(n, FUNC) for n in c.fun_params],
            ops=[Var(n, OPER) for n in c.op_params],
        )

    # ------------------------------------------------------------ terms
    def small_bound(self, ctx: _Ctx, depth: int):
        r = self.rng.random()
        if ctx.nums and r < 0.3:
            v = self.rng.choice(ctx.nums)
            return Add(v, Lit(1)) if self.rng.random() < 0.5 else v
        if ctx.funs and r < 0.4 and depth > 0:
            return Apply(self.rng.choice(ctx.funs), (Lit(self.rng.randint(0, 2)),))
        return Lit(self.rng.randint(0, self.cfg.max_bound))

    def fun_term(self, ctx: _Ctx, depth: int):
        if ctx.ops and depth > 1 and self.rng.random() < 0.3:
            return Apply(self.rng.choice(ctx.ops), (self.fun_term(ctx, depth - 1),))
        return self.rng.choice(ctx.funs)

    def term(self, ctx: _Ctx, depth: int):
        rng = self.rng
        if depth <= 0:
            if ctx.nums and rng.random() < 0.6:
                return rng.choice(ctx.nums)
            return Lit(rng.randint(0, self.cfg.max_lit))
        choices = ["lit", "var", "add", "add", "mul", "len"]
        if ctx.funs:
            choices += ["app", "app"]
        if ctx.funs and ctx.ops:
            choices += ["opapp"]
        choices += ["mu"]
        if self.cfg.allow_exotic:
            choices += ["omega", "qpoly", "tower"]
        kind = rng.choice(choices)
        if kind == "lit" or (kind == "var" and not ctx.nums):
            return Lit(rng.randint(0, self.cfg.max_lit))
        if kind == "var":
            return rng.choice(ctx.nums)
        if kind == "add":
            return Add(self.term(ctx, depth - 1), self.term(ctx, depth - 1))
        if kind == "mul":
            return Mul(self.term(ctx, depth - 1), self.term(ctx, 0))
        if kind == "len":
            return Len(self.term(ctx, depth - 1))
        if kind == "omega":
            return Omega1(self.term(ctx, 0))
        if kind == "qpoly":
            return QuasiPoly(self.term(ctx, 0))
        if kind == "tower":
            return Tower(Lit(2), Lit(rng.randint(0, 2)), self.term(ctx, 0))
        if kind == "app":
            return Apply(rng.choice(ctx.funs), (self.term(ctx, depth - 1),))
        if kind == "opapp":
            head = Apply(rng.choice(ctx.ops), (self.fun_term(ctx, depth),))
            return Apply(head, (self.term(ctx, depth - 1),))
        v = Var(ctx.fresh("m"), BINARY)
        return Mu(v, self.small_bound(ctx, depth), self.formula(ctx.with_num(v), depth - 1))

    # --------------------------------------------------------- formulas
    def definition(self, ctx: _Ctx, depth: int, level: int) -> Definition:
        n = Var(ctx.fresh("n"), BINARY)
        mv = Var(ctx.fresh("m"), BINARY)
        if level == 1:
            inner = ctx.with_num(n)
            params = (n,)
        else:
            p = Var(ctx.fresh("p"), FUNC)
            inner = ctx.with_fun(p).with_num(n)
            params = (p, n)
        bound = self.small_bound(inner, depth)
        body = self.formula(inner.with_num(mv), max(depth - 1, 0))
        return Definition(level, params, mv, bound, body)

    def formula(self, ctx: _Ctx, depth: int):
        rng = self.rng
        if depth <= 0:
            cmp = Eq if rng.random() < 0.5 else Lt
            return cmp(self.term(ctx, 1), self.term(ctx, 1))
        choices = ["eq", "lt", "not", "and", "or", "imp", "bq", "bq"]
        if self.cfg.allow_defs:
            choices += ["def"]
            if ctx.funs:
                choices += ["opdef"]
        if not self.cfg.bounded:
            choices += ["uq", "uq", "fq", "feq", "sub"]
        kind = rng.choice(choices)
        if kind in ("eq", "lt"):
            cmp = Eq if kind == "eq" else Lt
            return cmp(self.term(ctx, depth), self.term(ctx, depth - 1))
        if kind == "not":
            return Not(self.formula(ctx, depth - 1))
        if kind in ("and", "or", "imp"):
            cls = {"and": And, "or": Or, "imp": Implies}[kind]
            return cls(self.formula(ctx, depth - 1), self.formula(ctx, depth - 1))
        if kind == "bq":
            sort = UNARY if (self.cfg.allow_exotic and rng.random() < 0.2) else BINARY
            v = Var(ctx.fresh("x"), sort)
            bound = self.small_bound(ctx, depth)
            return BoundedQ(rng.choice("AE"), v, bound, self.formula(ctx.with_num(v), depth - 1))
        if kind == "sub":
            v = Var(ctx.fresh("q"), FUNC)
            return BoundedQ(rng.choice("AE"), v, Lit(rng.randint(0, 3)), self.formula(ctx.with_fun(v), depth - 1))
        if kind == "def":
            v = Var(ctx.fresh("h"), FUNC)
            d = self.definition(ctx, depth - 1, 1)
            return DefQ(rng.choice("AE"), v, d, self.formula(ctx.with_fun(v), depth - 1))
        if kind == "opdef":
            v = Var(ctx.fresh("G"), OPER)
            d = self.definition(ctx, depth - 1, 2)
            return DefQ(rng.choice("AE"), v, d, self.formula(ctx.with_op(v), depth - 1))
        if kind == "uq":
            v = Var(ctx.fresh("z"), BINARY)
            return UnboundedQ(rng.choice("AE"), v, self.formula(ctx.with_num(v), depth - 1))
        if kind == "fq":
            if rng.random() < 0.5:
                v = Var(ctx.fresh("g"), FUNC)
                return UnboundedQ(rng.choice("AE"), v, self.formula(ctx.with_fun(v), depth - 1))
            v = Var(ctx.fresh("H"), OPER)
            return UnboundedQ(rng.choice("AE"), v, self.formula(ctx.with_op(v), depth - 1))
        if ctx.funs:  # feq
            a, b = rng.choice(ctx.funs), rng.choice(ctx.funs)
            return Eq(a, b)
        return Eq(self.term(ctx, 1), self.term(ctx, 1))

    def sample(self, depth: int):
        return self.formula(self.context(), depth)


def random_formulas(n: int, depth: int, seed: int = 0, config: GenConfig | None = None):
    gen = Generator(seed, config)
    return [gen.sample(gen.rng.randint(0, depth)) for _ in range(n)]
