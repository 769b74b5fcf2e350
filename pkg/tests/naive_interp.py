"""A deliberately plain interpreter used as a test oracle for the evaluator.

It shares only the AST classes with the package.  Functions and operators
are Python closures, environments are plain dicts copied on every binder, and
failures are reported as short tags instead of exception classes:
``"graph"`` for probing a table outside its length, ``"ceiling"`` for a value
that reaches the ceiling, ``"unbound"`` for a missing name.
"""

from __future__ import annotations

from boundedarith.syntax.ast import (
    Add, And, Apply, BoundedQ, DefQ, Eq, Implies, Len, Lit, Lt, Mu, Mul, Not, Or, Var,
)


class Stop(Exception):
    def __init__(self, tag):
        super().__init__(tag)
        self.tag = tag


def table(entries):
    entries = list(entries)

    def f(n):
        if n < 0 or n >= len(entries):
            raise Stop("graph")
        return entries[n]

    return f


def sum_operator(ceiling):
    def op(fn):
        def g(n):
            total = 0
            for i in range(n + 1):
                total += fn(i)
            if total >= ceiling:
                raise Stop("ceiling")
            return total

        return g

    return op


class Naive:
    def __init__(self, ceiling):
        self.ceiling = ceiling

    def cap(self, v):
        if v >= self.ceiling:
            raise Stop("ceiling")
        return v

    def num(self, t, env):
        match t:
            case Lit(value=v):
                return self.cap(v)
            case Var(name=name):
                if name not in env:
                    raise Stop("unbound")
                return env[name]
            case Add(left=a, right=b):
                x = self.num(a, env)
                y = self.num(b, env)
                return self.cap(x + y)
            case Mul(left=a, right=b):
                x = self.num(a, env)
                y = self.num(b, env)
                return self.cap(x * y)
            case Len(arg=a):
                return self.num(a, env).bit_length()
            case Apply(head=h, args=(a,)):
                fn = self.fun(h, env)
                return fn(self.num(a, env))
            case Mu(var=v, bound=b, body=body):
                top = self.num(b, env)
                x = 0
                while x < top:
                    if self.truth(body, dict(env, **{v.name: x})):
                        return x
                    x += 1
                return top
        raise NotImplementedError(type(t).__name__)

    def fun(self, t, env):
        match t:
            case Var(name=name):
                if name in env:
                    return env[name]
                raise Stop("unbound")
            case Apply(head=Var(name=opname), args=(inner,)):
                op = env.get(opname)
                if op is None:
                    raise Stop("unbound")
                return op(self.fun(inner, env))
        raise NotImplementedError(type(t).__name__)

    def closure(self, d, env):
        """A definition as a closure: a function, or an operator returning one."""
        if d.level == 1:
            (p,) = d.params

            def f(n):
                return self.num(Mu(d.mu_var, d.bound, d.body), dict(env, **{p.name: n}))

            return f
        fp, np_ = d.params

        def op(fn):
            def g(n):
                return self.num(Mu(d.mu_var, d.bound, d.body), dict(env, **{fp.name: fn, np_.name: n}))

            return g

        return op

    def truth(self, f, env):
        match f:
            case Eq(left=a, right=b):
                x = self.num(a, env)
                return x == self.num(b, env)
            case Lt(left=a, right=b):
                x = self.num(a, env)
                return x < self.num(b, env)
            case Not(body=b):
                return not self.truth(b, env)
            case And(left=a, right=b):
                return self.truth(a, env) and self.truth(b, env)
            case Or(left=a, right=b):
                return self.truth(a, env) or self.truth(b, env)
            case Implies(left=a, right=b):
                return (not self.truth(a, env)) or self.truth(b, env)
            case BoundedQ(kind=k, var=v, bound=b, body=body):
                top = self.num(b, env)
                for x in range(top):
                    r = self.truth(body, dict(env, **{v.name: x}))
                    if k == "E" and r:
                        return True
                    if k == "A" and not r:
                        return False
                return k == "A"
            case DefQ(var=v, definition=d, body=body):
                return self.truth(body, dict(env, **{v.name: self.closure(d, env)}))
        raise NotImplementedError(type(f).__name__)


def outcome(ceiling, formula, env):
    """``("ok", bool)`` or ``("err", tag)``."""
    try:
        return ("ok", Naive(ceiling).truth(formula, env))
    except Stop as s:
        return ("err", s.tag)
