"""Recursive evaluation of bounded terms and formulas over a finite model.

Formulas are evaluated left to right with short-circuiting; quantifiers and
mu scan their range in increasing order and stop at the first decisive
witness, so an error raised past that witness is never reached.
"""

from __future__ import annotations

from typing import Mapping

from ..errors import BudgetExceeded, CeilingExceeded, EvalError, NotBounded, UnboundVar
from ..syntax.ast import (
    UNARY, Add, And, Apply, BoundedQ, DefQ, Definition, Eq, Implies, Len, Lit, Lt,
    Mu, Mul, Not, Omega1, Or, QuasiPoly, Tower, UnboundedQ, Var, free_vars, term_sort,
)
from ..syntax.classify import check_bounded
from ..syntax.printer import print_definition
from ..towerutil import bitlen, pair_all, tower_eval
from .values import (
    BUILTIN_OPERATORS, DefinedFunction, FuncTable, Model, OpApplied, OpDef,
    PrimitiveOperator, is_function_value, is_operator_value,
)


def _power(base: int, exp: int, model: Model, what: str) -> int:
    if base >= 2 and exp >= 1:
        # base**exp >= 2**(exp*(bitlen(base)-1)); refuse before computing
        if exp * (base.bit_length() - 1) >= model.ceiling.bit_length():
            raise CeilingExceeded(f"{what} of {base} reaches ceiling {model.ceiling}")
    return model.check(base**exp, what)


def definition_length(defn: Definition, env: Mapping) -> int:
    """Printed length of ``defn`` plus that of every definition it refers to."""
    total = len(print_definition(defn))
    for name, _ in free_vars(defn):
        v = env.get(name)
        if isinstance(v, (DefinedFunction, OpDef)):
            total += v.total_length
    return total


class Evaluator:
    def __init__(self, model: Model | None = None):
        self.model = model or Model()

    # ----------------------------------------------------------- values
    def make_definition_value(self, defn: Definition, env: Mapping):
        total = definition_length(defn, env)
        if total > self.model.def_budget:
            raise BudgetExceeded(f"definition length {total} over budget {self.model.def_budget}")
        cls = DefinedFunction if defn.level == 1 else OpDef
        if defn.level > 2:
            raise EvalError("definitions above operator level are not evaluated")
        return cls(defn, dict(env), total)

    def run_definition(self, defn: Definition, env: Mapping, depth: int) -> int:
        bound = self.term(defn.bound, env, depth)
        name = defn.mu_var.name
        for m in range(bound):
            if self.formula(defn.body, {**env, name: m}, depth):
                return m
        return bound

    def call(self, fv, n: int, depth: int) -> int:
        """Apply a function value to a number."""
        if isinstance(fv, FuncTable):
            return fv.lookup(n)
        if depth + 1 > self.model.depth_budget:
            raise BudgetExceeded(f"expansion depth over budget {self.model.depth_budget}")
        if isinstance(fv, DefinedFunction):
            (param,) = fv.definition.params
            return self.run_definition(fv.definition, {**fv.env, param.name: n}, depth + 1)
        if isinstance(fv, OpApplied):
            op = fv.op
            if isinstance(op, PrimitiveOperator):
                value = op.fn(lambda i: self.call(fv.arg, i, depth + 1), n)
                return self.model.check(value, op.name)
            fparam, nparam = op.definition.params
            env = {**op.env, fparam.name: fv.arg, nparam.name: n}
            return self.run_definition(op.definition, env, depth + 1)
        raise EvalError(f"not a function value: {fv!r}")

    def lookup(self, var: Var, env: Mapping):
        if var.name in env:
            return env[var.name]
        if var.name in BUILTIN_OPERATORS and var.sort.level == 2:
            return BUILTIN_OPERATORS[var.name]
        raise UnboundVar(var.name)

    def function(self, t, env: Mapping, depth: int):
        """Evaluate a level-1 term to a function value."""
        if isinstance(t, Var):
            v = self.lookup(t, env)
            if not is_function_value(v):
                raise EvalError(f"{t.name} is bound to {type(v).__name__}, expected a function")
            return v
        if isinstance(t, Apply):
            head_level = term_sort(t.head).level
            if head_level != 2 or len(t.args) != 1:
                raise EvalError("only operator(function) applications yield functions here")
            return OpApplied(self.operator(t.head, env), self.function(t.args[0], env, depth))
        raise EvalError(f"cannot evaluate {type(t).__name__} as a function")

    def operator(self, t, env: Mapping):
        if isinstance(t, Var):
            v = self.lookup(t, env)
            if not is_operator_value(v):
                raise EvalError(f"{t.name} is bound to {type(v).__name__}, expected an operator")
            return v
        raise EvalError("hyperoperator applications are not evaluated")

    # ------------------------------------------------------------ terms
    def term(self, t, env: Mapping, depth: int = 0) -> int:
        m = self.model
        if isinstance(t, Lit):
            return m.check(t.value, "literal")
        if isinstance(t, Var):
            v = self.lookup(t, env)
            if not isinstance(v, int):
                raise EvalError(f"{t.name} is not bound to a number")
            return v
        if isinstance(t, Add):
            return m.check(self.term(t.left, env, depth) + self.term(t.right, env, depth), "sum")
        if isinstance(t, Mul):
            return m.check(self.term(t.left, env, depth) * self.term(t.right, env, depth), "product")
        if isinstance(t, Len):
            return bitlen(self.term(t.arg, env, depth))
        if isinstance(t, Omega1):
            x = self.term(t.arg, env, depth)
            return _power(x, bitlen(x), m, "omega")
        if isinstance(t, QuasiPoly):
            x = self.term(t.arg, env, depth)
            lx = bitlen(x)
            return _power(x, _power(lx, bitlen(lx), m, "qpoly exponent"), m, "qpoly")
        if isinstance(t, Tower):
            a, b, c = (self.term(x, env, depth) for x in (t.base, t.height, t.top))
            value = tower_eval(a, b, c, max_bits=m.ceiling.bit_length())
            return m.check(value, "tower")
        if isinstance(t, Apply):
            level = term_sort(t.head).level
            if level != 1:
                raise EvalError("application does not produce a number")
            fv = self.function(t.head, env, depth)
            args = [self.term(a, env, depth) for a in t.args]
            n = args[0] if len(args) == 1 else m.check(pair_all(args), "pair")
            return self.call(fv, n, depth)
        if isinstance(t, Mu):
            bound = self.term(t.bound, env, depth)
            for x in range(bound):
                if self.formula(t.body, {**env, t.var.name: x}, depth):
                    return x
            return bound
        raise EvalError(f"not a term: {t!r}")

    # --------------------------------------------------------- formulas
    def formula(self, f, env: Mapping, depth: int = 0) -> bool:
        if isinstance(f, Eq):
            if not term_sort(f.left).is_number:
                raise NotBounded("extensional equality of functions is not bounded")
            return self.term(f.left, env, depth) == self.term(f.right, env, depth)
        if isinstance(f, Lt):
            return self.term(f.left, env, depth) < self.term(f.right, env, depth)
        if isinstance(f, Not):
            return not self.formula(f.body, env, depth)
        if isinstance(f, And):
            return self.formula(f.left, env, depth) and self.formula(f.right, env, depth)
        if isinstance(f, Or):
            return self.formula(f.left, env, depth) or self.formula(f.right, env, depth)
        if isinstance(f, Implies):
            return (not self.formula(f.left, env, depth)) or self.formula(f.right, env, depth)
        if isinstance(f, BoundedQ):
            return self.bounded_quantifier(f, env, depth)
        if isinstance(f, DefQ):
            value = self.make_definition_value(f.definition, env)
            return self.formula(f.body, {**env, f.var.name: value}, depth)
        if isinstance(f, UnboundedQ):
            raise NotBounded(f"unbounded quantifier over {f.var.name}")
        raise EvalError(f"not a formula: {f!r}")

    def _range(self, f: BoundedQ, env: Mapping, depth: int):
        bound = self.term(f.bound, env, depth)
        var = f.var
        if var.sort.is_number:
            for x in range(bound):
                if var.sort == UNARY:
                    self.model.check((1 << x) - 1, "unary code")
                yield x
            return
        # subsets of {0..bound-1} as boolean tables
        self.model.check(1 << bound, "power-set size")
        length = max(bound, self.model.threshold)
        for mask in range(1 << bound):
            yield FuncTable(tuple((mask >> i) & 1 if i < bound else 0 for i in range(length)))

    def bounded_quantifier(self, f: BoundedQ, env: Mapping, depth: int) -> bool:
        name = f.var.name
        results = (self.formula(f.body, {**env, name: x}, depth) for x in self._range(f, env, depth))
        return any(results) if f.kind == "E" else all(results)


def _require_bounded(f):
    for v in check_bounded(f):
        if v.kind != "self-bound":
            raise NotBounded(v.message)


def eval_formula(f, env: Mapping | None = None, model: Model | None = None) -> bool:
    _require_bounded(f)
    return Evaluator(model).formula(f, dict(env or {}))


def eval_term(t, env: Mapping | None = None, model: Model | None = None) -> int:
    _require_bounded(t)
    return Evaluator(model).term(t, dict(env or {}))
