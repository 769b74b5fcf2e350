"""Pretty-printer producing text that parses back to the same AST."""

from __future__ import annotations

from .ast import (
    Add, And, Apply, BoundedQ, DefQ, Definition, Eq, Implies, Len, Lit, Lt, Mu,
    Mul, Not, Omega1, Or, QuasiPoly, Tower, UnboundedQ, Var, default_sort,
)

# term precedences
_ADD, _MUL, _ATOM = 1, 2, 3
# formula precedences; quantifiers sit at 0
_IMP, _OR, _AND, _NOT, _CMP = 1, 2, 3, 4, 5


def _binder(v: Var) -> str:
    if v.sort == default_sort(v.name):
        return v.name
    return f"{v.name}:{v.sort}"


def print_term(t, prec: int = 0) -> str:
    if isinstance(t, Lit):
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Add):
        s = f"{print_term(t.left, _ADD)} + {print_term(t.right, _MUL)}"
        return f"({s})" if prec > _ADD else s
    if isinstance(t, Mul):
        s = f"{print_term(t.left, _MUL)} * {print_term(t.right, _ATOM)}"
        return f"({s})" if prec > _MUL else s
    if isinstance(t, Len):
        return f"len({print_term(t.arg)})"
    if isinstance(t, Omega1):
        return f"omega({print_term(t.arg)})"
    if isinstance(t, QuasiPoly):
        return f"qpoly({print_term(t.arg)})"
    if isinstance(t, Tower):
        return f"tower({print_term(t.base)}, {print_term(t.height)}, {print_term(t.top)})"
    if isinstance(t, Apply):
        args = ", ".join(print_term(a) for a in t.args)
        return f"{print_term(t.head, _ATOM)}({args})"
    if isinstance(t, Mu):
        return f"mu({_binder(t.var)} < {print_term(t.bound)} : {print_formula(t.body)})"
    raise TypeError(f"not a term: {t!r}")


def print_definition(d: Definition) -> str:
    params = ", ".join(_binder(p) for p in d.params)
    return f"({params}) mu({_binder(d.mu_var)} < {print_term(d.bound)} : {print_formula(d.body)})"


def _fmt(f, prec: int, tail: bool) -> str:
    """``tail`` is true when nothing follows ``f`` before a closing bracket."""
    if isinstance(f, Eq):
        return f"{print_term(f.left)} = {print_term(f.right)}"
    if isinstance(f, Lt):
        return f"{print_term(f.left)} < {print_term(f.right)}"
    if isinstance(f, Not):
        return "!" + _fmt(f.body, _NOT, tail)
    if isinstance(f, (And, Or, Implies)):
        if isinstance(f, And):
            own, op, lp, rp = _AND, "&", _AND, _NOT
        elif isinstance(f, Or):
            own, op, lp, rp = _OR, "|", _OR, _AND
        else:
            own, op, lp, rp = _IMP, "->", _OR, _IMP
        inner_tail = tail or prec > own
        s = f"{_fmt(f.left, lp, False)} {op} {_fmt(f.right, rp, inner_tail)}"
        return f"({s})" if prec > own else s
    if isinstance(f, (BoundedQ, UnboundedQ, DefQ)):
        if isinstance(f, BoundedQ):
            rel = "<" if f.var.sort.is_number else "sub"
            head = f"{f.kind} {_binder(f.var)} {rel} {print_term(f.bound)}"
        elif isinstance(f, UnboundedQ):
            head = f"{f.kind} {_binder(f.var)}"
        else:
            d = f.definition
            params = ", ".join(_binder(p) for p in d.params)
            mu = f"mu({_binder(d.mu_var)} < {print_term(d.bound)} : {print_formula(d.body)})"
            head = f"{f.kind} {f.var.name}({params}) := {mu}"
        s = f"{head}. {_fmt(f.body, 0, True)}"
        return s if (prec == 0 or tail) else f"({s})"
    raise TypeError(f"not a formula: {f!r}")


def print_formula(f) -> str:
    return _fmt(f, 0, True)


def show(node) -> str:
    """Print either a term or a formula."""
    from .ast import FORMULA_TYPES

    return print_formula(node) if isinstance(node, FORMULA_TYPES) else print_term(node)
