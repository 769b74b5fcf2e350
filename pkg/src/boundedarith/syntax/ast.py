"""AST for the four-sorted bounded-quantifier language.

Every node is a frozen dataclass, so structural equality is ``==``.  Source
spans ride along but never take part in comparisons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

Span = Optional[Tuple[int, int]]


@dataclass(frozen=True)
class Sort:
    kind: str  # "unary" | "binary" | "func"
    level: int = 0

    def __post_init__(self):
        if self.kind not in ("unary", "binary", "func"):
            raise ValueError(f"unknown sort kind {self.kind!r}")
        if self.kind == "func" and self.level < 1:
            raise ValueError("function sorts have level >= 1")
        if self.kind != "func" and self.level != 0:
            raise ValueError("number sorts have level 0")

    @property
    def is_number(self) -> bool:
        return self.kind != "func"

    def __str__(self):
        if self.kind == "func":
            return str(self.level)
        return "u" if self.kind == "unary" else "b"


UNARY = Sort("unary")
BINARY = Sort("binary")
FUNC = Sort("func", 1)
OPER = Sort("func", 2)


def func_sort(level: int) -> Sort:
    return BINARY if level == 0 else Sort("func", level)


_FUNC_NAME = re.compile(r"[fghpq](\d*|_\w*)'*$")


def default_sort(name: str) -> Sort:
    """Naming convention: ``f g h p q`` are functions, capitalised names are operators."""
    if name[:1].isupper():
        return OPER
    if _FUNC_NAME.match(name):
        return FUNC
    return BINARY


class Node:
    __slots__ = ()


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Lit(Node):
    value: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var(Node):
    name: str
    sort: Sort = BINARY
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Add(Node):
    left: "Term"
    right: "Term"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Mul(Node):
    left: "Term"
    right: "Term"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Len(Node):
    arg: "Term"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Omega1(Node):
    """``x -> x ** len(x)``."""

    arg: "Term"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class QuasiPoly(Node):
    """``x -> x ** (len(x) ** len(len(x)))``."""

    arg: "Term"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Apply(Node):
    head: "Term"
    args: Tuple["Term", ...]
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Mu(Node):
    var: Var
    bound: "Term"
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Tower(Node):
    base: "Term"
    height: "Term"
    top: "Term"
    span: Span = field(default=None, compare=False, repr=False)


Term = Union[Lit, Var, Add, Mul, Len, Omega1, QuasiPoly, Apply, Mu, Tower]

# ------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Eq(Node):
    left: Term
    right: Term
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Lt(Node):
    left: Term
    right: Term
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Not(Node):
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class And(Node):
    left: "Formula"
    right: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Or(Node):
    left: "Formula"
    right: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Implies(Node):
    left: "Formula"
    right: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BoundedQ(Node):
    """``A x < T.`` over numbers, or ``A f sub T.`` over subsets of ``{0..T-1}``."""

    kind: str  # "A" | "E"
    var: Var
    bound: Term
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class UnboundedQ(Node):
    kind: str
    var: Var
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Definition(Node):
    """``sym(params) = mu(mu_var < bound : body)``; level 1 takes ``(n)``, level 2 ``(f, n)``."""

    level: int
    params: Tuple[Var, ...]
    mu_var: Var
    bound: Term
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class DefQ(Node):
    kind: str
    var: Var
    definition: Definition
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


Formula = Union[Eq, Lt, Not, And, Or, Implies, BoundedQ, UnboundedQ, DefQ]

TERM_TYPES = (Lit, Var, Add, Mul, Len, Omega1, QuasiPoly, Apply, Mu, Tower)
FORMULA_TYPES = (Eq, Lt, Not, And, Or, Implies, BoundedQ, UnboundedQ, DefQ)

TRUE = Eq(Lit(0), Lit(0))
FALSE = Eq(Lit(0), Lit(1))


def term_sort(t: Term) -> Sort:
    if isinstance(t, Var):
        return t.sort
    if isinstance(t, Apply):
        head = term_sort(t.head)
        return func_sort(head.level - 1)
    return BINARY


def children(node):
    """Immediate sub-terms and sub-formulas, left to right."""
    if isinstance(node, (Lit, Var)):
        return ()
    if isinstance(node, (Add, Mul, Eq, Lt, And, Or, Implies)):
        return (node.left, node.right)
    if isinstance(node, (Len, Omega1, QuasiPoly)):
        return (node.arg,)
    if isinstance(node, Apply):
        return (node.head, *node.args)
    if isinstance(node, Mu):
        return (node.bound, node.body)
    if isinstance(node, Tower):
        return (node.base, node.height, node.top)
    if isinstance(node, Not):
        return (node.body,)
    if isinstance(node, BoundedQ):
        return (node.bound, node.body)
    if isinstance(node, UnboundedQ):
        return (node.body,)
    if isinstance(node, Definition):
        return (node.bound, node.body)
    if isinstance(node, DefQ):
        return (node.definition, node.body)
    raise TypeError(f"not an AST node: {node!r}")


def walk(node):
    """Pre-order traversal over every node, definitions included."""
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))


def free_vars(node) -> list:
    """Free variables as ``(name, sort)`` in order of first occurrence."""
    seen: dict = {}

    def go(n, bound: frozenset):
        if isinstance(n, Var):
            if n.name not in bound and n.name not in seen:
                seen[n.name] = n.sort
            return
        if isinstance(n, Mu):
            go(n.bound, bound)
            go(n.body, bound | {n.var.name})
        elif isinstance(n, BoundedQ):
            go(n.bound, bound)
            go(n.body, bound | {n.var.name})
        elif isinstance(n, UnboundedQ):
            go(n.body, bound | {n.var.name})
        elif isinstance(n, Definition):
            inner = bound | {p.name for p in n.params}
            go(n.bound, inner)
            go(n.body, inner | {n.mu_var.name})
        elif isinstance(n, DefQ):
            go(n.definition, bound)
            go(n.body, bound | {n.var.name})
        else:
            for c in children(n):
                go(c, bound)

    go(node, frozenset())
    return list(seen.items())


def size(node) -> int:
    return sum(1 for _ in walk(node))


def depth(node) -> int:
    kids = children(node)
    return 1 + max((depth(c) for c in kids), default=0)
