"""Surface grammar, AST, printer and quantifier classification."""

from .ast import (
    BINARY, FUNC, OPER, UNARY, Add, And, Apply, BoundedQ, DefQ, Definition, Eq,
    Implies, Len, Lit, Lt, Mu, Mul, Not, Omega1, Or, QuasiPoly, Sort, Tower,
    UnboundedQ, Var, default_sort, free_vars, func_sort, term_sort, walk,
)
from .classify import AlternationClass, Violation, check_bounded, classify_alternation, is_bounded
from .parser import parse_definition, parse_formula, parse_term, split_corpus
from .printer import print_definition, print_formula, print_term, show
