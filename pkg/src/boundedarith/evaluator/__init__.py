"""Finite-model evaluation of bounded formulas."""

from .axioms import Verdict, check_axiom_instance, check_tree, require_premise, wkl_path
from .bindings import parse_binding, parse_bindings
from .core import Evaluator, definition_length, eval_formula, eval_term
from .primitives import (
    apply_operator, builtin_sum, compose, define_function, digit_comprehension,
    iterate_power, mu_eval, query_bound,
)
from .values import (
    BUILTIN_OPERATORS, SUM, DefinedFunction, FuncTable, Model, OpApplied, OpDef,
    PrimitiveOperator, TracingTable, env_sorts, value_sort,
)
