"""Finite models and runtime values.

The three cuts of the interpretation become budgets on a :class:`Model`:
numeric values stay below ``ceiling``, function graphs reach at least
``threshold``, and definitions are limited in printed length and in how
deeply they may expand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Union

from ..errors import CeilingExceeded, OutOfGraph
from ..syntax.ast import BINARY, FUNC, OPER, Definition, Sort


@dataclass(frozen=True)
class Model:
    ceiling: int = 1 << 16
    threshold: int = 1
    def_budget: int = 4096
    depth_budget: int = 64

    def __post_init__(self):
        if not 0 < self.threshold <= self.ceiling:
            raise ValueError("need 0 < threshold <= ceiling")
        if self.def_budget <= 0 or self.depth_budget <= 0:
            raise ValueError("budgets must be positive")

    def check(self, value: int, what: str = "value") -> int:
        if value >= self.ceiling:
            raise CeilingExceeded(f"{what} {value} reaches ceiling {self.ceiling}")
        return value


@dataclass(frozen=True)
class FuncTable:
    """A function given by its finite graph ``entries[0..L-1]``."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    def __len__(self):
        return len(self.entries)

    def lookup(self, n: int) -> int:
        if not 0 <= n < len(self.entries):
            raise OutOfGraph(n, len(self.entries))
        return self.entries[n]

    def validate(self, model: Model) -> "FuncTable":
        if len(self.entries) < model.threshold:
            raise ValueError(f"table of length {len(self.entries)} is shorter than threshold {model.threshold}")
        for e in self.entries:
            if e < 0:
                raise ValueError("table entries must be natural numbers")
            model.check(e, "table entry")
        return self


@dataclass(frozen=True, eq=False)
class TracingTable(FuncTable):
    """A :class:`FuncTable` that records every index it is asked about."""

    queries: list = field(default_factory=list, compare=False)

    def lookup(self, n: int) -> int:
        self.queries.append(n)
        return super().lookup(n)


@dataclass(frozen=True, eq=False)
class DefinedFunction:
    """A level-1 definition closed over its environment; evaluated on demand."""

    definition: Definition
    env: Mapping
    total_length: int


@dataclass(frozen=True, eq=False)
class OpDef:
    """A level-2 definition (operator) closed over its environment."""

    definition: Definition
    env: Mapping
    total_length: int


@dataclass(frozen=True, eq=False)
class PrimitiveOperator:
    """Operator constant backed by Python; ``fn(call, n)`` where ``call(i)`` probes the argument."""

    name: str
    fn: Callable[[Callable[[int], int], int], int]


@dataclass(frozen=True, eq=False)
class OpApplied:
    """The function ``op(arg)``."""

    op: Union[OpDef, PrimitiveOperator]
    arg: "FunctionValue"


FunctionValue = Union[FuncTable, DefinedFunction, OpApplied]
OperatorValue = Union[OpDef, PrimitiveOperator]
Value = Union[int, FunctionValue, OperatorValue]


def _sum(call, n):
    return sum(call(i) for i in range(n + 1))


SUM = PrimitiveOperator("SUM", _sum)
BUILTIN_OPERATORS = {"SUM": SUM}


def is_function_value(v) -> bool:
    return isinstance(v, (FuncTable, DefinedFunction, OpApplied))


def is_operator_value(v) -> bool:
    return isinstance(v, (OpDef, PrimitiveOperator))


def value_sort(v) -> Sort:
    if is_operator_value(v):
        return OPER
    if is_function_value(v):
        return FUNC
    return BINARY


def env_sorts(env: Mapping) -> dict:
    """Sorts of the bound names, for parsing text against an environment."""
    return {name: value_sort(v) for name, v in env.items()}
