"""Exception hierarchy shared by every module of the workbench."""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for all errors raised by :mod:`boundedarith`."""


class SyntaxErrorAt(WorkbenchError):
    """Malformed source text, with a 1-based line/column position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class SortError(SyntaxErrorAt):
    """A term is used at the wrong sort (e.g. a number applied as a function)."""


class EvalError(WorkbenchError):
    """Base for evaluation failures."""


class OutOfGraph(EvalError):
    """A function table was probed at or beyond its length."""

    def __init__(self, index: int, length: int):
        super().__init__(f"lookup at {index} outside graph of length {length}")
        self.index = index
        self.length = length


class CeilingExceeded(EvalError):
    """A value reached the numeric ceiling of the model (or a tower bit limit)."""

    def __init__(self, message: str, height: int | None = None):
        super().__init__(message)
        self.height = height


class BudgetExceeded(EvalError):
    """Definition length, recursion depth, or enumeration size over budget."""


class UnboundVar(EvalError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class NotBounded(EvalError):
    """The evaluator was handed an unbounded quantifier or extensional equality."""


class PremiseFails(WorkbenchError):
    """The premise of a comprehension-style construction does not hold."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotATree(WorkbenchError):
    def __init__(self, node: int):
        super().__init__(f"node {node} is present but its parent {(node - 1) // 2} is not")
        self.node = node


class NoPathAtDepth(WorkbenchError):
    pass


class InvalidCode(WorkbenchError):
    pass


class ModulusExhausted(WorkbenchError):
    """A modulus of continuity could not certify the requested precision."""


class CertificationError(WorkbenchError):
    """A sign or bound could not be certified at the available precision."""


class ApproximateOverflow(WorkbenchError):
    """An approximate real left its integer-part range."""
