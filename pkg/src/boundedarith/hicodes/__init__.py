"""Level-k codes, extension/contraction, and the constructions built on them."""

from .highnum import decode_highnum, encode_highnum, is_highnum_code, normalize_code
from .search import (
    code_value, finite_example_search, formula_predicate, op_recursive_comprehension, uniformize,
)
from .universe import CodeUniverse, LevelCode, contract, extend, universe


def enumerate_codes(u: CodeUniverse, level: int) -> list[LevelCode]:
    return u.codes(level)


def is_valid(c: LevelCode, u: CodeUniverse) -> bool:
    return u.is_valid(c)


def equivalent(a: LevelCode, b: LevelCode, u: CodeUniverse) -> bool:
    return u.equivalent(a, b)
