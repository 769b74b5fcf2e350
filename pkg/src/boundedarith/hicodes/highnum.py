"""Numbers coded by function tables.

A table f codes the number sum_{i=1}^{f(0)} 2^(i-1) f(i), where f is
boolean on 1..L-1 and f(0) is the position of the top set bit (0 for zero).
"""

from __future__ import annotations

from ..errors import InvalidCode
from ..evaluator import FuncTable
from ..towerutil import bitlen


def encode_highnum(n: int, length: int | None = None) -> FuncTable:
    if n < 0:
        raise ValueError("only natural numbers are coded")
    top = bitlen(n)
    length = top + 1 if length is None else length
    if length < top + 1:
        raise InvalidCode(f"a table of length {length} cannot hold {top} bits")
    return FuncTable((top,) + tuple((n >> (i - 1)) & 1 if i <= top else 0 for i in range(1, length)))


def decode_highnum(f: FuncTable) -> int:
    top = f.lookup(0)
    return sum(f.lookup(i) << (i - 1) for i in range(1, top + 1))


def is_highnum_code(f: FuncTable) -> bool:
    e = f.entries
    if not e:
        return False
    if any(x not in (0, 1) for x in e[1:]):
        return False
    top = max((i for i in range(1, len(e)) if e[i] == 1), default=0)
    return e[0] == top


def normalize_code(f: FuncTable) -> FuncTable:
    """Map any table to a code, leaving codes unchanged.

    f(0) is read as a declared length (clamped to the table), entries up to
    it are read as bits, everything beyond is cleared, and f(0) is reset to
    the top set bit.
    """
    e = f.entries
    if not e:
        raise InvalidCode("an empty table codes nothing")
    declared = min(max(e[0], 0), len(e) - 1)
    bits = [1 if (1 <= i <= declared and e[i]) else 0 for i in range(1, len(e))]
    top = max((i + 1 for i, b in enumerate(bits) if b), default=0)
    return FuncTable((top, *bits))
