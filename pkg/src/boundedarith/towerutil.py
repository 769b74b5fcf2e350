"""Exact tower arithmetic ``a_b^c``, iterated logarithm, bit length and pairing."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CeilingExceeded

DEFAULT_MAX_BITS = 1 << 20


def bitlen(x: int) -> int:
    """Binary length; ``bitlen(0) == 0``."""
    return int(x).bit_length()


@dataclass(frozen=True)
class TowerExpr:
    base: int
    height: int
    top: int

    def __post_init__(self):
        if min(self.base, self.height, self.top) < 0:
            raise ValueError("tower components must be non-negative")

    def eval(self, max_bits: int = DEFAULT_MAX_BITS) -> int:
        return tower_eval(self.base, self.height, self.top, max_bits)


def _power_fits(a: int, x: int, max_bits: int) -> bool:
    if a <= 1 or x <= 1:
        return True
    if x > max_bits:
        return False
    return x * math.log2(a) <= max_bits


def tower_eval(base: int, height: int, top: int, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """Right-nested exponentiation: ``base ** (base ** (... ** top))`` with ``height`` exponentials.

    Raises :class:`CeilingExceeded` carrying the height at which the result
    would first need more than ``max_bits`` bits.
    """
    value = top
    if value.bit_length() > max_bits:
        raise CeilingExceeded(f"top needs more than {max_bits} bits", height=0)
    for h in range(1, height + 1):
        if not _power_fits(base, value, max_bits):
            raise CeilingExceeded(
                f"{base}_{height}^{top} exceeds {max_bits} bits at height {h}", height=h
            )
        value = base**value
    return value


def log_star(n: int) -> int:
    """Least k such that the k-fold binary logarithm of ``n`` is at most 1."""
    if n < 1:
        raise ValueError("log* is defined for n >= 1")
    k = 0
    x: float | int = n
    while x > 1:
        # exact for integer powers of two, float afterwards
        if isinstance(x, int) and x & (x - 1) == 0:
            x = x.bit_length() - 1
        else:
            x = math.log2(x)
        k += 1
    return k


def pair(a: int, b: int) -> int:
    """Cantor pairing."""
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def pair_all(values) -> int:
    """Right-folded Cantor pairing of one or more numbers."""
    values = list(values)
    if not values:
        raise ValueError("nothing to pair")
    acc = values[-1]
    for v in reversed(values[:-1]):
        acc = pair(v, acc)
    return acc
