"""Ordinary and approximate real codes.

A code (n, f) stands for n + sum_{i>=1} d_i / 2^i with digits d_i in {0, 1, 2}.
An ordinary code keeps d_i at raw index 2^i of f; an approximate code keeps
it at raw index 2^(2^i), so a unary precision t reaches about log2(t)
digits and the code is good to 1/t rather than 2^-t.

Digits are produced on demand and cached; a code must not be shared across
threads while its digits are being extended.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..errors import ApproximateOverflow

ORDINARY = "ordinary"
APPROXIMATE = "approximate"
DEFAULT_APPROX_RANGE = 1 << 16

Approximator = Callable[[int], Fraction]


@dataclass(eq=False)
class RealCode:
    flavor: str
    n: int
    producer: Callable[[int], int]
    _digits: list = field(default_factory=list, repr=False)
    prefetch: Callable[[int], None] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.flavor not in (ORDINARY, APPROXIMATE):
            raise ValueError(f"unknown flavor {self.flavor!r}")

    def digit(self, i: int) -> int:
        """d_i for i >= 1."""
        if i < 1:
            raise ValueError("digits are indexed from 1")
        while len(self._digits) < i:
            d = self.producer(len(self._digits) + 1)
            if d not in (0, 1, 2):
                raise ValueError(f"digit {d} outside {{0, 1, 2}}")
            self._digits.append(d)
        return self._digits[i - 1]

    def raw(self, index: int) -> int:
        """The coding function f itself: d_i at 2^i (ordinary) or 2^(2^i) (approximate), 0 elsewhere."""
        if index < 2 or index & (index - 1):
            return 0
        i = index.bit_length() - 1
        if self.flavor == APPROXIMATE:
            if i & (i - 1):
                return 0
            i = i.bit_length() - 1
        return self.digit(i)

    def approx(self, k: int) -> Fraction:
        """A rational within 2^-k of the value."""
        if self.prefetch is not None:
            self.prefetch(k + 2)
        total = Fraction(self.n)
        for i in range(1, k + 2):
            total += Fraction(self.digit(i), 1 << i)
        return total

    def prefix(self, count: int) -> tuple:
        return tuple(self.digit(i) for i in range(1, count + 1))


def _check_range(flavor: str, n: int, bound: int):
    if flavor == APPROXIMATE and abs(n) > bound:
        raise ApproximateOverflow(f"integer part {n} outside the approximate range +-{bound}")


def from_digits(n: int, digits, flavor: str = ORDINARY, bound: int = DEFAULT_APPROX_RANGE) -> RealCode:
    """A code with the given leading digits, followed by zeros."""
    digits = tuple(digits)
    _check_range(flavor, n, bound)
    return RealCode(flavor, n, lambda i: digits[i - 1] if i <= len(digits) else 0)


def real_from_rational(q, flavor: str = ORDINARY, bound: int = DEFAULT_APPROX_RANGE) -> RealCode:
    """Exact code of a rational: integer part floor(q) and binary digits by long division."""
    q = Fraction(q)
    n = math.floor(q)
    _check_range(flavor, n, bound)
    frac = q - n
    state = {"i": 0, "r": frac}

    def producer(i: int) -> int:
        while state["i"] < i:
            r = state["r"] * 2
            d = 1 if r >= 1 else 0
            state["r"] = r - d
            state["i"] += 1
            state["last"] = d
        return state["last"]

    return RealCode(flavor, n, producer)


def from_approximator(q: Approximator, flavor: str = ORDINARY, bound: int = DEFAULT_APPROX_RANGE) -> RealCode:
    """Code of the real x given q(k) within 2^-k of x for every k.

    The integer part is floor(q(2) - 1/2), which leaves x - n in [1/4, 7/4].
    Digits keep the scaled remainder r_k = 2^k (x - n - sum_{i<=k} d_i/2^i)
    inside [0, 2]; each digit reads r_k to within 1/4 and picks 0 below 3/4,
    2 above 5/4 and 1 in between.
    """
    cache: dict = {}

    def Q(k: int) -> Fraction:
        # any approximation at least as precise will do
        best = min((p for p in cache if p >= k), default=None)
        if best is None:
            cache[k] = Fraction(q(k))
            best = k
        return cache[best]

    n = math.floor(Q(2) - Fraction(1, 2))
    _check_range(flavor, n, bound)
    state = {"k": 0, "partial": Fraction(n)}
    out: list = []

    def producer(i: int) -> int:
        while state["k"] < i:
            k = state["k"]
            r = (Q(k + 2) - state["partial"]) * (1 << k)
            d = 0 if r < Fraction(3, 4) else (2 if r > Fraction(5, 4) else 1)
            state["partial"] += Fraction(d, 1 << (k + 1))
            state["k"] += 1
            out.append(d)
        return out[i - 1]

    code = RealCode(flavor, n, producer)
    code.prefetch = Q
    return code


def _result_flavor(*xs: RealCode) -> str:
    return APPROXIMATE if any(x.flavor == APPROXIMATE for x in xs) else ORDINARY


def magnitude_bound(x: RealCode) -> int:
    """An integer B with |value| <= B."""
    return abs(x.n) + 2


def real_neg(x: RealCode, bound: int = DEFAULT_APPROX_RANGE) -> RealCode:
    return from_approximator(lambda k: -x.approx(k), x.flavor, bound)


def real_add(x: RealCode, y: RealCode, bound: int = DEFAULT_APPROX_RANGE) -> RealCode:
    return from_approximator(lambda k: x.approx(k + 1) + y.approx(k + 1), _result_flavor(x, y), bound)


def real_sub(x: RealCode, y: RealCode, bound: int = DEFAULT_APPROX_RANGE) -> RealCode:
    return from_approximator(lambda k: x.approx(k + 1) - y.approx(k + 1), _result_flavor(x, y), bound)


def real_mul(x: RealCode, y: RealCode, bound: int = DEFAULT_APPROX_RANGE) -> RealCode:
    extra = (magnitude_bound(x) + magnitude_bound(y) + 1).bit_length() + 1

    def q(k: int) -> Fraction:
        p = k + extra
        return x.approx(p) * y.approx(p)

    return from_approximator(q, _result_flavor(x, y), bound)


def precision_for(x: RealCode, t: int) -> int:
    """Digits-level precision k such that 2^-k meets the flavor's error at t."""
    if t < 1:
        raise ValueError("precision must be positive")
    if x.flavor == ORDINARY:
        return t
    return max(0, math.ceil(math.log2(t))) if t > 1 else 0


def real_approx(x: RealCode, t: int) -> Fraction:
    """Within 2^-t for ordinary codes and within 1/t for approximate ones."""
    return x.approx(precision_for(x, t))


def tolerance(flavor: str, t: int) -> Fraction:
    return Fraction(1, 1 << t) if flavor == ORDINARY else Fraction(1, t)


LESS, GREATER, WITHIN = "Less", "Greater", "WithinTolerance"


def real_compare(x: RealCode, y: RealCode, t: int) -> str:
    """Less or Greater when certain, WithinTolerance when |x - y| < 2^-t is possible.

    A Less/Greater answer is always correct; WithinTolerance guarantees
    |x - y| < 2^-t.
    """
    tol = Fraction(1, 1 << t)
    diff = x.approx(t + 3) - y.approx(t + 3)
    if diff < -tol / 2:
        return LESS
    if diff > tol / 2:
        return GREATER
    return WITHIN


def redundant_variant(x: RealCode, search: int = 4096) -> RealCode:
    """A different code of the same value using a digit 2.

    With d_1 = 0 the integer part drops by one and d_1 becomes 2; otherwise
    the first digit pattern 1, 0 becomes 0, 2.
    """
    if x.digit(1) == 0:
        return RealCode(x.flavor, x.n - 1, lambda i: 2 if i == 1 else x.digit(i))
    for j in range(1, search):
        if x.digit(j) == 1 and x.digit(j + 1) == 0:
            return RealCode(
                x.flavor, x.n,
                lambda i, j=j: 0 if i == j else (2 if i == j + 1 else x.digit(i)),
            )
    raise ValueError(f"no 1, 0 digit pattern within the first {search} digits")


def format_real(x: RealCode, t: int, places: int | None = None) -> str:
    """Decimal rendering with an explicit error bound."""
    k = precision_for(x, t)
    v = x.approx(k)
    places = places if places is not None else max(1, math.ceil(k * math.log10(2)) + 1)
    sign = "-" if v < 0 else ""
    scaled = round(abs(v) * 10**places)
    whole, frac = divmod(scaled, 10**places)
    err = f"2^-{k}" if x.flavor == ORDINARY else f"1/{t}"
    return f"{sign}{whole}.{frac:0{places}d} ± {err}"
