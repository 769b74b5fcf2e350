"""Constructive intermediate value theorem and the bits-to-zero gadget."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from ..errors import CertificationError
from .functions import ContFuncCode, cf_apply_rational, cf_piecewise_linear

MAX_SIGN_PRECISION = 60
RADIUS = 2


def certified_sign(F: ContFuncCode, x: Fraction, kmax: int = MAX_SIGN_PRECISION) -> int:
    """+1 or -1 once an approximation separates f(x) from 0; 0 if none does up to 2^-kmax."""
    k = 4
    while True:
        v = cf_apply_rational(F, (x,), k)
        eps = Fraction(1, 1 << k)
        if v > eps:
            return 1
        if v < -eps:
            return -1
        if k >= kmax:
            return 0
        k = min(2 * k, kmax)


def _small_at(F: ContFuncCode, x: Fraction, bound: Fraction) -> bool:
    """Certify |f(x)| < bound."""
    k = max(4, (4 * bound.denominator // max(bound.numerator, 1)).bit_length() + 2)
    return abs(cf_apply_rational(F, (x,), k)) + Fraction(1, 1 << k) < bound


def _bisection(F: ContFuncCode) -> Iterator[tuple[Fraction, Fraction]]:
    """Nested intervals around a zero of f on [0, 1], halving in width at each step.

    While the sign at the midpoint can be certified this is plain
    bisection.  Once it cannot, f is within 2^-MAX_SIGN_PRECISION of 0 there,
    and the intervals stay centred on that point.
    """
    a, b = Fraction(0), Fraction(1)
    pinned = None
    while True:
        yield a, b
        m = (a + b) / 2
        if pinned is None:
            s = certified_sign(F, m)
            if s > 0:
                b = m
            elif s < 0:
                a = m
            else:
                pinned = m
        if pinned is not None:
            half = (b - a) / 4
            a, b = pinned - half, pinned + half


def _accepts(F: ContFuncCode, interval, n: int) -> bool:
    """|f| < 1/n on the open interval: the centre is within 1/(2n) and the modulus covers the rest."""
    a, b = interval
    einv = F.eps_inv(RADIUS, 2 * n)
    return (b - a) / 2 < Fraction(1, einv) and _small_at(F, (a + b) / 2, Fraction(1, 2 * n))


def _check_premise(F: ContFuncCode):
    if certified_sign(F, Fraction(0)) >= 0 or certified_sign(F, Fraction(1)) <= 0:
        raise CertificationError("cannot certify f(0) < 0 < f(1)")


def ivt_sequence(F: ContFuncCode, n: int, max_steps: int = 4096) -> list[tuple[Fraction, Fraction]]:
    """(a_j, b_j) for j = 1..n with |f| < 1/j on (a_j, b_j) and a_j <= a_k < b_k <= b_j for j < k."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_premise(F)
    chain = _bisection(F)
    current = next(chain)
    out = []
    steps = 0
    for j in range(1, n + 1):
        while not _accepts(F, current, j):
            current = next(chain)
            steps += 1
            if steps > max_steps:
                raise CertificationError(f"no certified interval for n={j} within {max_steps} bisections")
        out.append(current)
    return out


def ivt_localize(F: ContFuncCode, n: int) -> tuple[Fraction, Fraction]:
    return ivt_sequence(F, n)[-1]


# ------------------------------------------------------------------ gadget
def gadget_intervals(bits: Sequence[int]) -> list[tuple[Fraction, Fraction]]:
    """J_0 = [0, 1]; J_{i+1} is the first third of J_i for bit 0 and the last third for bit 1."""
    a, b = Fraction(0), Fraction(1)
    out = [(a, b)]
    for bit in bits:
        w = b - a
        if bit == 0:
            b = a + w / 3
        elif bit == 1:
            a = b - w / 3
        else:
            raise ValueError(f"bit {bit!r} is not 0 or 1")
        out.append((a, b))
    return out


def ivt_gadget(bits: Sequence[int], steps: int = 1) -> ContFuncCode:
    """Piecewise-linear f with one zero, at the centre of J_len(bits).

    f is -h_i at the left end and +h_i at the right end of J_i, where
    h_i = 1/(steps * 3^i), and 0 at the centre of the last interval.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    bits = list(bits)
    intervals = gadget_intervals(bits)
    points = {}
    for i, (a, b) in enumerate(intervals):
        h = Fraction(1, steps * 3**i)
        points.setdefault(a, -h)
        points.setdefault(b, h)
    a, b = intervals[-1]
    points[(a + b) / 2] = Fraction(0)
    label = "gadget[" + "".join(map(str, bits)) + "]"
    return cf_piecewise_linear(sorted(points.items()), label=label)


def decode_zero(F: ContFuncCode, k: int) -> list[int]:
    """Read k bits of the zero's ternary address from signs at interval centres."""
    a, b = Fraction(0), Fraction(1)
    bits = []
    for i in range(k):
        m = (a + b) / 2
        s = certified_sign(F, m)
        if s == 0:
            raise CertificationError(f"k={k} exceeds the encoded depth {i}")
        w = b - a
        if s > 0:
            bits.append(0)
            b = a + w / 3
        else:
            bits.append(1)
            a = b - w / 3
    return bits
