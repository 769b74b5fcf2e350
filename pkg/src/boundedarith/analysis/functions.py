"""Spaces R^d, points, and continuous functions coded by dense values plus a modulus.

The dense set of R^d is the dyadic grid.  A coordinate j/2^s has index
pair(s, zigzag(j)); a point's index pairs its coordinate indices, so
index 0 is the origin.  Points may have several indices.

A function code gives a real code for every dense index and a modulus
g(r, dinv) -> einv: for |y| < r and |y - z| < 1/einv, |f(y) - f(z)| < 1/dinv.
Radii and reciprocal tolerances are positive integers.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Sequence

from ..errors import ModulusExhausted
from ..evaluator.primitives import builtin_sum
from ..evaluator.values import FuncTable
from ..towerutil import pair, pair_all, unpair
from .reals import RealCode, from_approximator, real_add, real_from_rational

Point = tuple  # of Fractions
Modulus = Callable[[int, int], int]


def zigzag(j: int) -> int:
    return 2 * j if j >= 0 else -2 * j - 1


def unzigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def _dyadic_parts(q: Fraction) -> tuple[int, int]:
    den = q.denominator
    if den & (den - 1):
        raise ValueError(f"{q} is not a dyadic rational")
    return den.bit_length() - 1, q.numerator


@dataclass(frozen=True)
class SpaceCode:
    """R^dim with the max-norm metric and the dyadic dense set."""

    dim: int = 1

    def point(self, index: int) -> Point:
        coords = []
        rest = index
        for _ in range(self.dim - 1):
            c, rest = unpair(rest)
            coords.append(c)
        coords.append(rest)
        out = []
        for c in coords:
            s, z = unpair(c)
            out.append(Fraction(unzigzag(z), 1 << s))
        return tuple(out)

    def index_of(self, p: Sequence) -> int:
        if len(p) != self.dim:
            raise ValueError(f"expected a point with {self.dim} coordinates")
        coords = []
        for q in p:
            s, j = _dyadic_parts(Fraction(q))
            coords.append(pair(s, zigzag(j)))
        return pair_all(coords)

    @staticmethod
    def norm(p: Sequence) -> Fraction:
        return max((abs(Fraction(c)) for c in p), default=Fraction(0))

    def d(self, i: int, j: int) -> Fraction:
        a, b = self.point(i), self.point(j)
        return self.norm([x - y for x, y in zip(a, b)])

    def h(self, r: int, einv: int) -> int:
        """m such that every point within r of the origin is within 1/einv of one of the first m points."""
        s = max(einv, 1).bit_length()
        Z = 2 * r * (1 << s)
        c = pair(s, Z)
        return pair_all([c] * self.dim) + 1


@dataclass(eq=False)
class PointCode:
    """x_0, x_1, ... dense indices with d(x_n, x_{n+1}) < 2^-n."""

    space: SpaceCode
    seq: Callable[[int], int]

    def at(self, n: int) -> Point:
        return self.space.point(self.seq(n))

    def check_cauchy(self, length: int) -> bool:
        return all(self.space.d(self.seq(n), self.seq(n + 1)) < Fraction(1, 1 << n) for n in range(length))


def point_from_rational(space: SpaceCode, coords: Sequence) -> PointCode:
    coords = [Fraction(c) for c in coords]

    def seq(n: int) -> int:
        scale = 1 << (n + 1)
        return space.index_of([Fraction(round(c * scale), scale) for c in coords])

    return PointCode(space, seq)


@dataclass(eq=False)
class ContFuncCode:
    space: SpaceCode
    value: Callable[[int], RealCode]
    modulus: Modulus
    value_range: tuple | None = None
    exact: Callable[[Point], Fraction] | None = None
    validated: bool = False
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def value_at(self, p: Sequence) -> RealCode:
        idx = self.space.index_of(p)
        if idx not in self._cache:
            self._cache[idx] = self.value(idx)
        return self._cache[idx]

    def approx_at(self, p: Sequence, k: int) -> Fraction:
        """f(p) within 2^-k at a dense point p."""
        if self.exact is not None:
            return self.exact(tuple(Fraction(c) for c in p))
        return self.value_at(p).approx(k)

    def eps_inv(self, r: int, dinv: int) -> int:
        e = self.modulus(r, dinv)
        if not isinstance(e, int) or e <= 0:
            raise ModulusExhausted(f"modulus gives {e!r} at r={r}, 1/delta={dinv}")
        return e


# ------------------------------------------------------------ constructors
def lipschitz_modulus(L: Fraction | int | Callable[[int], Fraction]) -> Modulus:
    """Modulus for a function with slope bound L (or L(r) on the ball of radius r + 1)."""
    slope = L if callable(L) else (lambda r: L)

    def g(r: int, dinv: int) -> int:
        return math.floor(Fraction(slope(r + 1)) * dinv) + 1

    return g


def cf_from_function(fn: Callable[[Point], Fraction], modulus: Modulus, dim: int = 1,
                     value_range: tuple | None = None, label: str = "") -> ContFuncCode:
    """Code of a function with exact rational values on dyadic points."""
    space = SpaceCode(dim)

    def exact(p: Point) -> Fraction:
        return Fraction(fn(p))

    return ContFuncCode(
        space, lambda i: real_from_rational(exact(space.point(i))), modulus,
        value_range=value_range, exact=exact, label=label,
    )


def piecewise_linear(points: Sequence[tuple]) -> Callable[[Fraction], Fraction]:
    pts = sorted((Fraction(x), Fraction(y)) for x, y in points)
    if not pts:
        raise ValueError("need at least one control point")
    xs = [p[0] for p in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("control points need distinct abscissae")

    def f(x: Fraction) -> Fraction:
        if x <= pts[0][0]:
            return pts[0][1]
        if x >= pts[-1][0]:
            return pts[-1][1]
        lo, hi = 0, len(pts) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pts[mid][0] <= x:
                lo = mid
            else:
                hi = mid
        (x0, y0), (x1, y1) = pts[lo], pts[hi]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    return f


def max_slope(points: Sequence[tuple]) -> Fraction:
    pts = sorted((Fraction(x), Fraction(y)) for x, y in points)
    return max((abs((b[1] - a[1]) / (b[0] - a[0])) for a, b in zip(pts, pts[1:])), default=Fraction(0))


def cf_piecewise_linear(points: Sequence[tuple], modulus: Modulus | None = None, label: str = "") -> ContFuncCode:
    """Piecewise-linear interpolation, constant outside the control points."""
    f = piecewise_linear(points)
    return cf_from_function(lambda p: f(p[0]), modulus or lipschitz_modulus(max_slope(points)), label=label)


def _parse_fraction(v) -> Fraction:
    return Fraction(v) if not isinstance(v, float) else Fraction(str(v))


def table_modulus(rows: Sequence[Sequence[int]]) -> Modulus:
    """Modulus from rows (r, dinv, einv): use the first row covering the request, else 0."""
    rows = sorted((int(r), int(d), int(e)) for r, d, e in rows)

    def g(r: int, dinv: int) -> int:
        for rr, dd, ee in rows:
            if rr >= r and dd >= dinv:
                return ee
        return 0

    return g


def load_function(path: str) -> ContFuncCode:
    """Read ``{"points": [[x, y], ...], "modulus": [[r, dinv, einv], ...]}``; values may be "p/q" strings."""
    with open(path) as fh:
        data = json.load(fh)
    points = [(_parse_fraction(x), _parse_fraction(y)) for x, y in data["points"]]
    modulus = table_modulus(data["modulus"]) if data.get("modulus") else None
    code = cf_piecewise_linear(points, modulus, label=data.get("label", path))
    if "range" in data:
        lo, hi = data["range"]
        code.value_range = (_parse_fraction(lo), _parse_fraction(hi))
    return code


# ---------------------------------------------------------------- repair
def _grid(lo: Fraction, hi: Fraction, s: int) -> list[Fraction]:
    """Dyadic points j/2^s in [lo, hi] such that every point of [lo, hi] is within 2^-s of one."""
    scale = 1 << s
    a, b = math.ceil(lo * scale), math.floor(hi * scale)
    pts = [Fraction(j, scale) for j in range(a, b + 1)]
    if not pts:
        pts = [Fraction(round((lo + hi) / 2 * scale * 2), scale * 2)]
    return pts


def estimate_lipschitz(F: ContFuncCode, r: int, samples_log: int = 5, k: int = 24) -> Fraction:
    """Largest difference quotient between neighbouring grid points of [-r, r]^d."""
    s = samples_log
    axis = _grid(Fraction(-r), Fraction(r), s)
    step = Fraction(1, 1 << s)
    best = Fraction(0)
    for p in itertools.product(axis, repeat=F.space.dim):
        fp = F.approx_at(p, k)
        for d in range(F.space.dim):
            q = list(p)
            q[d] += step
            if q[d] > r:
                continue
            best = max(best, abs(F.approx_at(q, k) - fp) / step)
    return best


def _clamp_real(x: RealCode, lo: Fraction, hi: Fraction) -> RealCode:
    return from_approximator(lambda k: min(max(x.approx(k), lo), hi), x.flavor)


def validate_cf(raw: ContFuncCode, spot_checks: int = 16) -> ContFuncCode:
    """Repair a code so its invariants hold, leaving valid codes' values unchanged.

    Dense values are clamped into ``value_range`` when one is declared.  A
    modulus answer that is not a positive integer, or that fails a spot
    check, is replaced by einv = ceil(2 * L * dinv) with L a slope bound
    estimated from dense values on [-r, r]^d.
    """
    if raw.validated:
        return raw
    cache: dict = {}
    lipschitz: dict = {}

    def slope(r: int) -> Fraction:
        if r not in lipschitz:
            lipschitz[r] = max(estimate_lipschitz(raw, r + 1), Fraction(1, 1 << 10))
        return lipschitz[r]

    def spot_ok(r: int, dinv: int, einv: int) -> bool:
        delta, eps = Fraction(1, dinv), Fraction(1, einv)
        for i in range(spot_checks):
            y = Fraction(-r) + Fraction(2 * r * i, spot_checks)
            z = y + eps * Fraction(1023, 1024)
            y_d = _dyadic_below(y)
            z_d = _dyadic_below(z)
            if abs(y_d) >= r or abs(z_d - y_d) >= eps:
                continue
            p, q = (y_d,) * raw.space.dim, (z_d,) * raw.space.dim
            if abs(raw.approx_at(p, 40) - raw.approx_at(q, 40)) >= delta + Fraction(1, 1 << 38):
                return False
        return True

    def g(r: int, dinv: int) -> int:
        key = (r, dinv)
        if key not in cache:
            try:
                e = raw.modulus(r, dinv)
            except Exception:
                e = None
            if not isinstance(e, int) or e <= 0 or not spot_ok(r, dinv, e):
                repaired = math.ceil(2 * slope(r) * dinv) + 1
                e = repaired if not isinstance(e, int) or e <= 0 else max(e, repaired)
            cache[key] = e
        return cache[key]

    value, exact = raw.value, raw.exact
    if raw.value_range is not None:
        lo, hi = (Fraction(v) for v in raw.value_range)
        value = lambda i: _clamp_real(raw.value(i), lo, hi)  # noqa: E731
        exact = (lambda p: min(max(raw.exact(p), lo), hi)) if raw.exact else None
    return ContFuncCode(raw.space, value, g, raw.value_range, exact, True, raw.label)


def _dyadic_below(x: Fraction, bits: int = 40) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(x * scale), scale)


# ------------------------------------------------------------ operations
def _apply_rational(F: ContFuncCode, x: PointCode, k: int) -> Fraction:
    r = math.floor(F.space.norm(x.at(0))) + 3
    einv = F.eps_inv(r, 1 << (k + 1))
    m = einv.bit_length() + 2
    return F.approx_at(x.at(m), k + 1)


def cf_apply(F: ContFuncCode, x: PointCode) -> RealCode:
    """f(x) as a real code: evaluate at a dense point the modulus puts close enough to x."""
    return from_approximator(lambda k: _apply_rational(F, x, k))


def cf_apply_rational(F: ContFuncCode, coords: Sequence, k: int) -> Fraction:
    """f at a rational point, within 2^-k."""
    return _apply_rational(F, point_from_rational(F.space, coords), k)


def _box(box) -> list[tuple[Fraction, Fraction]]:
    out = [(Fraction(lo), Fraction(hi)) for lo, hi in box]
    if any(lo > hi for lo, hi in out):
        raise ValueError("box sides need lo <= hi")
    return out


def _radius(box) -> int:
    return math.floor(max(max(abs(lo), abs(hi)) for lo, hi in box)) + 1


def sup_rational(F: ContFuncCode, box, k: int) -> Fraction:
    """Supremum of f over the box within 2^-(k+1)."""
    box = _box(box)
    einv = F.eps_inv(_radius(box), 1 << (k + 2))
    s = einv.bit_length()
    axes = [_grid(lo, hi, s) for lo, hi in box]
    best = max(F.approx_at(p, k + 2) for p in itertools.product(*axes))
    return best + Fraction(1, 1 << (k + 2))


def cf_sup(F: ContFuncCode, box) -> RealCode:
    return from_approximator(lambda k: sup_rational(F, box, k))


def integral_rational(F: ContFuncCode, box, k: int) -> Fraction:
    """Integral of f over the box within 2^-k, as a SUM over one sample per grid cell."""
    box = _box(box)
    volume = reduce(lambda a, b: a * b, (hi - lo for lo, hi in box), Fraction(1))
    if volume == 0:
        return Fraction(0)
    dinv = math.ceil(volume * (1 << (k + 2)))
    einv = F.eps_inv(_radius(box), dinv)
    axes = [_midpoints(lo, hi, einv) for lo, hi in box]
    per_sample = k + 2 + max(0, math.ceil(math.log2(volume)))
    D = math.ceil(volume * (1 << (k + 2)))
    scaled = [round(F.approx_at(p, per_sample) * D) for p in itertools.product(*axes)]
    total = builtin_sum(FuncTable(tuple(scaled)), len(scaled) - 1)
    cell_volume = volume / math.prod(len(a) for a in axes)
    return Fraction(total, D) * cell_volume


def _midpoints(lo: Fraction, hi: Fraction, einv: int) -> list[Fraction]:
    """Dyadic points near the centres of 2^s equal cells of [lo, hi], each within 1/einv of its whole cell.

    Cells have width w <= 1/einv, and a centre is moved by less than
    1/(2 einv) when rounded to a dyadic, so w/2 plus the shift stays below 1/einv.
    """
    width = hi - lo
    s = max(0, math.ceil(math.log2(width * einv))) if width * einv > 1 else 0
    cells = 1 << s
    # centre_j = (lo_n*hd*2^(s+1) + (2j+1)*(hi_n*ld - lo_n*hd)) / (ld*hd*2^(s+1))
    ln, ld, hn, hd = lo.numerator, lo.denominator, hi.numerator, hi.denominator
    base = ln * hd << (s + 1)
    step = hn * ld - ln * hd
    den = (ld * hd) << (s + 1)
    if den & (den - 1) == 0:
        return [Fraction(base + (2 * j + 1) * step, den) for j in range(cells)]
    u = (2 * einv).bit_length() + 1
    return [Fraction(((base + (2 * j + 1) * step) << u) // den, 1 << u) for j in range(cells)]


def cf_integrate(F: ContFuncCode, box) -> RealCode:
    return from_approximator(lambda k: integral_rational(F, box, k))


def cf_add(F: ContFuncCode, G: ContFuncCode) -> ContFuncCode:
    if F.space != G.space:
        raise ValueError("functions live on different spaces")

    def g(r: int, dinv: int) -> int:
        return max(F.eps_inv(r, 2 * dinv), G.eps_inv(r, 2 * dinv))

    exact = None
    if F.exact and G.exact:
        exact = lambda p: F.exact(p) + G.exact(p)  # noqa: E731
    return ContFuncCode(
        F.space, lambda i: real_add(F.value(i), G.value(i)), g, exact=exact,
        validated=F.validated and G.validated, label=f"({F.label} + {G.label})",
    )


def modulus_sound_on_samples(F: ContFuncCode, r: int, dinv: int, samples: int = 64, k: int = 40) -> bool:
    """Sampled check of the modulus contract in one dimension."""
    einv = F.eps_inv(r, dinv)
    eps, delta = Fraction(1, einv), Fraction(1, dinv)
    for i in range(samples):
        y = _dyadic_below(Fraction(-r) + Fraction(2 * r * i + 1, 2 * samples))
        for frac in (Fraction(1, 3), Fraction(2, 3), Fraction(127, 128)):
            z = _dyadic_below(y + eps * frac)
            if abs(y) >= r or abs(z - y) >= eps:
                continue
            fy = F.approx_at((y,) * F.space.dim, k)
            fz = F.approx_at((z,) * F.space.dim, k)
            if abs(fy - fz) >= delta + Fraction(2, 1 << k):
                return False
    return True
