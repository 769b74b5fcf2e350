"""Level-k codes over a base size N with threshold t.

A level 0 code is a number below N; a level k+1 code is a total table from
level-k codes to level-k codes.  Payloads are nested tuples: a level-1
payload lists the image of 0..N-1, a level-2 payload lists the image of
every level-1 code in enumeration order, and so on.

Codes at level k are enumerated lexicographically: the index of a level
k+1 payload is its sequence of image indices read as a base-count(k)
numeral with the first position most significant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import BudgetExceeded, InvalidCode

DEFAULT_ENUMERATION_BUDGET = 1 << 17


@dataclass(frozen=True)
class LevelCode:
    level: int
    payload: object  # int at level 0, nested tuple above

    def __str__(self):
        return f"L{self.level}:{self.payload}"


@dataclass(eq=False)
class CodeUniverse:
    N: int
    t: int
    max_level: int = 3
    budget: int = DEFAULT_ENUMERATION_BUDGET
    _valid: dict = field(default_factory=dict, repr=False)
    _equiv: dict = field(default_factory=dict, repr=False)
    _enum: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not 1 <= self.t <= self.N:
            raise ValueError(f"need 1 <= t <= N, got N={self.N}, t={self.t}")
        if not 0 <= self.max_level <= 3:
            raise ValueError("max_level must be between 0 and 3")

    def __repr__(self):
        return f"CodeUniverse(N={self.N}, t={self.t}, max_level={self.max_level})"

    # ------------------------------------------------------ enumeration
    def count(self, level: int) -> int:
        c = self.N
        for _ in range(level):
            c = c**c
        return c

    def _check_level(self, level: int):
        if not 0 <= level <= self.max_level:
            raise ValueError(f"level {level} outside 0..{self.max_level}")

    def codes(self, level: int) -> list[LevelCode]:
        """Every level-``level`` code in enumeration order."""
        self._check_level(level)
        if level in self._enum:
            return self._enum[level]
        n = self.count(level)
        if n > self.budget:
            raise BudgetExceeded(f"{n} level-{level} codes exceed the enumeration budget {self.budget}")
        out = [self.code_at(level, i) for i in range(n)]
        self._enum[level] = out
        return out

    def code_at(self, level: int, index: int) -> LevelCode:
        self._check_level(level)
        if not 0 <= index < self.count(level):
            raise InvalidCode(f"index {index} out of range at level {level}")
        return LevelCode(level, self._payload_at(level, index))

    def _payload_at(self, level: int, index: int):
        if level == 0:
            return index
        base = self.count(level - 1)
        digits = []
        for _ in range(base):
            index, d = divmod(index, base)
            digits.append(d)
        return tuple(self._payload_at(level - 1, d) for d in reversed(digits))

    def index(self, c: LevelCode) -> int:
        return self._index(c.level, c.payload)

    def _index(self, level: int, payload) -> int:
        if level == 0:
            if not 0 <= payload < self.N:
                raise InvalidCode(f"level-0 code {payload} outside 0..{self.N - 1}")
            return payload
        base = self.count(level - 1)
        if len(payload) != base:
            raise InvalidCode(f"level-{level} payload has {len(payload)} entries, expected {base}")
        value = 0
        for p in payload:
            value = value * base + self._index(level - 1, p)
        return value

    def apply(self, F: LevelCode, x: LevelCode) -> LevelCode:
        if F.level != x.level + 1:
            raise InvalidCode(f"cannot apply a level-{F.level} code to a level-{x.level} code")
        return LevelCode(x.level, F.payload[self.index(x)])

    def constant(self, level: int, value: LevelCode) -> LevelCode:
        """The level-``level`` code mapping everything to ``value``."""
        return LevelCode(level, (value.payload,) * self.count(level - 1))

    # ------------------------------------------------- validity / equiv
    def valid_codes(self, level: int) -> list[LevelCode]:
        return [c for c in self.codes(level) if self.is_valid(c)]

    def is_valid(self, c: LevelCode) -> bool:
        key = (c.level, c.payload)
        hit = self._valid.get(key)
        if hit is None:
            hit = self._valid[key] = self._compute_valid(c)
        return hit

    def _compute_valid(self, c: LevelCode) -> bool:
        if c.level == 0:
            return 0 <= c.payload < self.t
        below = self.valid_codes(c.level - 1)
        images = [self.apply(c, x) for x in below]
        if not all(self.is_valid(fx) for fx in images):
            return False
        for i, x in enumerate(below):
            for j in range(i + 1, len(below)):
                if self.equivalent(x, below[j]) and not self.equivalent(images[i], images[j]):
                    return False
        return True

    def equivalent(self, a: LevelCode, b: LevelCode) -> bool:
        if a.level != b.level:
            raise InvalidCode("codes of different levels are never compared")
        if not (self.is_valid(a) and self.is_valid(b)):
            raise InvalidCode("equivalence is defined on valid codes only")
        if a.payload == b.payload:
            return True
        key = (a.level, a.payload, b.payload)
        hit = self._equiv.get(key)
        if hit is None:
            if a.level == 0:
                hit = False
            else:
                hit = all(self.equivalent(self.apply(a, x), self.apply(b, x)) for x in self.valid_codes(a.level - 1))
            self._equiv[key] = self._equiv[(a.level, b.payload, a.payload)] = hit
        return hit

    def classes(self, level: int) -> list[list[LevelCode]]:
        """Equivalence classes of valid codes, in order of their least member."""
        out: list[list[LevelCode]] = []
        for c in self.valid_codes(level):
            for cls in out:
                if self.equivalent(cls[0], c):
                    cls.append(c)
                    break
            else:
                out.append([c])
        return out

    def random_code(self, level: int, rng: random.Random) -> LevelCode:
        if level == 0:
            return LevelCode(0, rng.randrange(self.N))
        below = self.count(level - 1)
        return LevelCode(level, tuple(self.random_code(level - 1, rng).payload for _ in range(below)))

    def random_valid_code(self, level: int, rng: random.Random) -> LevelCode:
        """A uniformly chosen class representative image for every valid input.

        Valid inputs in one class get equivalent images; invalid inputs get
        arbitrary images.  Always valid by construction.
        """
        if level == 0:
            return LevelCode(0, rng.randrange(self.t))
        below = self.codes(level - 1)
        image: dict = {}
        for cls in self.classes(level - 1):
            target = self.random_valid_code(level - 1, rng)
            for x in cls:
                image[x.payload] = target.payload
        return LevelCode(level, tuple(
            image.get(x.payload) if x.payload in image else self.random_code(level - 1, rng).payload
            for x in below
        ))


@lru_cache(maxsize=None)
def universe(N: int, t: int, max_level: int = 3) -> CodeUniverse:
    """Shared universe instances, so memo tables are reused."""
    return CodeUniverse(N, t, max_level)


def _convert(c: LevelCode, src: CodeUniverse, dst: CodeUniverse) -> LevelCode:
    if c.level == 0:
        return LevelCode(0, min(min(dst.N, src.N) - 1, c.payload))
    out = []
    for f in dst.codes(c.level - 1):
        back = _convert(f, dst, src)
        out.append(_convert(src.apply(c, back), src, dst).payload)
    return LevelCode(c.level, tuple(out))


def _check_pair(src: CodeUniverse, dst: CodeUniverse):
    if src.t != dst.t:
        raise ValueError("extension and contraction keep the threshold fixed")


def extend(c: LevelCode, src: CodeUniverse, dst: CodeUniverse) -> LevelCode:
    """E: n -> n and E(F)(f) = E(F(C(f)))."""
    _check_pair(src, dst)
    if dst.N < src.N:
        raise ValueError("extend needs a universe at least as large")
    return _convert(c, src, dst)


def contract(c: LevelCode, src: CodeUniverse, dst: CodeUniverse) -> LevelCode:
    """C: n -> min(N' - 1, n) and C(F)(f) = C(F(E(f)))."""
    _check_pair(src, dst)
    if dst.N > src.N:
        raise ValueError("contract needs a universe at most as large")
    return _convert(c, src, dst)
