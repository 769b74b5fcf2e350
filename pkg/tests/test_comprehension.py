import itertools
import random
from functools import lru_cache

import pytest

from boundedarith.comprehension import (
    compose_levels, counting_Q, exptime_Q, formula_phi, parse_bits, pspace_Q, run_scheme, window,
)
from boundedarith.errors import BudgetExceeded, OutOfGraph

WMAX = 64


def random_set_phi(seed):
    """A random predicate of (w, S): an independent coin per (w, S), fixed by the seed."""
    def phi(P, w, S):
        return random.Random(f"{seed}/{w}/{sorted(S)}").random() < 0.5
    return phi


def random_word_phi(rng):
    table = [rng.random() < 0.5 for _ in range(WMAX + 1)]
    return lambda P, v: table[v]


# independent top-down recursions
def oracle_counting(phi, wmax, P=()):
    return [sum(1 for v in range(w) if phi(P, v)) for w in range(wmax + 1)]


def oracle_pspace(phi, wmax, P=()):
    @lru_cache(maxsize=None)
    def Q(w):
        lo = w - w.bit_length()
        return bool(phi(P, w, frozenset(v for v in range(w) if lo < v and Q(v))))
    return [Q(w) for w in range(wmax + 1)]


def oracle_exptime(phi, wmax, P=()):
    @lru_cache(maxsize=None)
    def Q(w):
        return bool(phi(P, w, frozenset(v for v in range(w) if Q(v))))
    return [Q(w) for w in range(wmax + 1)]


def test_counting_examples():
    odd = lambda P, v: v % 2 == 1  # noqa: E731
    assert counting_Q(odd, 6)[6] == 3
    assert counting_Q(lambda P, v: False, 10) == [0] * 11


def test_exptime_parity_example():
    even = lambda P, w, S: len(S) % 2 == 0  # noqa: E731
    assert exptime_Q(even, 8) == [True] + [False] * 8
    assert exptime_Q(lambda P, w, S: False, 8) == [False] * 9


def test_pspace_examples():
    empty = lambda P, w, S: not S  # noqa: E731
    assert pspace_Q(empty, 8) == [True, True, False, True, False, False, True, False, False]
    assert pspace_Q(lambda P, w, S: True, 20) == [True] * 21


def test_window_instrumentation():
    seen = []
    pspace_Q(random_set_phi(3), WMAX, trace=lambda w, S: seen.append((w, S)))
    assert [w for w, _ in seen] == list(range(WMAX + 1))
    for w, S in seen:
        assert all(w - w.bit_length() < v < w for v in S)
    assert window(0) == range(0) and list(window(8)) == [5, 6, 7]


@pytest.mark.parametrize("seed", range(100))
def test_random_phi_against_recursions(seed):
    rng = random.Random(seed)
    P = tuple(rng.randint(0, 1) for _ in range(WMAX + 1))
    word = random_word_phi(rng)
    assert counting_Q(word, WMAX, P) == oracle_counting(word, WMAX, P)
    phi = random_set_phi(seed)
    assert pspace_Q(phi, WMAX, P) == oracle_pspace(phi, WMAX, P)
    assert exptime_Q(phi, WMAX, P) == oracle_exptime(phi, WMAX, P)


@pytest.mark.parametrize("seed", range(10))
def test_counting_increments(seed):
    word = random_word_phi(random.Random(seed))
    Q = counting_Q(word, WMAX)
    for w in range(WMAX):
        assert Q[w + 1] - Q[w] == int(word((), w))


def test_pspace_and_exptime_agree_when_window_is_history():
    # Below w = 3 the strict window misses at most v = 0, so the schemes agree
    # exactly when Q(0) is false or the missed words carry no members.
    sets = [frozenset(s) for r in range(3) for s in itertools.combinations(range(2), r)]
    keys = [(w, S) for w in range(3) for S in sets if all(v < w for v in S)]
    for bits in range(1 << len(keys)):
        table = {k: bool(bits >> i & 1) for i, k in enumerate(keys)}
        phi = lambda P, w, S: table[(w, S)]  # noqa: E731
        ps, ex = pspace_Q(phi, 2), exptime_Q(phi, 2)
        assert ps[0] == ex[0]
        for w in (1, 2):
            hidden = [v for v in range(w) if v <= w - w.bit_length() and ex[v]]
            if ps[:w] == ex[:w] and not hidden:
                assert ps[w] == ex[w]


def test_formula_phi_matches_callables():
    odd = formula_phi("E k < v + 1. v = 2*k + 1", "counting", 16)
    assert counting_Q(odd, 16) == oracle_counting(lambda P, v: v % 2 == 1, 16)
    parity = formula_phi("E k < w + 1. SUM(S)(w) = 2*k", "exptime", 16)
    assert exptime_Q(parity, 16) == [True] + [False] * 16
    empty = formula_phi("A v < w + 1. S(v) = 0", "pspace", 16)
    assert pspace_Q(empty, 16) == oracle_pspace(lambda P, w, S: not S, 16)
    oracle = formula_phi("P(v) = 1", "counting", 5)
    assert counting_Q(oracle, 5, (1, 0, 1, 1, 0, 1)) == [0, 1, 1, 2, 3, 3]
    with pytest.raises(OutOfGraph):
        counting_Q(oracle, 5, (1, 0))


def test_budget_and_errors():
    with pytest.raises(BudgetExceeded):
        counting_Q(lambda P, v: True, 100, budget=50)
    with pytest.raises(ValueError):
        run_scheme("nexptime", None, 3)
    assert parse_bits("01 10\n1") == (0, 1, 1, 0, 1)
    with pytest.raises(ValueError):
        parse_bits("012")


def test_levels_compose():
    first = counting_Q(lambda P, v: v % 3 == 0, 20)
    second = counting_Q(compose_levels(lambda P, v: P[v] == 1, first), 20)
    assert second == oracle_counting(lambda P, v: first[v] % 2 == 1, 20)
