import itertools
import random

import pytest
from hypothesis import given, strategies as st

from boundedarith.errors import BudgetExceeded, InvalidCode, PremiseFails
from boundedarith.evaluator import FuncTable
from boundedarith.hicodes import (
    CodeUniverse, LevelCode, contract, decode_highnum, encode_highnum, enumerate_codes,
    equivalent, extend, finite_example_search, formula_predicate, is_highnum_code, is_valid,
    normalize_code, op_recursive_comprehension, uniformize, universe,
)

import quotient_oracle


def test_enumeration_counts():
    u = CodeUniverse(2, 1)
    assert [c.payload for c in enumerate_codes(u, 0)] == [0, 1]
    assert len(enumerate_codes(u, 1)) == 4
    assert len(enumerate_codes(u, 2)) == 256
    with pytest.raises(BudgetExceeded):
        CodeUniverse(3, 1).codes(2)


def test_index_roundtrip():
    u = CodeUniverse(2, 2)
    for level in range(3):
        for i, c in enumerate(u.codes(level)):
            assert u.index(c) == i


def test_validity_examples():
    u = CodeUniverse(2, 1)
    assert is_valid(LevelCode(1, (0, 1)), u)
    assert not is_valid(LevelCode(1, (1, 0)), u)
    assert is_valid(LevelCode(0, 0), u) and not is_valid(LevelCode(0, 1), u)
    const = u.constant(2, LevelCode(1, (0, 0)))
    assert is_valid(const, u)


def test_equivalence_examples():
    u = CodeUniverse(2, 2)
    assert equivalent(LevelCode(0, 0), LevelCode(0, 0), u)
    assert not equivalent(LevelCode(0, 0), LevelCode(0, 1), u)
    v = CodeUniverse(2, 1)
    assert equivalent(LevelCode(1, (0, 0)), LevelCode(1, (0, 1)), v)
    with pytest.raises(InvalidCode):
        equivalent(LevelCode(1, (1, 0)), LevelCode(1, (0, 0)), v)


@pytest.mark.parametrize("N,t,top", [(1, 1, 2), (2, 1, 2), (2, 2, 2), (3, 1, 1), (3, 2, 1), (3, 3, 1)])
def test_against_quotient_oracle(N, t, top):
    u = CodeUniverse(N, t)
    payloads, labels = quotient_oracle.levels(N, t, top)
    for level in range(top + 1):
        codes = u.codes(level)
        assert [c.payload for c in codes] == payloads[level]
        lab = labels[level]
        for c in codes:
            assert u.is_valid(c) == (c.payload in lab)
        valid = [c for c in codes if c.payload in lab]
        for a in valid:
            for b in valid:
                assert u.equivalent(a, b) == (lab[a.payload] == lab[b.payload])


@pytest.mark.parametrize("t", [1, 2, 3])
def test_level2_sampled_at_n3(t):
    u = CodeUniverse(3, t)
    payloads, labels = quotient_oracle.levels(3, t, 1)
    rng = random.Random(t)
    for _ in range(60):
        F = u.random_valid_code(2, rng) if rng.random() < 0.5 else u.random_code(2, rng)
        assert u.is_valid(F) == (quotient_oracle.induced_label(F.payload, payloads[1], labels[1]) is not None)


@pytest.mark.parametrize("t", [1, 2])
def test_equivalence_is_an_equivalence(t):
    u = CodeUniverse(2, t)
    valid = u.valid_codes(2)
    for a in valid:
        assert u.equivalent(a, a)
    for a, b in itertools.product(valid, repeat=2):
        assert u.equivalent(a, b) == u.equivalent(b, a)
    reps = u.classes(2)
    for a, b in itertools.combinations([cls[0] for cls in reps], 2):
        assert not u.equivalent(a, b)


def test_contract_numbers():
    big, small = CodeUniverse(3, 1), CodeUniverse(2, 1)
    assert contract(LevelCode(0, 2), big, small).payload == 1
    assert contract(LevelCode(0, 0), big, small).payload == 0


@pytest.mark.parametrize("t", [1, 2])
def test_contract_extend_roundtrip_and_validity(t):
    small, big = CodeUniverse(2, t), CodeUniverse(3, t)
    for level in range(3):
        for F in small.codes(level):
            E = extend(F, small, big)
            assert contract(E, big, small) == F
            if small.is_valid(F):
                assert big.is_valid(E)


def test_roundtrip_sampled_at_n3():
    mid, big = CodeUniverse(3, 2), CodeUniverse(4, 2)
    rng = random.Random(5)
    for _ in range(20):
        F = mid.random_code(2, rng)
        assert contract(extend(F, mid, big), big, mid) == F


def test_contraction_compatibility():
    big, small = CodeUniverse(3, 2), CodeUniverse(2, 2)
    rng = random.Random(1)
    for _ in range(40):
        F = big.random_valid_code(2, rng)
        CF = contract(F, big, small)
        for f in big.valid_codes(1):
            lhs = small.apply(CF, contract(f, big, small))
            rhs = contract(big.apply(F, f), big, small)
            assert small.equivalent(lhs, rhs)


def test_finite_example_search():
    u = universe(2, 1)
    P = formula_predicate("F(h)(0) = 0", ["F"], u, env={"h": FuncTable((0, 0))})
    N, g, big = finite_example_search(P, u, 2)
    assert N == 1 and g.payload == ((0,),)
    u2 = universe(2, 2)
    zero, one = LevelCode(1, (0, 0)), LevelCode(1, (1, 1))

    def swaps(F):
        return u2.equivalent(u2.apply(F, zero), one) and u2.equivalent(u2.apply(F, one), zero)

    N, g, _ = finite_example_search(swaps, u2, 2)
    assert N == 2 and swaps(g)
    assert finite_example_search(lambda F: False, u2, 2) is None


def test_operator_comprehension():
    u = universe(2, 2)
    F = op_recursive_comprehension(lambda f, n: n == f.payload[0], u)
    assert u.is_valid(F)
    for f in u.valid_codes(1):
        assert u.apply(F, f).payload[0] == f.payload[0]
    counting = op_recursive_comprehension(lambda f, n: n >= min(sum(1 for x in f.payload if x), 1), u)
    assert [u.apply(counting, f).payload[0] for f in u.codes(1)] == [0, 1, 1, 1]
    with pytest.raises(PremiseFails) as info:
        op_recursive_comprehension(lambda f, n: n > f.payload[0], u)
    assert info.value.witness.payload[0] == 1


def test_uniformize_examples():
    u = universe(2, 1)
    F = uniformize(lambda f, g: u.equivalent(f, g), u)
    assert all(u.equivalent(u.apply(F, f), f) for f in u.valid_codes(1))
    P = formula_predicate("g(0) = f(0)", ["f", "g"], u)
    F = uniformize(P, u)
    assert all(P(f, u.apply(F, f)) for f in u.valid_codes(1))
    assert u.apply(F, LevelCode(1, (0, 1))).payload == (0, 0)
    u3 = universe(3, 2)
    target = LevelCode(1, (1, 0, 0))
    F = uniformize(lambda f, g: u3.equivalent(g, target), u3)
    assert {u3.apply(F, f).payload for f in u3.valid_codes(1)} == {(1, 0, 0)}
    with pytest.raises(PremiseFails):
        uniformize(lambda f, g: f.payload == (0, 0), u)


def _is_invariant(u, P, domain, targets):
    for f1, f2 in itertools.product(domain, repeat=2):
        if not u.equivalent(f1, f2):
            continue
        for g1, g2 in itertools.product(targets, repeat=2):
            if u.equivalent(g1, g2) and P(f1, g1) != P(f2, g2):
                return False
    return True


def test_uniformize_all_truth_tables_small():
    u = universe(2, 1)
    fs, gs = u.valid_codes(1), u.codes(1)
    tested = 0
    for bits in range(1 << (len(fs) * len(gs))):
        table = {(f.payload, g.payload): bool(bits >> (i * len(gs) + j) & 1)
                 for i, f in enumerate(fs) for j, g in enumerate(gs)}
        P = lambda f, g: table[(f.payload, g.payload)]  # noqa: E731
        if not _is_invariant(u, P, fs, u.valid_codes(1)):
            continue
        if not all(any(P(f, g) for g in u.valid_codes(1)) for f in fs):
            continue
        F = uniformize(P, u)
        assert u.is_valid(F)
        assert all(P(f, u.apply(F, f)) for f in fs)
        tested += 1
    assert tested > 0


def test_highnum_examples():
    assert encode_highnum(5).entries == (3, 1, 0, 1)
    assert encode_highnum(0, 5).entries == (0,) * 5
    with pytest.raises(InvalidCode):
        encode_highnum(8, 3)


@given(st.integers(0, 2**10 - 1), st.integers(0, 4))
def test_highnum_roundtrip(n, slack):
    f = encode_highnum(n, n.bit_length() + 1 + slack)
    assert decode_highnum(f) == n
    assert is_highnum_code(f)
    assert normalize_code(f) == f


@pytest.mark.parametrize("length", range(1, 7))
def test_normalize_exhaustive(length):
    for entries in itertools.product(range(length + 1), *[(0, 1)] * (length - 1)):
        f = FuncTable(entries)
        g = normalize_code(f)
        assert is_highnum_code(g)
        assert normalize_code(g) == g
        assert (g == f) == is_highnum_code(f)
