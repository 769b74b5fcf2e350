import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from boundedarith.errors import (
    BudgetExceeded, CeilingExceeded, NoPathAtDepth, NotATree, NotBounded, OutOfGraph, SyntaxErrorAt,
)
from boundedarith.evaluator import (
    SUM, Evaluator, FuncTable, Model, TracingTable, apply_operator, builtin_sum,
    check_axiom_instance, define_function, digit_comprehension, env_sorts, eval_formula,
    eval_term, iterate_power, mu_eval, parse_bindings, query_bound, wkl_path,
)
from boundedarith.syntax import parse_definition, parse_formula, parse_term
from boundedarith.syntax.generate import GenConfig, Generator, _Ctx

import helpers

M = Model(ceiling=1 << 16)


@pytest.mark.parametrize("src,want", [("len(0)", 0), ("omega(5)", 125), ("tower(2, 2, 2)", 16), ("qpoly(4)", 4 ** 9)])
def test_term_examples(src, want):
    assert eval_term(parse_term(src), {}, Model(ceiling=1 << 20)) == want


@pytest.mark.parametrize("src,want", [("A x < 3. x < 3", True), ("E x < 3. x * x = 4", True), ("E x < 2. x * x = 4", False)])
def test_formula_examples(src, want):
    assert eval_formula(parse_formula(src)) is want


def test_ceiling_and_graph_errors():
    with pytest.raises(CeilingExceeded):
        eval_term(parse_term("omega(300)"), {}, M)
    with pytest.raises(OutOfGraph):
        eval_formula(parse_formula("f(5) = 0"), {"f": FuncTable((1, 2))})


def test_unbounded_rejected():
    with pytest.raises(NotBounded):
        eval_formula(parse_formula("E x. x = 0"))
    with pytest.raises(NotBounded):
        eval_formula(parse_formula("f = g"), {"f": FuncTable((0,)), "g": FuncTable((0,))})


def test_definition_budget():
    d = parse_formula("E h(n) := n + 1. h(0) = 1")
    assert eval_formula(d, {}, Model(def_budget=100))
    with pytest.raises(BudgetExceeded):
        eval_formula(d, {}, Model(def_budget=5))


def test_depth_budget():
    env = parse_bindings("f=fun:1,2,3\nG=op:(p, n) p(n) + 1", M)
    term = parse_term("G(G(G(f)))(0)", env_sorts(env))
    assert eval_term(term, env, M) == 4
    with pytest.raises(BudgetExceeded):
        eval_term(term, env, Model(depth_budget=2))


def test_unary_guard():
    assert eval_formula(parse_formula("E x:u < 5. x = 4"), {}, Model(ceiling=16))
    with pytest.raises(CeilingExceeded):
        eval_formula(parse_formula("A x:u < 6. x < 6"), {}, Model(ceiling=16))


def test_powerset_quantifier():
    assert eval_formula(parse_formula("E q sub 3. q(0) + q(1) + q(2) = 3"))
    assert not eval_formula(parse_formula("A q sub 3. q(0) + q(1) + q(2) < 3"))
    count = parse_formula("E q sub 4. A x < 4. q(x) = 1 -> x < 2")
    assert eval_formula(count)
    with pytest.raises(CeilingExceeded):
        eval_formula(parse_formula("E q sub 5. q(0) = 0"), {}, Model(ceiling=32))


@pytest.mark.parametrize("bound,mask", [(b, m) for b in range(7) for m in (0, 0b101010, 0b111111, 0b010000)])
def test_mu_examples(bound, mask):
    got = mu_eval(bound, lambda x: bool(mask >> x & 1))
    want = next((x for x in range(bound) if mask >> x & 1), bound)
    assert got == want


def test_mu_spec_cases():
    assert mu_eval(5, lambda x: x % 2 == 1) == 1
    assert mu_eval(3, lambda x: x == 7) == 3
    assert mu_eval(0, lambda x: True) == 0


@given(st.integers(0, 40), st.integers(0, 2**40 - 1))
def test_mu_laws(b, mask):
    p = lambda x: bool(mask >> x & 1)  # noqa: E731
    r = mu_eval(b, p)
    assert r <= b
    if r < b:
        assert p(r)
    assert not any(p(x) for x in range(r))


def test_define_function():
    d = parse_definition("(n) mu(m < n + 1 : m + m >= n)")
    t = define_function(d, {}, Model(threshold=8))
    assert t.entries == tuple((n + 1) // 2 for n in range(8))
    ones = define_function(parse_definition("(n) mu(m < 1 : false)"), {}, Model(threshold=5))
    assert ones.entries == (1,) * 5


def test_define_function_ceiling():
    with pytest.raises(CeilingExceeded):
        define_function(parse_definition("(n) mu(m < n + 14 : false)"), {}, Model(ceiling=16, threshold=4))


def test_max_argmax_example():
    env = parse_bindings(
        "f=fun:3,1,4,1\n"
        "argmax=op:lam p. lam n. mu(m < n + 1 : A k < n + 1. p(k) <= p(m))\n"
        "mx=op:(p, n) p(argmax(p)(n))",
        M,
    )
    sorts = env_sorts(env)
    assert eval_term(parse_term("mx(f)(2)", sorts), env, M) == 4
    assert eval_term(parse_term("argmax(f)(3)", sorts), env, M) == 2


def test_apply_operator_examples():
    f = FuncTable((1, 2, 3))
    assert apply_operator(SUM, f, 2) == 6
    ident = Evaluator(M).make_definition_value(parse_definition("(p, n) mu(m < p(n) + 1 : m = p(n))"), {})
    assert [apply_operator(ident, f, i) for i in range(3)] == [1, 2, 3]
    with pytest.raises(OutOfGraph):
        apply_operator(ident, f, 3)


def test_builtin_sum():
    assert builtin_sum(FuncTable((1, 2, 3)), 2) == 6
    assert builtin_sum(FuncTable((0,) * 5), 4) == 0


@given(st.lists(st.integers(0, 100), min_size=2, max_size=20), st.data())
def test_sum_telescoping_and_linearity(xs, data):
    f = FuncTable(tuple(xs))
    g = FuncTable(tuple(data.draw(st.lists(st.integers(0, 100), min_size=len(xs), max_size=len(xs)))))
    fg = FuncTable(tuple(a + b for a, b in zip(f.entries, g.entries)))
    for n in range(len(xs) - 1):
        assert builtin_sum(f, n + 1) - builtin_sum(f, n) == f.lookup(n + 1)
        assert builtin_sum(fg, n) == builtin_sum(f, n) + builtin_sum(g, n)
        assert apply_operator(SUM, f, n, Model(ceiling=1 << 20)) == sum(xs[: n + 1])


def test_digit_comprehension_examples():
    assert digit_comprehension(3, lambda i: i % 2 == 0) == 5
    assert digit_comprehension(3, lambda i: False) == 0
    assert digit_comprehension(2, lambda i: True) == 7
    with pytest.raises(CeilingExceeded):
        digit_comprehension(4, lambda i: True, Model(ceiling=16))


@pytest.mark.parametrize("l", range(5))
def test_digit_comprehension_exhaustive(l):
    for mask in range(1 << (l + 1)):
        v = digit_comprehension(l, lambda i: bool(mask >> i & 1))
        assert all((v >> i & 1) == (mask >> i & 1) for i in range(l + 1))
        assert v == mask


def naive_power(f, k):
    out = list(range(len(f)))
    for _ in range(k):
        out = [f.lookup(x) for x in out]
    return tuple(out)


def test_iterate_power_examples():
    succ7 = FuncTable(tuple((i + 1) % 7 for i in range(7)))
    assert iterate_power(succ7, 1).entries == tuple((i + 4) % 7 for i in range(7))
    ident = FuncTable(tuple(range(5)))
    assert iterate_power(ident, 2) == ident
    clamp = FuncTable(tuple(min(i + 1, 5) for i in range(6)))
    assert iterate_power(clamp, 0).entries == naive_power(clamp, 2)
    with pytest.raises(BudgetExceeded):
        iterate_power(clamp, 5, max_compositions=16)


@pytest.mark.parametrize("size", range(1, 5))
def test_iterate_power_exhaustive_small(size):
    for entries in itertools.product(range(size), repeat=size):
        f = FuncTable(entries)
        for n in range(3):
            assert iterate_power(f, n).entries == naive_power(f, 2 ** (2 ** n))


def test_axiom_instances():
    v = check_axiom_instance("induction", {"f": FuncTable((2, 2, 2))})
    assert v.premise and v.holds
    v = check_axiom_instance("induction", {"f": FuncTable((2, 3))})
    assert not v.premise and v.counterexample == 0
    v = check_axiom_instance("pind_min_length_word", {"set": FuncTable((0, 0, 0, 0, 1, 1, 1, 1))})
    assert v.witness == 4
    v = check_axiom_instance("bounded_collection", {"f": lambda m, n: n == m + 1}, Model(threshold=7))
    assert v.holds and v.witness == 8
    v = check_axiom_instance("recursive_comprehension", {"p": lambda m, n: n * n >= m}, Model(threshold=10))
    assert v.witness.entries == tuple(next(n for n in range(10) if n * n >= m) for m in range(10))
    v = check_axiom_instance("recursive_comprehension", {"p": lambda m, n: m < 3}, Model(threshold=5, ceiling=8))
    assert not v.premise and v.counterexample == 3


def test_wkl_examples():
    assert wkl_path(FuncTable((1,) * 15), 3) == [0, 1, 3, 7]
    pruned = FuncTable((1, 0, 1, 0, 0, 1, 1))
    assert wkl_path(pruned, 2) == [0, 2, 5]
    assert wkl_path(FuncTable((1,)), 0) == [0]
    with pytest.raises(NotATree):
        wkl_path(FuncTable((1, 0, 0, 1)), 2)
    with pytest.raises(NoPathAtDepth):
        wkl_path(FuncTable((1, 1)), 2)


def test_bindings_errors():
    with pytest.raises(SyntaxErrorAt) as info:
        parse_bindings("f=fun:1,2\nbad line\n")
    assert info.value.line == 2
    with pytest.raises(SyntaxErrorAt):
        parse_bindings("F=op:(n) n")


def test_operator_locality_and_extensionality():
    rng = random.Random(7)
    model = Model(ceiling=16)
    gen = Generator(rng, GenConfig())
    checked = 0
    for _ in range(300):
        d = gen.definition(_Ctx(), rng.randint(0, 3), 2)
        op = Evaluator(model).make_definition_value(d, {})
        entries = tuple(rng.randrange(16) for _ in range(rng.randint(1, 8)))
        f, g = TracingTable(entries), FuncTable(entries)
        count_bound, index_bound = query_bound(d, model)
        for n in range(4):
            f.queries.clear()
            try:
                a = apply_operator(op, f, n, model)
            except (OutOfGraph, CeilingExceeded) as exc:
                with pytest.raises(type(exc)):
                    apply_operator(op, g, n, model)
                continue
            assert apply_operator(op, g, n, model) == a
            assert len(f.queries) <= count_bound
            assert all(q <= index_bound for q in f.queries)
            checked += 1
    assert checked > 200


def test_oracle_agreement_sample():
    assert helpers.compare_random(2000, seed=11) == []
