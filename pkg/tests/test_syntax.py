from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from boundedarith.errors import SortError, SyntaxErrorAt
from boundedarith.syntax import (
    BINARY, FUNC, OPER, Add, Eq, Lit, Mu, UnboundedQ, Var, check_bounded,
    classify_alternation, free_vars, parse_definition, parse_formula, parse_term,
    print_formula, split_corpus,
)
from boundedarith.syntax.generate import GenConfig, Generator

CORPUS = Path(__file__).resolve().parent.parent / "corpus" / "labeled.txt"


def labeled_corpus():
    out = []
    for lineno, src in split_corpus(CORPUS.read_text()):
        label, formula = src.split(" :: ", 1)
        out.append((label, formula))
    return out


def test_literal_parse():
    assert parse_formula("0 + 1 = 1") == Eq(Add(Lit(0), Lit(1)), Lit(1))
    assert print_formula(Eq(Add(Lit(0), Lit(1)), Lit(1))) == "0 + 1 = 1"


def test_mu_parse_and_print():
    t = parse_term("mu(x < 5 : x * x = 4)")
    assert isinstance(t, Mu) and t.bound == Lit(5)
    assert print_formula(Eq(t, Lit(2))).startswith("mu(x < 5 : ")


def test_continuum_hypothesis_sorts():
    f = parse_formula("E F. A f. A g. E n. F(n, f) = g | F(n, g) = f")
    assert isinstance(f, UnboundedQ) and f.var.sort == OPER
    assert str(classify_alternation(f)) == "Sigma_3"


@pytest.mark.parametrize("src,label", [
    ("x + 0 = x", "Sigma_0"),
    ("A x. E y. x < y", "Pi_2"),
    ("E F. A f, g. E n. F(n, f) = g | F(n, g) = f", "Sigma_3"),
])
def test_classify_examples(src, label):
    assert str(classify_alternation(parse_formula(src))) == label


@pytest.mark.parametrize("label,src", labeled_corpus())
def test_corpus_labels(label, src):
    f = parse_formula(src)
    assert str(classify_alternation(f)) == label
    assert parse_formula(print_formula(f)) == f


def test_corpus_is_large_enough():
    assert len(labeled_corpus()) >= 20


@pytest.mark.parametrize("src,kinds", [
    ("E x < y. x = 0", []),
    ("E x. x = 0", ["unbounded"]),
    ("E x < x + 1. x = 0", ["self-bound"]),
    ("A f. f = f", ["unbounded", "extensional-equality"]),
])
def test_check_bounded(src, kinds):
    assert [v.kind for v in check_bounded(parse_formula(src))] == kinds


def test_free_vars_order_and_binding():
    assert free_vars(parse_formula("x + y = y")) == [("x", BINARY), ("y", BINARY)]
    assert free_vars(parse_formula("A x. E y. x < y")) == []
    assert free_vars(parse_formula("E h(n) := n + z. h(f(0)) = 1")) == [("z", BINARY), ("f", FUNC)]


def test_syntax_error_position():
    with pytest.raises(SyntaxErrorAt) as info:
        parse_formula("A x < 3.\n  x = = 1")
    assert info.value.line == 2


def test_sort_error():
    with pytest.raises(SortError):
        parse_formula("x(1) = 0")


def test_lam_desugars_to_definitional_quantifier():
    f = parse_formula("(lam n. n + 1)(2) = 3")
    assert type(f).__name__ == "DefQ" and f.definition.level == 1


def test_relational_sugar():
    assert parse_formula("x <= y") == parse_formula("!(y < x)")
    assert parse_formula("x != y") == parse_formula("!(x = y)")


def test_definition_forms_agree():
    a = parse_definition("lam f. lam n. f(n) + 1")
    b = parse_definition("(f, n) f(n) + 1")
    assert a == b and a.level == 2


def test_self_reference_rejected():
    with pytest.raises(SyntaxErrorAt):
        parse_formula("E h(n) := h(n). h(0) = 0")


def test_split_corpus():
    text = "# comment\nx = 1; y = 2\n\nA x. x = x  # trailing\n"
    assert split_corpus(text) == [(2, "x = 1"), (2, "y = 2"), (4, "A x. x = x")]


def _roundtrip_batch(seed, bounded, n=200):
    cfg = GenConfig(bounded=bounded, allow_exotic=not bounded)
    gen = Generator(seed, cfg)
    for _ in range(n):
        f = gen.sample(gen.rng.randint(0, 6))
        assert parse_formula(print_formula(f)) == f, print_formula(f)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.booleans())
def test_roundtrip_generated(seed, bounded):
    _roundtrip_batch(seed, bounded, n=20)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from("AE"))
def test_prefixing_raises_k_by_at_most_one(seed, kind):
    gen = Generator(seed, GenConfig(bounded=False))
    f = gen.sample(4)
    k = classify_alternation(f).k
    g = UnboundedQ(kind, Var("zz", BINARY), f)
    assert k <= classify_alternation(g).k <= k + 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_bounded_implies_sigma0(seed):
    f = Generator(seed, GenConfig(bounded=False)).sample(5)
    if not check_bounded(f):
        assert classify_alternation(f).k == 0
