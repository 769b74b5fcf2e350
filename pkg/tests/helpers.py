"""Shared fixtures for randomized evaluator tests."""

from __future__ import annotations

import random

from boundedarith.errors import BudgetExceeded, CeilingExceeded, OutOfGraph, UnboundVar
from boundedarith.evaluator import SUM, Evaluator, FuncTable, Model, eval_formula
from boundedarith.syntax.generate import GenConfig, Generator, _Ctx

import naive_interp

ERROR_TAGS = {OutOfGraph: "graph", CeilingExceeded: "ceiling", UnboundVar: "unbound", BudgetExceeded: "budget"}


def random_environment(rng: random.Random, ceiling: int):
    """Matching (evaluator env, oracle env) for parameters y, f, g, F."""
    model = Model(ceiling=ceiling)
    naive = naive_interp.Naive(ceiling)
    y = rng.randrange(ceiling)
    tables = {name: [rng.randrange(ceiling) for _ in range(rng.randint(1, 6))] for name in ("f", "g")}
    ev_env = {"y": y, **{k: FuncTable(tuple(v)) for k, v in tables.items()}}
    or_env = {"y": y, **{k: naive_interp.table(v) for k, v in tables.items()}}
    if rng.random() < 0.3:
        ev_env["F"] = SUM
        or_env["F"] = naive_interp.sum_operator(ceiling)
    else:
        gen = Generator(rng, GenConfig())
        d = gen.definition(_Ctx(), rng.randint(0, 2), 2)
        ev_env["F"] = Evaluator(model).make_definition_value(d, {})
        or_env["F"] = naive.closure(d, {})
    return model, ev_env, or_env


def evaluator_outcome(formula, env, model):
    try:
        return ("ok", eval_formula(formula, env, model))
    except tuple(ERROR_TAGS) as exc:
        return ("err", ERROR_TAGS[type(exc)])


def compare_random(count: int, seed: int, depth: int = 4, ceiling: int = 16):
    """Run ``count`` random formulas through both interpreters; returns the disagreements."""
    rng = random.Random(seed)
    gen = Generator(rng, GenConfig())
    bad = []
    for _ in range(count):
        model, ev_env, or_env = random_environment(rng, ceiling)
        f = gen.sample(rng.randint(0, depth))
        got = evaluator_outcome(f, ev_env, model)
        want = naive_interp.outcome(ceiling, f, or_env)
        if got != want:
            bad.append((f, got, want))
    return bad
