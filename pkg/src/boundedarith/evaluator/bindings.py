"""Reading environments from ``name=sort:payload`` lines.

Sorts: ``num`` and ``unary`` take a number, ``fun`` a comma-separated table,
``fundef`` a level-1 definition and ``op`` a level-2 definition, both in the
surface grammar (``(n) term`` or ``lam f. lam n. term``).  Definitions may
refer to names bound on earlier lines.
"""

from __future__ import annotations

import re

from ..errors import SyntaxErrorAt
from ..syntax.parser import parse_definition
from .core import Evaluator
from .values import FuncTable, Model, env_sorts

_LINE = re.compile(r"\s*([A-Za-z_][\w']*)\s*=\s*(\w+)\s*:(.*)$")


def parse_binding(line: str, env: dict, model: Model, lineno: int = 1):
    m = _LINE.match(line)
    if not m:
        raise SyntaxErrorAt("expected name=sort:payload", lineno, 1)
    name, sort, payload = m.group(1), m.group(2), m.group(3).strip()
    try:
        if sort in ("num", "unary"):
            value = int(payload)
            if value < 0:
                raise ValueError("numbers are non-negative")
            if sort == "unary":
                model.check((1 << value) - 1, "unary code")
            return name, model.check(value, name)
        if sort == "fun":
            entries = [int(x) for x in payload.split(",") if x.strip()]
            return name, FuncTable(tuple(entries)).validate(model)
    except ValueError as exc:
        raise SyntaxErrorAt(f"bad payload for {name}: {exc}", lineno, 1) from None
    if sort in ("fundef", "op"):
        try:
            d = parse_definition(payload, env_sorts(env))
        except SyntaxErrorAt as exc:
            raise SyntaxErrorAt(exc.message, lineno, exc.column) from None
        want = 1 if sort == "fundef" else 2
        if d.level != want:
            raise SyntaxErrorAt(f"{name}: expected a level-{want} definition, got level {d.level}", lineno, 1)
        return name, Evaluator(model).make_definition_value(d, env)
    raise SyntaxErrorAt(f"unknown sort {sort!r} (num, unary, fun, fundef, op)", lineno, 1)


def parse_bindings(text: str, model: Model | None = None, env: dict | None = None) -> dict:
    model = model or Model()
    env = dict(env or {})
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        name, value = parse_binding(line, env, model, lineno)
        env[name] = value
    return env
