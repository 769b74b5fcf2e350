"""Instance-wise checks of individual axioms over a finite model, and WKL paths."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from ..errors import NoPathAtDepth, NotATree, PremiseFails
from ..towerutil import bitlen, pair
from .values import FuncTable, Model


@dataclass(frozen=True)
class Verdict:
    kind: str
    premise: bool
    holds: bool
    witness: Any = None
    counterexample: Any = None


def _relation(r) -> Callable[[int, int], int]:
    """Accept a two-place callable or a table indexed by the Cantor pair."""
    if isinstance(r, FuncTable):
        return lambda m, n: r.lookup(pair(m, n))
    return r


def _induction(params, model: Model) -> Verdict:
    f: FuncTable = params["f"]
    L = len(f)
    for n in range(L - 1):
        if f.lookup(n) != f.lookup(n + 1):
            return Verdict("induction", False, True, counterexample=n)
    for n in range(L):
        if f.lookup(n) != f.lookup(0):
            return Verdict("induction", True, False, counterexample=n)
    return Verdict("induction", True, True, witness=f.lookup(0) if L else None)


def _pind(params, model: Model) -> Verdict:
    s: FuncTable = params["set"]
    members = [n for n in range(len(s)) if s.lookup(n)]
    if not members:
        return Verdict("pind_min_length_word", False, True)
    best = min(members, key=lambda n: (bitlen(n), n))
    return Verdict("pind_min_length_word", True, True, witness=best)


def _least_witness(rel, m: int, limit: int):
    for n in range(limit):
        if rel(m, n):
            return n
    return None


def _collection(params, model: Model) -> Verdict:
    rel = _relation(params["f"])
    domain = params.get("domain", model.threshold)
    limit = params.get("search", model.ceiling)
    bound = 0
    for m in range(domain):
        n = _least_witness(rel, m, limit)
        if n is None:
            return Verdict("bounded_collection", False, True, counterexample=m)
        bound = max(bound, n + 1)
    ok = all(_least_witness(rel, m, bound) is not None for m in range(domain))
    return Verdict("bounded_collection", True, ok, witness=bound)


def _recursive_comprehension(params, model: Model) -> Verdict:
    rel = _relation(params["p"])
    domain = params.get("domain", model.threshold)
    limit = params.get("search", model.ceiling)
    entries = []
    for m in range(domain):
        n = _least_witness(rel, m, limit)
        if n is None:
            return Verdict("recursive_comprehension", False, True, counterexample=m)
        entries.append(n)
    f = FuncTable(tuple(entries))
    ok = all(rel(m, f.lookup(m)) for m in range(domain))
    return Verdict("recursive_comprehension", True, ok, witness=f)


_KINDS = {
    "induction": _induction,
    "pind_min_length_word": _pind,
    "bounded_collection": _collection,
    "recursive_comprehension": _recursive_comprehension,
}


def check_axiom_instance(kind: str, params: dict, model: Model | None = None) -> Verdict:
    """Check one instance of an axiom; a failing premise is reported in the verdict.

    ``induction`` takes ``f``; ``pind_min_length_word`` takes a boolean table
    ``set``; ``bounded_collection`` takes a relation ``f(m, n)`` and
    ``recursive_comprehension`` a relation ``p(m, n)``, either as a callable or
    as a table on paired arguments, with optional ``domain`` and ``search``.
    """
    try:
        check = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown axiom kind {kind!r}; expected one of {sorted(_KINDS)}") from None
    return check(params, model or Model())


def require_premise(v: Verdict) -> Verdict:
    if not v.premise:
        raise PremiseFails(f"premise of {v.kind} fails", witness=v.counterexample)
    return v


def _present(tree: FuncTable, n: int) -> bool:
    return n < len(tree) and bool(tree.lookup(n))


def check_tree(tree: FuncTable) -> None:
    for n in range(1, len(tree)):
        if tree.lookup(n) and not tree.lookup((n - 1) // 2):
            raise NotATree(n)


def wkl_path(tree: FuncTable, depth: int) -> list[int]:
    """Leftmost root-to-``depth`` path in a heap-indexed boolean tree."""
    check_tree(tree)
    lo, hi = (1 << depth) - 1, (1 << (depth + 1)) - 2
    for node in range(lo, min(hi, len(tree) - 1) + 1):
        if _present(tree, node):
            path = [node]
            while node:
                node = (node - 1) // 2
                path.append(node)
            return path[::-1]
    raise NoPathAtDepth(f"no node at depth {depth}")
