"""Recursive-descent parser for the ASCII surface grammar.

Grammar summary::

    formula  := ('A'|'E') binder {',' binder} '.' formula | implies
    implies  := disj ['->' implies]
    disj     := conj {'|' conj}
    conj     := unary {'&' unary}
    unary    := '!' unary | quantified | 'true' | 'false' | '(' formula ')' | term RELOP term
    binder   := NAME [':' SORT] [('<' | '<=' | 'sub') term | '(' params ')' ':=' term]
    term     := mul {'+' mul}
    mul      := post {'*' post}
    post     := atom {'(' term {',' term} ')'}
    atom     := NUM | NAME | '(' term ')' | len(t) | omega(t) | qpoly(t)
              | tower(t, t, t) | mu(NAME ('<'|'<=') term ':' formula) | lam NAME '.' term

``lam`` terms are hoisted into definitional quantifiers around the nearest
enclosing atomic formula; ``<=``, ``>``, ``>=``, ``!=``, ``true`` and
``false`` are sugar over ``=``, ``<`` and ``!``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import SortError, SyntaxErrorAt
from .ast import (
    BINARY, FALSE, TRUE, UNARY, Add, And, Apply, BoundedQ, DefQ, Definition, Eq,
    Implies, Len, Lit, Lt, Mu, Mul, Not, Omega1, Or, QuasiPoly, Sort, Tower,
    UnboundedQ, Var, default_sort, func_sort, term_sort,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<op>:=|->|<=|>=|!=|[()\[\],.:=<>+*!&|])
    """,
    re.VERBOSE,
)

KEYWORDS = {"A", "E", "mu", "lam", "len", "omega", "qpoly", "tower", "true", "false", "sub"}
RELOPS = {"=", "<", "<=", ">", ">=", "!="}


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "name" | "op" | "eof"
    text: str
    pos: int
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SyntaxErrorAt(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), pos, line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", pos, line, pos - line_start + 1))
    return tokens


def parse_sort(text: str) -> Sort:
    if text == "u":
        return UNARY
    if text == "b":
        return BINARY
    if text.isdigit() and int(text) >= 1:
        return func_sort(int(text))
    raise ValueError(f"unknown sort annotation {text!r}")


@dataclass(frozen=True)
class _Lam:
    """Placeholder produced while parsing a term; never escapes the parser."""

    params: tuple
    body: object
    span: tuple


class _Backtrack(Exception):
    pass


class Parser:
    def __init__(self, text: str, sorts: dict | None = None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.scope: dict[str, Sort] = dict(sorts or {})
        self.pending: list[tuple[Var, _Lam]] = []
        self.fresh = 0

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, msg: str, tok: Token | None = None, cls=SyntaxErrorAt):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def span_from(self, start: Token) -> tuple[int, int]:
        prev = self.tokens[self.i - 1] if self.i else start
        return (start.pos, prev.pos + len(prev.text))

    def fresh_name(self, stem: str) -> str:
        name = f"_{stem}{self.fresh}"
        self.fresh += 1
        return name

    def name_token(self) -> Token:
        tok = self.tok
        if tok.kind != "name" or tok.text in KEYWORDS:
            raise self.error(f"expected a variable name, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def annotation(self, name: str) -> Sort:
        if self.at(":") and self.peek().kind in ("name", "num"):
            # ':' followed by a sort annotation; inside mu(...) the ':' separator is
            # followed by a formula, which never starts with a bare u/b/digit
            # that is itself followed by '<', '.', ',', ')' or ':='.
            after = self.peek(2)
            ann = self.peek().text
            if ann in ("u", "b") or ann.isdigit():
                if after.text in ("<", "<=", ".", ",", ")", ":=", "(", "sub"):
                    self.i += 1
                    tok = self.tok
                    self.i += 1
                    try:
                        return parse_sort(tok.text)
                    except ValueError as exc:
                        raise self.error(str(exc), tok) from None
        return default_sort(name)

    # -- scopes
    def bind(self, var: Var):
        old = dict(self.scope)
        self.scope[var.name] = var.sort
        return old

    def lookup(self, name: str) -> Sort:
        return self.scope.get(name, default_sort(name))

    # -- formulas
    def parse_formula_top(self):
        f = self.formula()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return f

    def formula(self):
        if self.at("A") or self.at("E"):
            return self.quantified()
        return self.implies()

    def implies(self):
        start = self.tok
        left = self.disj()
        if self.at("->"):
            self.i += 1
            right = self.formula_operand(self.implies)
            return Implies(left, right, span=self.span_from(start))
        return left

    def formula_operand(self, rule):
        if self.at("A") or self.at("E"):
            return self.quantified()
        return rule()

    def disj(self):
        start = self.tok
        left = self.conj()
        while self.at("|"):
            self.i += 1
            right = self.conj()
            left = Or(left, right, span=self.span_from(start))
        return left

    def conj(self):
        start = self.tok
        left = self.unary()
        while self.at("&"):
            self.i += 1
            right = self.unary()
            left = And(left, right, span=self.span_from(start))
        return left

    def unary(self):
        start = self.tok
        if self.at("!"):
            self.i += 1
            return Not(self.unary(), span=self.span_from(start))
        if self.at("A") or self.at("E"):
            return self.quantified()
        if self.at("true"):
            self.i += 1
            return TRUE
        if self.at("false"):
            self.i += 1
            return FALSE
        if self.at("("):
            save = (self.i, self.fresh, list(self.pending), dict(self.scope))
            try:
                self.i += 1
                f = self.formula()
                self.expect(")")
                if self.tok.text in RELOPS or self.tok.text in ("+", "*", "("):
                    raise _Backtrack
                return f
            except (_Backtrack, SyntaxErrorAt):
                self.i, self.fresh, self.pending, self.scope = save
        return self.comparison()

    def comparison(self):
        start = self.tok
        outer_pending = self.pending
        self.pending = []
        left = self.term()
        op = self.tok
        if op.text not in RELOPS:
            raise self.error(f"expected a comparison, found {op.text or 'end of input'!r}")
        self.i += 1
        right = self.term()
        span = self.span_from(start)
        f = self.build_comparison(op, left, right, span)
        lams, self.pending = self.pending, outer_pending
        for var, lam in reversed(lams):
            defn = self.lam_definition(lam)
            f = DefQ("E", var, defn, f, span=span)
        return f

    def build_comparison(self, op: Token, left, right, span):
        ls, rs = term_sort(left), term_sort(right)
        if op.text in ("=", "!=") and not ls.is_number:
            if ls != rs:
                raise self.error(f"cannot compare sort {ls} with sort {rs}", op, SortError)
        else:
            for side, s in ((left, ls), (right, rs)):
                if not s.is_number:
                    raise self.error(f"comparison {op.text!r} needs numbers, got sort {s}", op, SortError)
        if op.text == "=":
            return Eq(left, right, span=span)
        if op.text == "!=":
            return Not(Eq(left, right, span=span), span=span)
        if op.text == "<":
            return Lt(left, right, span=span)
        if op.text == ">":
            return Lt(right, left, span=span)
        if op.text == "<=":
            return Not(Lt(right, left, span=span), span=span)
        return Not(Lt(left, right, span=span), span=span)  # >=

    def quantified(self):
        start = self.tok
        kind = self.tok.text
        self.i += 1
        saved = dict(self.scope)
        binders = []
        while True:
            n_pending = len(self.pending)
            var, how, payload = self.binder()
            if len(self.pending) != n_pending:
                raise self.error("lam is not allowed in a quantifier bound", start)
            binders.append((var, how, payload))
            self.scope[var.name] = var.sort
            if not self.at(","):
                break
            self.i += 1
        self.expect(".")
        body = self.formula()
        self.scope = saved
        span = self.span_from(start)
        for var, how, payload in reversed(binders):
            if how == "none":
                body = UnboundedQ(kind, var, body, span=span)
            elif how == "def":
                body = DefQ(kind, var, payload, body, span=span)
            else:
                body = BoundedQ(kind, var, payload, body, span=span)
        return body

    def binder(self):
        tok = self.name_token()
        name = tok.text
        sort = self.annotation(name)
        if self.at("<") or self.at("<="):
            op = self.tok
            self.i += 1
            if not sort.is_number:
                raise self.error(f"'{name}' has sort {sort}; use 'sub' for subset quantifiers", op, SortError)
            bound = self.term()
            self.require_number(bound, op)
            if op.text == "<=":
                bound = Add(bound, Lit(1))
            return Var(name, sort, span=(tok.pos, tok.pos + len(name))), "bounded", bound
        if self.at("sub"):
            op = self.tok
            self.i += 1
            if sort.kind != "func" or sort.level != 1:
                raise self.error(f"'sub' quantifies over functions, '{name}' has sort {sort}", op, SortError)
            bound = self.term()
            self.require_number(bound, op)
            return Var(name, sort, span=(tok.pos, tok.pos + len(name))), "bounded", bound
        if self.at("("):
            defn = self.definition_head(name, tok)
            return Var(name, func_sort(defn.level)), "def", defn
        return Var(name, sort, span=(tok.pos, tok.pos + len(name))), "none", None

    def definition_head(self, name: str, tok: Token) -> Definition:
        self.expect("(")
        params = [self.param()]
        while self.at(","):
            self.i += 1
            params.append(self.param())
        self.expect(")")
        self.expect(":=")
        saved = dict(self.scope)
        for p in params:
            self.scope[p.name] = p.sort
        self.scope.pop(name, None)
        body_start = self.tok
        outer_pending = self.pending
        self.pending = []
        rhs = self.term()
        if self.pending:
            raise self.error("lam inside a definition body; name it with its own quantifier", body_start)
        self.pending = outer_pending
        self.scope = saved
        defn = self.make_definition(tuple(params), rhs, tok)
        if any(v.name == name for v in _vars(defn)):
            raise self.error(f"definition of {name!r} mentions {name!r}", tok, SortError)
        return defn

    def param(self) -> Var:
        tok = self.name_token()
        return Var(tok.text, self.annotation(tok.text), span=(tok.pos, tok.pos + len(tok.text)))

    def make_definition(self, params: tuple, rhs, tok: Token) -> Definition:
        sorts = [p.sort for p in params]
        if len(params) == 1 and sorts[0].is_number:
            level = 1
        elif len(params) == 2 and sorts[0] == func_sort(1) and sorts[1].is_number:
            level = 2
        else:
            raise self.error("definitions take (n) for functions or (f, n) for operators", tok, SortError)
        rsort = term_sort(rhs)
        if not rsort.is_number:
            raise self.error(f"definition body has sort {rsort}, expected a number", tok, SortError)
        if isinstance(rhs, Mu):
            return Definition(level, params, rhs.var, rhs.bound, rhs.body)
        mv = Var(self.fresh_name("m"), BINARY)
        return Definition(level, params, mv, Add(rhs, Lit(1)), Eq(mv, rhs))

    def lam_definition(self, lam: _Lam) -> Definition:
        tok = Token("name", "lam", lam.span[0], 1, 1)
        return self.make_definition(lam.params, lam.body, tok)

    # -- terms
    def require_number(self, t, tok: Token):
        s = term_sort(t)
        if not s.is_number:
            raise self.error(f"expected a number, got sort {s}", tok, SortError)

    def term(self):
        start = self.tok
        left = self.mul()
        while self.at("+"):
            op = self.tok
            self.i += 1
            right = self.mul()
            self.require_number(left, op)
            self.require_number(right, op)
            left = Add(left, right, span=self.span_from(start))
        return left

    def mul(self):
        start = self.tok
        left = self.post()
        while self.at("*"):
            op = self.tok
            self.i += 1
            right = self.post()
            self.require_number(left, op)
            self.require_number(right, op)
            left = Mul(left, right, span=self.span_from(start))
        return left

    def post(self):
        start = self.tok
        t = self.atom()
        while self.at("("):
            op = self.tok
            self.i += 1
            args = [self.term()]
            while self.at(","):
                self.i += 1
                args.append(self.term())
            self.expect(")")
            hs = term_sort(t)
            if hs.is_number:
                raise self.error("applying a number as a function", op, SortError)
            levels = [term_sort(a).level for a in args]
            if max(levels) != hs.level - 1 or any(lv > hs.level - 1 for lv in levels):
                raise self.error(
                    f"sort-{hs.level} head applied to arguments of levels {levels}", op, SortError
                )
            t = Apply(t, tuple(args), span=self.span_from(start))
        return t

    def unary_builtin(self, cls, start):
        self.i += 1
        self.expect("(")
        arg = self.term()
        self.require_number(arg, start)
        self.expect(")")
        return cls(arg, span=self.span_from(start))

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Lit(int(tok.text), span=(tok.pos, tok.pos + len(tok.text)))
        if self.at("("):
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        if self.at("len"):
            return self.unary_builtin(Len, tok)
        if self.at("omega"):
            return self.unary_builtin(Omega1, tok)
        if self.at("qpoly"):
            return self.unary_builtin(QuasiPoly, tok)
        if self.at("tower"):
            self.i += 1
            self.expect("(")
            parts = [self.term()]
            for _ in range(2):
                self.expect(",")
                parts.append(self.term())
            self.expect(")")
            for p in parts:
                self.require_number(p, tok)
            return Tower(*parts, span=self.span_from(tok))
        if self.at("mu"):
            return self.mu(tok)
        if self.at("lam"):
            return self.lam(tok)
        if tok.kind == "name" and tok.text not in KEYWORDS:
            self.i += 1
            return Var(tok.text, self.lookup(tok.text), span=(tok.pos, tok.pos + len(tok.text)))
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")

    def mu(self, start: Token):
        self.i += 1
        self.expect("(")
        vt = self.name_token()
        sort = self.annotation(vt.text)
        if not sort.is_number:
            raise self.error("mu binds a number", vt, SortError)
        var = Var(vt.text, sort, span=(vt.pos, vt.pos + len(vt.text)))
        op = self.tok
        if not (self.at("<") or self.at("<=")):
            raise self.error("expected '<' or '<=' in mu")
        self.i += 1
        bound = self.term()
        self.require_number(bound, op)
        if op.text == "<=":
            bound = Add(bound, Lit(1))
        self.expect(":")
        saved = self.bind(var)
        outer_pending = self.pending
        self.pending = []
        body = self.formula()
        self.pending = outer_pending
        self.scope = saved
        self.expect(")")
        return Mu(var, bound, body, span=self.span_from(start))

    def lam(self, start: Token):
        params = []
        saved = dict(self.scope)
        while self.at("lam"):
            self.i += 1
            p = self.param()
            self.expect(".")
            self.scope[p.name] = p.sort
            params.append(p)
        outer_pending = self.pending
        self.pending = []
        body = self.term()
        if self.pending:
            raise self.error("nested lam is not supported; name it with a definitional quantifier", start)
        self.pending = outer_pending
        self.scope = saved
        lam = _Lam(tuple(params), body, (start.pos, start.pos))
        level = 2 if len(params) == 2 else 1
        var = Var(self.fresh_name("l"), func_sort(level))
        self.pending.append((var, lam))
        return var


def _vars(node):
    from .ast import walk

    return [n for n in walk(node) if isinstance(n, Var)]


def parse_formula(text: str, sorts: dict | None = None):
    """Parse one formula; raises :class:`SyntaxErrorAt` / :class:`SortError`.

    ``sorts`` gives the sorts of free names that differ from the naming convention.
    """
    return Parser(text, sorts).parse_formula_top()


def parse_term(text: str, sorts: dict | None = None):
    p = Parser(text, sorts)
    t = p.term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    if p.pending:
        raise p.error("lam terms are only allowed inside formulas")
    return t


def parse_definition(text: str, sorts: dict | None = None) -> Definition:
    """Parse a standalone definition: ``lam f. lam n. term`` or ``(f, n) term``."""
    p = Parser(text, sorts)
    start = p.tok
    if p.at("lam"):
        params = []
        while p.at("lam"):
            p.i += 1
            v = p.param()
            p.expect(".")
            p.scope[v.name] = v.sort
            params.append(v)
    else:
        p.expect("(")
        params = [p.param()]
        while p.at(","):
            p.i += 1
            params.append(p.param())
        p.expect(")")
        for v in params:
            p.scope[v.name] = v.sort
    rhs = p.term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    if p.pending:
        raise p.error("lam inside a definition body is not supported")
    return p.make_definition(tuple(params), rhs, start)


def split_corpus(text: str) -> list[tuple[int, str]]:
    """Split a formula file into ``(line_number, source)`` items.

    One formula per line, or several separated by ``;``.  Blank lines and
    ``#`` comments are skipped.
    """
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for chunk in line.split(";"):
            if chunk.strip():
                items.append((lineno, chunk.strip()))
    return items
