"""Command-line entry point ``bqa``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TextIO

from .errors import SyntaxErrorAt, WorkbenchError
from .evaluator import Model, env_sorts, eval_formula, eval_term, parse_bindings
from .syntax import classify_alternation, parse_formula, parse_term, split_corpus
from .towerutil import log_star, tower_eval


@dataclass
class RunConfig:
    model: Model = field(default_factory=Model)
    N: int = 2
    t: int = 1
    max_level: int = 2
    precision: int = 10
    json: bool = False
    seed: int = 0
    timing: bool = False


class Output:
    """One record per result, as text lines or newline-delimited JSON."""

    def __init__(self, stream: TextIO, json_mode: bool = False, timing: bool = False):
        self.stream = stream
        self.json = json_mode
        self.timing = timing
        self.failed = False

    def record(self, kind: str, text: str, /, **fields):
        if kind == "error" or fields.get("status") == "FAIL":
            self.failed = True
        if self.json:
            self.stream.write(json.dumps({"kind": kind, **fields}, sort_keys=True, default=str) + "\n")
        else:
            self.stream.write(text + "\n")

    def info(self, demo: str, text: str, **fields):
        self.record("info", f"  {text}", demo=demo, text=text, **fields)

    def check(self, demo: str, name: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        self.record("check", f"{status} {demo}: {name}{suffix}", demo=demo, check=name, status=status, detail=detail)

    def error(self, exc: BaseException, **fields):
        name = type(exc).__name__
        where = f"line {fields['line']}: " if "line" in fields else ""
        self.record("error", f"error: {where}{name}: {exc}", error=name, message=str(exc), **fields)


def _parse_kv(text: str, keys: dict) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise argparse.ArgumentTypeError(f"expected key=value, got {part!r}")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in keys:
            raise argparse.ArgumentTypeError(f"unknown key {k!r}; expected one of {', '.join(keys)}")
        try:
            value = int(v)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{k} needs an integer, got {v!r}") from None
        if value <= 0:
            raise argparse.ArgumentTypeError(f"{k} must be positive")
        out[keys[k]] = value
    return out


MAX_PRINT_BITS = 12000
MODEL_KEYS = {"ceiling": "ceiling", "threshold": "threshold", "defbudget": "def_budget", "depthbudget": "depth_budget"}
UNIVERSE_KEYS = {"N": "N", "t": "t", "maxlevel": "max_level"}


def model_arg(text: str) -> dict:
    return _parse_kv(text, MODEL_KEYS)


def universe_arg(text: str) -> dict:
    return _parse_kv(text, UNIVERSE_KEYS)


def make_config(args) -> RunConfig:
    m = dict(ceiling=1 << 16, threshold=1, def_budget=4096, depth_budget=64)
    m.update(args.model or {})
    try:
        model = Model(**m)
    except ValueError as exc:
        raise SystemExit(f"bqa: error: --model: {exc}") from None
    u = dict(N=2, t=1, max_level=2)
    u.update(args.universe or {})
    if u["t"] > u["N"]:
        raise SystemExit("bqa: error: --universe: need t <= N")
    if args.precision <= 0:
        raise SystemExit("bqa: error: --precision must be positive")
    return RunConfig(model, u["N"], u["t"], u["max_level"], args.precision, args.json, args.seed, args.timing)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


# ------------------------------------------------------------------ commands
def evaluate_source(src: str, env: dict, model: Model):
    """A formula's truth value, or a term's value when the source is not a formula."""
    sorts = env_sorts(env)
    try:
        f = parse_formula(src, sorts)
    except SyntaxErrorAt as formula_error:
        try:
            t = parse_term(src, sorts)
        except SyntaxErrorAt:
            raise formula_error from None
        return "term", eval_term(t, env, model)
    return "formula", eval_formula(f, env, model)


def cmd_eval(args, cfg: RunConfig, out: Output):
    env = {}
    if args.bindings:
        try:
            env = parse_bindings(_read(args.bindings), cfg.model)
        except (WorkbenchError, OSError) as exc:
            out.error(exc, file=args.bindings)
            return
    for index, (lineno, src) in enumerate(split_corpus(_read(args.formulas))):
        start = time.perf_counter()
        try:
            what, value = evaluate_source(src, env, cfg.model)
        except WorkbenchError as exc:
            out.error(exc, line=lineno, index=index, source=src)
            continue
        extra = {}
        text_value = str(value).lower() if isinstance(value, bool) else str(value)
        text = f"{lineno}: {text_value}"
        if cfg.timing:
            extra["ms"] = round(1000 * (time.perf_counter() - start), 3)
            text += f"  [{extra['ms']} ms]"
        out.record("eval", text, line=lineno, index=index, source=src, what=what, value=value, **extra)


def _split_label(src: str):
    if "::" in src:
        label, formula = src.split("::", 1)
        return label.strip(), formula.strip()
    return None, src


def cmd_classify(args, cfg: RunConfig, out: Output):
    for index, (lineno, src) in enumerate(split_corpus(_read(args.formulas))):
        label, formula = _split_label(src)
        try:
            cls = str(classify_alternation(parse_formula(formula)))
        except WorkbenchError as exc:
            out.error(exc, line=lineno, index=index, source=formula)
            continue
        fields = dict(line=lineno, index=index, source=formula, cls=cls)
        text = f"{lineno}: {cls}"
        if label is not None:
            status = "PASS" if label == cls else "FAIL"
            fields.update(expected=label, status=status)
            text = f"{status} {lineno}: {cls}" + ("" if label == cls else f" (expected {label})")
        out.record("classify", text, **fields)


def cmd_demo(args, cfg: RunConfig, out: Output):
    from .demos import DEMOS, run_demo
    names = list(DEMOS) if args.name == "all" else [args.name]
    for name in names:
        run_demo(name, cfg, out)


def cmd_tower(args, cfg: RunConfig, out: Output):
    try:
        value = tower_eval(args.base, args.height, args.top, args.max_bits)
    except WorkbenchError as exc:
        out.error(exc, base=args.base, height=args.height, top=args.top)
        return
    bits = value.bit_length()
    # very large values are reported by size; decimal conversion of huge ints is capped by Python
    shown = str(value) if bits <= MAX_PRINT_BITS else None
    text = f"{args.base}_{args.height}^{args.top} = " + (shown if shown is not None else f"<{bits}-bit number>")
    out.record("tower", text, base=args.base, height=args.height, top=args.top, value=shown, bits=bits)


def cmd_logstar(args, cfg: RunConfig, out: Output):
    try:
        value = log_star(args.n)
    except (WorkbenchError, ValueError) as exc:
        out.error(exc, n=args.n)
        return
    out.record("logstar", f"log*({args.n}) = {value}", n=args.n, value=value)


def cmd_comprehension(args, cfg: RunConfig, out: Output):
    from .comprehension import formula_phi, parse_bits, run_scheme
    try:
        P = parse_bits(_read(args.oracle)) if args.oracle else ()
        phi = formula_phi(args.formula, args.scheme, args.wmax, cfg.model)
        table = run_scheme(args.scheme, phi, args.wmax, P)
    except (WorkbenchError, ValueError, OSError) as exc:
        out.error(exc, scheme=args.scheme)
        return
    values = [int(v) for v in table]
    out.record("comprehension", f"{args.scheme}: " + " ".join(map(str, values)),
               scheme=args.scheme, formula=args.formula, wmax=args.wmax, table=values)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def cmd_function(args, cfg: RunConfig, out: Output):
    from .analysis import (
        cf_apply_rational, cf_integrate, cf_sup, format_real, ivt_localize, load_function,
        real_approx, validate_cf,
    )
    from .analysis.reals import from_approximator
    try:
        F = validate_cf(load_function(args.file))
        t = cfg.precision
        if args.action == "at":
            x = _fraction(args.args[0])
            value = from_approximator(lambda k: cf_apply_rational(F, [x], k))
            out.record("function", f"f({x}) = {format_real(value, t)}", action="at", x=str(x),
                       value=str(real_approx(value, t)), error=f"2^-{t}")
        elif args.action in ("sup", "integrate"):
            lo, hi = _fraction(args.args[0]), _fraction(args.args[1])
            op = cf_sup if args.action == "sup" else cf_integrate
            value = op(F, [(lo, hi)])
            out.record("function", f"{args.action}[{lo}, {hi}] = {format_real(value, t)}", action=args.action,
                       lo=str(lo), hi=str(hi), value=str(real_approx(value, t)), error=f"2^-{t}")
        elif args.action == "ivt":
            n = int(args.args[0])
            a, b = ivt_localize(F, n)
            out.record("function", f"|f| < 1/{n} on ({a}, {b})", action="ivt", n=n, a=str(a), b=str(b))
    except (WorkbenchError, ValueError, OSError, IndexError, argparse.ArgumentTypeError) as exc:
        out.error(exc, file=args.file)


def cmd_repl(args, cfg: RunConfig, out: Output):
    from .repl import Repl
    Repl(cfg, sys.stdin, out.stream).run()


# --------------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", type=model_arg, metavar="ceiling=..,threshold=..,defbudget=..,depthbudget=..")
    common.add_argument("--universe", type=universe_arg, metavar="N=..,t=..,maxlevel=..")
    common.add_argument("--precision", type=int, default=10, metavar="T", help="precision t (error 2^-t)")
    common.add_argument("--json", action="store_true", help="newline-delimited JSON records")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="add wall-clock timings (breaks byte-identical output)")

    p = argparse.ArgumentParser(prog="bqa", description="Workbench for bounded-quantifier arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate formulas or terms, one per line")
    s.add_argument("formulas", help="formula file ('-' for stdin)")
    s.add_argument("--bindings", "-b", help="file of name=sort:payload lines")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("classify", parents=[common], help="quantifier-alternation class per formula")
    s.add_argument("formulas", help="formula file; 'LABEL :: formula' lines are checked")
    s.set_defaults(func=cmd_classify)

    from .demos import DEMOS
    s = sub.add_parser("demo", parents=[common], help="self-checking demonstrations")
    s.add_argument("name", choices=[*DEMOS, "all"])
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("tower", parents=[common], help="a_b^c")
    s.add_argument("base", type=int)
    s.add_argument("height", type=int)
    s.add_argument("top", type=int)
    s.add_argument("--max-bits", type=int, default=1 << 20)
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("logstar", parents=[common], help="iterated binary logarithm")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_logstar)

    s = sub.add_parser("comprehension", parents=[common], help="counting / pspace / exptime tables")
    s.add_argument("scheme", choices=["counting", "pspace", "exptime"])
    s.add_argument("formula", help="bounded formula in v (counting) or w and S (pspace, exptime)")
    s.add_argument("--oracle", help="bit-string file for P")
    s.add_argument("--wmax", type=int, default=16)
    s.set_defaults(func=cmd_comprehension)

    s = sub.add_parser("function", parents=[common], help="continuous function from a JSON table")
    s.add_argument("file")
    s.add_argument("action", choices=["at", "sup", "integrate", "ivt"])
    s.add_argument("args", nargs="*", help="x | lo hi | n")
    s.set_defaults(func=cmd_function)

    s = sub.add_parser("repl", parents=[common], help="interactive session")
    s.set_defaults(func=cmd_repl)
    return p


def main(argv=None, stdout: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = make_config(args)
    out = Output(stdout or sys.stdout, cfg.json, cfg.timing)
    try:
        args.func(args, cfg, out)
    except OSError as exc:
        out.error(exc)
    return 1 if out.failed else 0


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
