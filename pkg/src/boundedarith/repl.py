"""Line-oriented REPL: formulas or terms are evaluated, ``:`` lines are commands."""

from __future__ import annotations

import sys
from dataclasses import replace
from typing import TextIO

from .errors import WorkbenchError
from .evaluator import Model, parse_binding
from .syntax import classify_alternation, parse_formula

HELP = """\
  <formula or term>        evaluate in the current bindings
  :let name = sort:payload bind a name (sorts: num, unary, fun, fundef, op)
  :model key=value,...     set ceiling, threshold, defbudget, depthbudget
  :classify <formula>      quantifier-alternation class
  :env                     list bindings
  :help                    this text
  :quit                    leave"""


class Repl:
    def __init__(self, cfg, stdin: TextIO | None = None, stdout: TextIO | None = None, prompt: str | None = None):
        self.cfg = cfg
        self.model: Model = cfg.model
        self.env: dict = {}
        self.stdin = stdin or sys.stdin
        self.stdout = stdout or sys.stdout
        self.prompt = prompt if prompt is not None else ("bqa> " if self.stdin.isatty() else "")

    def say(self, text: str):
        self.stdout.write(text + "\n")

    def run(self) -> int:
        while True:
            if self.prompt:
                self.stdout.write(self.prompt)
                self.stdout.flush()
            line = self.stdin.readline()
            if not line:
                return 0
            if self.handle(line.strip()) is False:
                return 0

    def handle(self, line: str):
        """Process one line; returns False to stop."""
        if not line or line.startswith("#"):
            return True
        try:
            if line.startswith(":"):
                return self.command(line)
            from .cli import evaluate_source
            _, value = evaluate_source(line, self.env, self.model)
            self.say(str(value).lower() if isinstance(value, bool) else str(value))
        except (WorkbenchError, ValueError) as exc:
            self.say(f"error: {type(exc).__name__}: {exc}")
        return True

    def command(self, line: str):
        name, _, rest = line[1:].partition(" ")
        rest = rest.strip()
        if name in ("quit", "q", "exit"):
            return False
        if name == "help":
            self.say(HELP)
        elif name == "let":
            key, value = parse_binding(rest, self.env, self.model)
            self.env[key] = value
            self.say(f"{key} bound")
        elif name == "model":
            if rest:
                from .cli import model_arg
                self.model = replace(self.model, **model_arg(rest))
            m = self.model
            self.say(f"ceiling={m.ceiling} threshold={m.threshold} defbudget={m.def_budget} depthbudget={m.depth_budget}")
        elif name == "classify":
            self.say(str(classify_alternation(parse_formula(rest))))
        elif name == "env":
            for key in sorted(self.env):
                self.say(f"{key} = {self.env[key]!r}")
        else:
            self.say(f"error: unknown command :{name} (try :help)")
        return True
