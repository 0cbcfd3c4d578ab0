"""Execution of parsed scripts into reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable

from . import checks
from .chern import (
    BundleSymbol,
    a_c1,
    a_chern_character,
    azumaya,
    chern_character,
    dual_symbol,
    hom_a_chern,
    lambda_c1,
    line,
    module,
    tangent,
    todd,
)
from .chow import BaseClass, GradedClass, grade, invert_sqrt_unit, invert_unit, pushforward
from .script import (
    Assume,
    BinOp,
    Call,
    Check,
    Declare,
    Eval,
    Neg,
    Num,
    Print,
    Script,
    Span,
    Sweep,
    Tuple,
    Var,
    render_args,
    render_expr,
)

SCHEMA = 1


class ScriptRuntimeError(RuntimeError):
    pass


@dataclass
class RunOptions:
    seed: int = 0
    fail_fast: bool = False
    tol: float = 1e-9
    dims_max: int = checks.DEFAULT_DIMS_MAX


@dataclass
class Entry:
    id: str
    check: str
    parameters: dict
    verdict: str
    payload: Any
    duration: float

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "check": self.check,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "payload": self.payload,
            "duration": self.duration,
        }


@dataclass
class Report:
    entries: list = field(default_factory=list)
    output: list = field(default_factory=list)
    seed: int = 0
    aborted: bool = False

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries) and not self.aborted

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "seed": self.seed,
            "ok": self.ok,
            "entries": [e.to_json() for e in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def summary(self) -> str:
        lines = []
        for e in self.entries:
            params = ", ".join(f"{k}={v}" for k, v in e.parameters.items())
            lines.append(f"[{e.verdict.upper():4}] {e.id} {e.check}({params})  {e.duration * 1000:.1f} ms")
            if not e.passed and isinstance(e.payload, dict) and "error" in e.payload:
                lines.append(f"       {e.payload['error']}")
        passed = sum(e.passed for e in self.entries)
        lines.append(f"{passed}/{len(self.entries)} passed" + (" (stopped early)" if self.aborted else ""))
        return "\n".join(lines)


def _jsonable(value) -> Any:
    if isinstance(value, (GradedClass, BaseClass, BundleSymbol)):
        return value.to_json()
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, str):
        return value
    raise ScriptRuntimeError(f"cannot serialize {type(value).__name__}")


def _show(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, tuple):
        return "(" + ", ".join(_show(v) for v in value) + ")"
    return str(value)


class _Scope:
    def __init__(self, parent: "_Scope | None" = None):
        self.parent = parent
        self.values: dict = {}

    def lookup(self, name: str):
        scope = self
        while scope is not None:
            if name in scope.values:
                return scope.values[name]
            scope = scope.parent
        raise ScriptRuntimeError(f"{name!r} is not defined")

    def bindings(self) -> dict:
        out = {} if self.parent is None else self.parent.bindings()
        out.update({k: v for k, v in self.values.items() if isinstance(v, Fraction)})
        return out


# ---------------------------------------------------------------------------
# expression evaluation


def _symbol(v, what="argument") -> BundleSymbol:
    if not isinstance(v, BundleSymbol):
        raise ScriptRuntimeError(f"{what} must be a bundle symbol, got {_show(v)}")
    return v


def _klass(v) -> GradedClass:
    if isinstance(v, Fraction):
        return GradedClass(v)
    if not isinstance(v, GradedClass):
        raise ScriptRuntimeError(f"expected a class, got {_show(v)}")
    return v


def _integer(v, what="value") -> int:
    if not isinstance(v, Fraction) or v.denominator != 1:
        raise ScriptRuntimeError(f"{what} must be an integer, got {_show(v)}")
    return int(v)


FUNCTIONS: dict[str, Callable] = {
    "ch": lambda b: chern_character(_symbol(b)),
    "td": lambda b: todd(_symbol(b)),
    "c1": lambda b: _symbol(b).c1,
    "c2": lambda b: _symbol(b).c2,
    "rank": lambda b: Fraction(_symbol(b).rank),
    "dual": lambda b: dual_symbol(_symbol(b)),
    "hom": lambda m, n, a: hom_a_chern(_symbol(m), _symbol(n), _symbol(a)),
    "ach": lambda m, a: a_chern_character(_symbol(m), _symbol(a)),
    "ac1": lambda m, a: a_c1(_symbol(m), _symbol(a)),
    "inv": lambda x: invert_unit(_klass(x)),
    "invsqrt": lambda x: invert_sqrt_unit(_klass(x)),
    "grade": lambda x, k: grade(_klass(x), _integer(k, "degree")),
    "push": lambda x: pushforward(_klass(x)),
    "lambda": lambda e, t, g=Fraction(0): lambda_c1(_symbol(e), _symbol(t), g),
}


def _binop(op: str, a, b):
    both_num = isinstance(a, Fraction) and isinstance(b, Fraction)
    if op == "^":
        k = _integer(b, "exponent")
        if both_num:
            return a**k
        if k < 0:
            raise ScriptRuntimeError("negative powers of classes: use inv()")
        out = GradedClass(1)
        for _ in range(k):
            out = out * _klass(a)
        return out
    if op == "/":
        if not isinstance(b, Fraction):
            raise ScriptRuntimeError("division only by rational numbers")
        if b == 0:
            raise ScriptRuntimeError("division by zero")
        return a / b
    if isinstance(a, BaseClass) or isinstance(b, BaseClass):
        if op == "*":
            if isinstance(a, Fraction):
                return b * a
            if isinstance(b, Fraction):
                return a * b
            raise ScriptRuntimeError("base classes can only be scaled by rationals")
        if not (isinstance(a, BaseClass) and isinstance(b, BaseClass)):
            raise ScriptRuntimeError("cannot mix base classes with other values")
        return a + b if op == "+" else a - b
    if both_num:
        return {"+": a + b, "-": a - b, "*": a * b}[op]
    x, y = _klass(a), _klass(b)
    return {"+": x + y, "-": x - y, "*": x * y}[op]


def evaluate(e, scope: _Scope):
    if isinstance(e, Num):
        return Fraction(e.value)
    if isinstance(e, Var):
        return scope.lookup(e.name)
    if isinstance(e, Neg):
        v = evaluate(e.operand, scope)
        if isinstance(v, BundleSymbol):
            raise ScriptRuntimeError("cannot negate a bundle symbol")
        return -v
    if isinstance(e, BinOp):
        a, b = evaluate(e.left, scope), evaluate(e.right, scope)
        if isinstance(a, BundleSymbol) or isinstance(b, BundleSymbol):
            raise ScriptRuntimeError("arithmetic on bundle symbols: use ch(), c1(), ...")
        return _binop(e.op, a, b)
    if isinstance(e, Tuple):
        return tuple(evaluate(x, scope) for x in e.items)
    if isinstance(e, Call):
        f = FUNCTIONS.get(e.func)
        if f is None:
            raise ScriptRuntimeError(f"unknown function {e.func!r}")
        pos = [evaluate(a.value, scope) for a in e.args if a.name is None]
        kw = {a.name: evaluate(a.value, scope) for a in e.args if a.name is not None}
        try:
            return f(*pos, **kw)
        except TypeError as exc:
            raise ScriptRuntimeError(f"bad arguments to {e.func}(): {exc}") from None
    raise ScriptRuntimeError(f"cannot evaluate {e!r}")


# ---------------------------------------------------------------------------
# checks


def _check_args(args, scope: _Scope, keyword_first=False):
    pos, kw = [], {}
    for i, a in enumerate(args):
        if a.name is not None:
            kw[a.name] = evaluate(a.value, scope)
        elif i == 0 and keyword_first and isinstance(a.value, Var):
            pos.append(a.value.name)
        else:
            pos.append(evaluate(a.value, scope))
    return pos, kw


def _dims(v):
    if isinstance(v, tuple):
        return tuple(_integer(x, "dimension") for x in v)
    return (_integer(v, "dimension"),)


def run_check(stmt: Check, scope: _Scope, options: RunOptions) -> tuple[bool, Any]:
    name = stmt.name
    if name == "isometry":
        pos, kw = _check_args(stmt.args, scope, keyword_first=True)
        if len(pos) != 1:
            raise ScriptRuntimeError("isometry(lemma, dims=..., seeds=...)")
        dims = _dims(kw["dims"]) if "dims" in kw else None
        seeds = _integer(kw.get("seeds", Fraction(100)), "seeds")
        tol = float(kw["tol"]) if "tol" in kw else options.tol
        return checks.isometry(
            pos[0], dims, seeds, seed0=options.seed, tol=tol, dims_max=options.dims_max
        )
    pos, kw = _check_args(stmt.args, scope)
    if name == "pairing":
        if len(pos) != 4:
            raise ScriptRuntimeError("pairing(M, N, A, T, g=...)")
        m, n, a, t = (_symbol(x) for x in pos)
        return checks.pairing(m, n, a, t, kw.get("g", Fraction(0)))
    if name == "ch_inverse_sqrt":
        return checks.ch_inverse_sqrt(_symbol(pos[0]))
    if name == "a_c1":
        return checks.a_c1_formula(_symbol(pos[0]), _symbol(pos[1]))
    if name == "azumaya_ch":
        return checks.azumaya_ch(_symbol(pos[0]))
    if name == "splitting":
        return checks.splitting(_integer(kw.get("seeds", Fraction(50)), "seeds"), options.seed)
    if name == "ring":
        return checks.ring(_integer(kw.get("seeds", Fraction(200)), "seeds"), options.seed)
    raise ScriptRuntimeError(f"unknown check {name!r}")


CHECK_NAMES = ("pairing", "isometry", "ch_inverse_sqrt", "a_c1", "azumaya_ch", "splitting", "ring")


# ---------------------------------------------------------------------------
# statements


class _Abort(Exception):
    pass


class _Executor:
    def __init__(self, options: RunOptions):
        self.options = options
        self.report = Report(seed=options.seed)
        self.counter = 0

    def record(self, check: str, params: dict, fn: Callable[[], tuple[bool, Any]]):
        self.counter += 1
        start = time.perf_counter()
        try:
            ok, payload = fn()
        except Exception as exc:  # runtime failures become failed entries
            ok, payload = False, {"error": f"{type(exc).__name__}: {exc}"}
        entry = Entry(
            f"{check}#{self.counter}",
            check,
            params,
            "pass" if ok else "fail",
            payload,
            time.perf_counter() - start,
        )
        self.report.entries.append(entry)
        if not ok and self.options.fail_fast:
            self.report.aborted = True
            raise _Abort

    def fail(self, check: str, params: dict, exc: Exception):
        self.record(check, params, lambda: (False, {"error": f"{type(exc).__name__}: {exc}"}))

    def run(self, stmts, scope: _Scope):
        for s in stmts:
            self.statement(s, scope)

    def statement(self, s, scope: _Scope):
        params = {k: _show(v) for k, v in scope.bindings().items()}
        if isinstance(s, Declare):
            try:
                scope.values[s.name] = self.declare(s, scope)
            except Exception as exc:
                scope.values[s.name] = None
                self.fail("declare", {**params, "name": s.name}, exc)
        elif isinstance(s, Assume):
            relation = f"{render_expr(s.lhs)} = {render_expr(s.rhs)}"
            try:
                self.assume(s, scope)
            except Exception as exc:
                self.fail("assume", {**params, "relation": relation}, exc)
        elif isinstance(s, Check):
            self.record(s.name, {**params, "args": render_args(s.args)}, lambda: run_check(s, scope, self.options))
        elif isinstance(s, Eval):
            self.record("eval", {**params, "expr": render_expr(s.expr)},
                        lambda: (True, _jsonable(evaluate(s.expr, scope))))
        elif isinstance(s, Print):
            try:
                text = _show(evaluate(s.target, scope))
            except Exception as exc:
                text = f"<error: {exc}>"
            self.report.output.append(f"{render_expr(s.target)} = {text}")
        elif isinstance(s, Sweep):
            for value in self.sweep_values(s, scope):
                inner = _Scope(scope)
                inner.values[s.var] = value
                self.run(s.body, inner)

    def declare(self, s: Declare, scope: _Scope) -> BundleSymbol:
        if s.flavor == "line":
            return line(s.name)
        if s.flavor == "tangent":
            return tangent(s.name)
        rank = _integer(evaluate(s.rank, scope), "rank")
        if s.flavor == "azumaya":
            return azumaya(s.name, rank)
        over = _symbol(scope.lookup(s.over), "over") if s.over else None
        return module(s.name, rank, over)

    def assume(self, s: Assume, scope: _Scope):
        lhs, rhs = s.lhs, s.rhs
        if isinstance(lhs, Call) and lhs.func == "c1" and isinstance(rhs, Num) and rhs.value == 0:
            if len(lhs.args) != 1 or not isinstance(lhs.args[0].value, Var):
                raise ScriptRuntimeError("assume c1(X) = 0 needs a symbol name")
            name = lhs.args[0].value.name
            sym = _symbol(scope.lookup(name))
            # shadow rather than overwrite, so sweep bodies stay independent
            scope.values[name] = replace(sym, c1=GradedClass())
        elif isinstance(lhs, Call) and lhs.func == "rank":
            left, right = evaluate(lhs, scope), evaluate(rhs, scope)
            if left != right:
                raise ScriptRuntimeError(f"assumption violated: {_show(left)} != {_show(right)}")
        else:
            raise ScriptRuntimeError("unsupported relation; use c1(X) = 0 or rank(X) = ...")

    def sweep_values(self, s: Sweep, scope: _Scope) -> list:
        if isinstance(s.over, Span):
            lo = _integer(evaluate(s.over.start, scope), "range start")
            hi = _integer(evaluate(s.over.stop, scope), "range end")
            return [Fraction(v) for v in range(lo, hi + 1)]
        return [evaluate(x, scope) for x in s.over.items]


def execute(script: Script, options: RunOptions | None = None) -> Report:
    ex = _Executor(options or RunOptions())
    try:
        ex.run(script.statements, _Scope())
    except _Abort:
        pass
    return ex.report
