"""Lexer, parser and renderer for ``.akv`` verification scripts.

Grammar (LL(1); ``arg`` is left-factored as ``expr ['=' expr]``)::

    script   := stmt*
    stmt     := 'azumaya' NAME 'rank' expr
              | 'module' NAME ['over' NAME] 'rank' expr
              | 'line' NAME
              | 'tangent' NAME
              | 'assume' expr '=' expr
              | 'check' NAME '(' [args] ')'
              | 'eval' expr
              | 'sweep' NAME 'in' range '{' stmt* '}'
              | 'print' expr
    range    := '[' expr (',' expr)* ']' | expr '..' expr
    args     := arg (',' arg)*
    arg      := NAME '=' expr | expr
    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ['^' unary]
    atom     := NUMBER | NAME ['(' [args] ')'] | 'rank' '(' args ')'
              | '(' expr (',' expr)* ')'

Whitespace is insignificant and ``#`` starts a comment running to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

KEYWORDS = frozenset(
    ["azumaya", "module", "line", "tangent", "over", "rank", "assume", "check", "eval", "sweep", "print"]
)
DECLARE_KEYWORDS = ("azumaya", "module", "line", "tangent")


class ScriptSyntaxError(SyntaxError):
    def __init__(self, message: str, line: int, col: int, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        text = f"{line}:{col}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)

    def __str__(self):
        return self.args[0]


class UseBeforeDeclare(NameError):
    def __init__(self, name: str, line: int, col: int, message: str | None = None):
        super().__init__(f"{line}:{col}: {message or f'{name!r} used before declaration'}")
        self.name = name
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# tokens

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\.\.|[(){}\[\],=+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, NUMBER, KEYWORD, OP, EOF
    text: str
    line: int
    col: int

    def describe(self) -> str:
        return "end of input" if self.kind == "EOF" else repr(self.text)


def tokenize(source: str) -> Iterator[Token]:
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise ScriptSyntaxError(f"unexpected character {source[pos]!r}", line, col)
        kind, text = m.lastgroup, m.group()
        if kind == "number":
            yield Token("NUMBER", text, line, col)
        elif kind == "name":
            yield Token("KEYWORD" if text in KEYWORDS else "NAME", text, line, col)
        elif kind == "op":
            yield Token("OP", text, line, col)
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    yield Token("EOF", "", line, pos - line_start + 1)


# ---------------------------------------------------------------------------
# AST

_pos = dict(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Arg:
    name: Optional[str]
    value: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple = ()
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Tuple:
    items: tuple
    pos: tuple = field(**_pos)


Expr = Union[Num, Var, Neg, BinOp, Call, Tuple]


@dataclass(frozen=True)
class Declare:
    flavor: str
    name: str
    rank: Optional[Expr] = None
    over: Optional[str] = None
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Assume:
    lhs: Expr
    rhs: Expr
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Check:
    name: str
    args: tuple = ()
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Eval:
    expr: Expr
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Span:
    start: Expr
    stop: Expr


@dataclass(frozen=True)
class Values:
    items: tuple


@dataclass(frozen=True)
class Sweep:
    var: str
    over: Union[Span, Values]
    body: tuple
    pos: tuple = field(**_pos)


@dataclass(frozen=True)
class Print:
    target: Expr
    pos: tuple = field(**_pos)


Statement = Union[Declare, Assume, Check, Eval, Sweep, Print]


@dataclass(frozen=True)
class Script:
    statements: tuple


# ---------------------------------------------------------------------------
# parser

_STMT_START = {*DECLARE_KEYWORDS, "assume", "check", "eval", "sweep", "print"}
_EXPR_START = {"NUMBER", "NAME", "'rank'", "'('", "'-'"}


class Parser:
    def __init__(self, source: str):
        self.tokens = list(tokenize(source))
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _is(self, text: str) -> bool:
        return self.tok.kind in ("OP", "KEYWORD") and self.tok.text == text

    def _fail(self, expected, what: str | None = None):
        t = self.tok
        raise ScriptSyntaxError(what or f"unexpected {t.describe()}", t.line, t.col, expected)

    def _advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def _expect(self, text: str) -> Token:
        if not self._is(text):
            self._fail({repr(text)})
        return self._advance()

    def _name(self) -> Token:
        if self.tok.kind != "NAME":
            self._fail({"NAME"})
        return self._advance()

    def parse(self) -> Script:
        stmts = self._block(until="EOF")
        return Script(tuple(stmts))

    def _block(self, until: str) -> list:
        out = []
        while True:
            t = self.tok
            if until == "EOF" and t.kind == "EOF":
                return out
            if until == "}" and self._is("}"):
                return out
            if t.kind == "KEYWORD" and t.text in _STMT_START:
                out.append(self._statement())
            else:
                self._fail({repr(k) for k in _STMT_START} | ({"'}'"} if until == "}" else {"end of input"}))

    def _statement(self) -> Statement:
        t = self._advance()
        pos = (t.line, t.col)
        kw = t.text
        if kw == "azumaya":
            name = self._name().text
            self._expect("rank")
            return Declare("azumaya", name, self._expr(), None, pos)
        if kw == "module":
            name = self._name().text
            over = None
            if self._is("over"):
                self._advance()
                over = self._name().text
            elif not self._is("rank"):
                self._fail({"'over'", "'rank'"})
            self._expect("rank")
            return Declare("module", name, self._expr(), over, pos)
        if kw in ("line", "tangent"):
            return Declare(kw, self._name().text, None, None, pos)
        if kw == "assume":
            lhs = self._expr()
            self._expect("=")
            return Assume(lhs, self._expr(), pos)
        if kw == "check":
            name = self._name().text
            self._expect("(")
            args = self._args(")")
            self._expect(")")
            return Check(name, args, pos)
        if kw == "eval":
            return Eval(self._expr(), pos)
        if kw == "print":
            return Print(self._expr(), pos)
        # sweep
        var = self._name().text
        if not (self.tok.kind == "NAME" and self.tok.text == "in"):
            self._fail({"'in'"})
        self._advance()
        over = self._range()
        self._expect("{")
        body = self._block(until="}")
        self._expect("}")
        return Sweep(var, over, tuple(body), pos)

    def _range(self):
        if self._is("["):
            self._advance()
            items = [self._expr()]
            while self._is(","):
                self._advance()
                items.append(self._expr())
            self._expect("]")
            return Values(tuple(items))
        start = self._expr()
        self._expect("..")
        return Span(start, self._expr())

    def _args(self, closer: str) -> tuple:
        if self._is(closer):
            return ()
        out = [self._arg()]
        while self._is(","):
            self._advance()
            out.append(self._arg())
        if not self._is(closer):
            self._fail({"','", repr(closer)})
        return tuple(out)

    def _arg(self) -> Arg:
        value = self._expr()
        if self._is("="):
            if not isinstance(value, Var):
                self._fail(set(), "only a plain name may be used as an argument name")
            self._advance()
            return Arg(value.name, self._expr())
        return Arg(None, value)

    def _expr(self) -> Expr:
        left = self._term()
        while self._is("+") or self._is("-"):
            op = self._advance()
            left = BinOp(op.text, left, self._term(), (op.line, op.col))
        return left

    def _term(self) -> Expr:
        left = self._unary()
        while self._is("*") or self._is("/"):
            op = self._advance()
            left = BinOp(op.text, left, self._unary(), (op.line, op.col))
        return left

    def _unary(self) -> Expr:
        if self._is("-"):
            t = self._advance()
            return Neg(self._unary(), (t.line, t.col))
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._is("^"):
            op = self._advance()
            return BinOp("^", base, self._unary(), (op.line, op.col))
        return base

    def _atom(self) -> Expr:
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "NUMBER":
            self._advance()
            return Num(int(t.text), pos)
        if t.kind == "NAME" or self._is("rank"):
            self._advance()
            if self._is("("):
                self._advance()
                args = self._args(")")
                self._expect(")")
                return Call(t.text, args, pos)
            if t.text == "rank":
                self._fail({"'('"})
            return Var(t.text, pos)
        if self._is("("):
            self._advance()
            items = [self._expr()]
            while self._is(","):
                self._advance()
                items.append(self._expr())
            self._expect(")")
            return items[0] if len(items) == 1 else Tuple(tuple(items), pos)
        self._fail(_EXPR_START)


def parse(source: str) -> Script:
    return Parser(source).parse()


# ---------------------------------------------------------------------------
# rendering


def render_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"-{render_expr(e.operand)}"
    if isinstance(e, BinOp):
        left = render_expr(e.left)
        if e.op == "^" and isinstance(e.left, Neg):
            left = f"({left})"
        return f"({left} {e.op} {render_expr(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}({render_args(e.args)})"
    if isinstance(e, Tuple):
        return f"({', '.join(render_expr(x) for x in e.items)})"
    raise TypeError(f"not an expression: {e!r}")


def render_args(args) -> str:
    return ", ".join(
        render_expr(a.value) if a.name is None else f"{a.name}={render_expr(a.value)}" for a in args
    )


def _render_stmt(s: Statement, indent: int) -> list:
    pad = "  " * indent
    if isinstance(s, Declare):
        if s.flavor == "azumaya":
            return [f"{pad}azumaya {s.name} rank {render_expr(s.rank)}"]
        if s.flavor == "module":
            over = f" over {s.over}" if s.over else ""
            return [f"{pad}module {s.name}{over} rank {render_expr(s.rank)}"]
        return [f"{pad}{s.flavor} {s.name}"]
    if isinstance(s, Assume):
        return [f"{pad}assume {render_expr(s.lhs)} = {render_expr(s.rhs)}"]
    if isinstance(s, Check):
        return [f"{pad}check {s.name}({render_args(s.args)})"]
    if isinstance(s, Eval):
        return [f"{pad}eval {render_expr(s.expr)}"]
    if isinstance(s, Print):
        return [f"{pad}print {render_expr(s.target)}"]
    if isinstance(s, Sweep):
        if isinstance(s.over, Span):
            rng = f"{render_expr(s.over.start)} .. {render_expr(s.over.stop)}"
        else:
            rng = "[" + ", ".join(render_expr(x) for x in s.over.items) + "]"
        lines = [f"{pad}sweep {s.var} in {rng} {{"]
        for inner in s.body:
            lines += _render_stmt(inner, indent + 1)
        return lines + [f"{pad}}}"]
    raise TypeError(f"not a statement: {s!r}")


def render(script: Script) -> str:
    lines = []
    for s in script.statements:
        lines += _render_stmt(s, 0)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# name resolution

# positional slots that hold a bare keyword rather than a declared name
KEYWORD_SLOTS = {("isometry", 0)}


def _expr_names(e: Expr) -> Iterator[Var]:
    if isinstance(e, Var):
        yield e
    elif isinstance(e, Neg):
        yield from _expr_names(e.operand)
    elif isinstance(e, BinOp):
        yield from _expr_names(e.left)
        yield from _expr_names(e.right)
    elif isinstance(e, Call):
        for a in e.args:
            yield from _expr_names(a.value)
    elif isinstance(e, Tuple):
        for x in e.items:
            yield from _expr_names(x)


def resolve(script: Script) -> Script:
    """Check that every name is declared (or is a sweep variable) before use."""

    def use(e: Expr, scopes):
        for v in _expr_names(e):
            if not any(v.name in s for s in scopes):
                raise UseBeforeDeclare(v.name, *v.pos)

    def walk(stmts, scopes):
        local: set = set()
        scopes = scopes + [local]
        for s in stmts:
            if isinstance(s, Declare):
                if s.rank is not None:
                    use(s.rank, scopes)
                if s.over is not None and not any(s.over in sc for sc in scopes):
                    raise UseBeforeDeclare(s.over, *s.pos)
                if any(s.name in sc for sc in scopes):
                    raise UseBeforeDeclare(s.name, *s.pos, message=f"{s.name!r} declared twice")
                local.add(s.name)
            elif isinstance(s, Assume):
                use(s.lhs, scopes)
                use(s.rhs, scopes)
            elif isinstance(s, Check):
                positional = 0
                for a in s.args:
                    if a.name is None:
                        slot = (s.name, positional)
                        positional += 1
                        if slot in KEYWORD_SLOTS and isinstance(a.value, Var):
                            continue
                    use(a.value, scopes)
            elif isinstance(s, (Eval, Print)):
                use(s.expr if isinstance(s, Eval) else s.target, scopes)
            elif isinstance(s, Sweep):
                items = (s.over.start, s.over.stop) if isinstance(s.over, Span) else s.over.items
                for x in items:
                    use(x, scopes)
                if any(s.var in sc for sc in scopes):
                    raise UseBeforeDeclare(s.var, *s.pos, message=f"{s.var!r} declared twice")
                walk(s.body, scopes + [{s.var}])

    walk(script.statements, [])
    return script


def parse_and_resolve(source: str) -> Script:
    return resolve(parse(source))
