"""Line-oriented script language: lexer, parser, pretty-printer, evaluator.

A script is one statement per line::

    f = chi(oball(0, 1)) * expchar(t^-1 * x1)
    verify inversion f
    weil "w,u(t)", (f2, rv(1))

Operators bind, loosest first: ``&``, ``×``, ``+ -``, ``* /``, unary ``-``,
``^``.  There is no implicit multiplication.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import ArityMismatch, DSLSyntaxError, OutsideModel, UndefinedName
from .geometry import CLOSED, INF, OPEN, Ball, Constraint, Form, Polyball, make_constraint
from .integrator import MuFn
from .motvalues import CElem, Mot, cx_exp, mot_c, mot_e, mot_o
from .valfield import QI, RV, VF, T, t_pow, vf_inverse, vf_rv
from .wavefn import MotFn, chi, expchar, fn_embed, identity_fn, one_fn, zero_fn

COMMANDS = (
    "integrate", "fourier", "convolve", "verify", "weil", "weil-verify", "limit-set",
    "jacobian", "oracle", "dist-eval", "dist-apply", "dist-verify", "print", "option",
)


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Imag:
    value: int
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Str:
    value: str
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Name:
    id: str
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class PacketLit:
    support: Any
    phase: Any
    coeff: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Index:
    base: str
    index: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Brace:
    base: str
    arg: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Tuple:
    items: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Any
    right: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: Any
    exp: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Assign:
    name: str
    expr: Any
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    options: tuple = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Script:
    statements: tuple


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<imag>\d+i(?![A-Za-z0-9_]))
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<op>[()\[\]{},;+\-*/^&=×])
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def _strip_comment(line: str) -> str:
    out, in_str = [], False
    for ch in line:
        if ch == '"':
            in_str = not in_str
        if ch == "#" and not in_str:
            break
        out.append(ch)
    return "".join(out)


def tokenize(text: str, line: int = 1) -> list:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(Tok(kind, m.group(), line, pos + 1))
        pos = m.end()
    toks.append(Tok("end", "", line, len(text) + 1))
    return toks


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, toks: list):
        self.toks = toks
        self.i = 0
        self.open: list = []

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def advance(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: Tok | None = None):
        tok = tok or self.tok
        if tok.kind == "end" and self.open:
            t = self.open[-1]
            raise DSLSyntaxError(f"unclosed {t.text!r}", t.line, t.col)
        raise DSLSyntaxError(msg, tok.line, tok.col)

    def expect(self, text: str) -> Tok:
        if self.tok.text != text or self.tok.kind in ("str", "end"):
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of line'!r}")
        return self.advance()

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def push(self, text: str) -> Tok:
        t = self.expect(text)
        self.open.append(t)
        return t

    def pop(self, text: str) -> None:
        self.expect(text)
        self.open.pop()

    def expr(self):
        left = self.cross()
        while self.at("&"):
            t = self.advance()
            left = BinOp("&", left, self.cross(), (t.line, t.col))
        return left

    def cross(self):
        left = self.additive()
        while self.at("×"):
            t = self.advance()
            left = BinOp("×", left, self.additive(), (t.line, t.col))
        return left

    def additive(self):
        left = self.term()
        while self.at("+") or self.at("-"):
            t = self.advance()
            left = BinOp(t.text, left, self.term(), (t.line, t.col))
        return left

    def term(self):
        left = self.unary()
        while self.at("*") or self.at("/"):
            t = self.advance()
            left = BinOp(t.text, left, self.unary(), (t.line, t.col))
        return left

    def unary(self):
        if self.at("-"):
            t = self.advance()
            return Neg(self.unary(), (t.line, t.col))
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            t = self.advance()
            if self.at("-"):
                m = self.advance()
                exp = Neg(self.atom(), (m.line, m.col))
            else:
                exp = self.atom()
            return Pow(base, exp, (t.line, t.col))
        return base

    def atom(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "num":
            self.advance()
            return Num(int(t.text), pos)
        if t.kind == "imag":
            self.advance()
            return Imag(int(t.text[:-1]), pos)
        if t.kind == "str":
            self.advance()
            return Str(json.loads(t.text), pos)
        if t.kind == "name":
            self.advance()
            if self.at("(") and t.text == "packet":
                return self.packet(pos)
            if self.at("("):
                self.push("(")
                args = self.arglist(")")
                self.pop(")")
                return Call(t.text, tuple(args), pos)
            if self.at("[") and t.text in ("O", "C"):
                self.push("[")
                idx = self.expr()
                self.pop("]")
                return Index(t.text, idx, pos)
            if self.at("{") and t.text == "exp":
                self.push("{")
                arg = self.expr()
                self.pop("}")
                return Brace("exp", arg, pos)
            return Name(t.text, pos)
        if self.at("("):
            self.push("(")
            items = self.arglist(")")
            self.pop(")")
            if not items:
                self.fail("empty parentheses", t)
            return items[0] if len(items) == 1 else Tuple(tuple(items), pos)
        self.fail(f"unexpected {t.text or 'end of line'!r}")

    def arglist(self, close: str) -> list:
        args = []
        if self.at(close):
            return args
        args.append(self.expr())
        while self.at(","):
            self.advance()
            args.append(self.expr())
        return args

    def packet(self, pos):
        self.push("(")
        parts = [self.expr()]
        for _ in range(2):
            self.expect(";")
            parts.append(self.expr())
        self.pop(")")
        return PacketLit(parts[0], parts[1], parts[2], pos)

    def done(self) -> None:
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")


_ASSIGN = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=(?!=)")
_COMMAND = re.compile(r"^\s*([a-z][a-z-]*)(?=\s|$)")
_IDENT_WORD = re.compile(r"\s*([a-z]+(?:-[a-z]+)+)(?=[\s,]|$)")


def parse_expr(text: str, line: int = 1):
    p = _Parser(tokenize(text, line))
    e = p.expr()
    p.done()
    return e


def parse_statement(text: str, line: int = 1):
    m = _ASSIGN.match(text)
    if m:
        p = _Parser(tokenize(text[m.end():], line))
        offset = m.end()
        p.toks = [Tok(t.kind, t.text, t.line, t.col + offset) for t in p.toks]
        e = p.expr()
        p.done()
        return Assign(m.group(1), e, line)
    m = _COMMAND.match(text)
    if not m or m.group(1) not in COMMANDS:
        word = text.strip().split(" ")[0]
        col = text.find(word) + 1
        raise DSLSyntaxError(f"unknown statement {word!r}", line, col)
    offset = m.end()
    args, options = [], []
    if m.group(1) == "verify":
        # identity names may contain hyphens
        w = _IDENT_WORD.match(text, offset)
        if w:
            args.append(Name(w.group(1), (line, w.start(1) + 1)))
            offset = w.end()
            rest = re.match(r"\s*,", text[offset:])
            if rest:
                offset += rest.end()
    p = _Parser([Tok(t.kind, t.text, t.line, t.col + offset) for t in tokenize(text[offset:], line)])
    while p.tok.kind != "end":
        nxt = p.toks[p.i + 1]
        if p.tok.kind == "name" and nxt.kind == "op" and nxt.text == "=":
            key = p.advance().text
            p.advance()
            options.append((key, p.expr()))
        else:
            if options:
                p.fail("positional argument after an option")
            args.append(p.expr())
        if p.at(","):
            p.advance()
    return Command(m.group(1), tuple(args), tuple(options), line)


def parse(source: str) -> Script:
    stmts = []
    for n, raw in enumerate(source.splitlines(), start=1):
        text = _strip_comment(raw)
        if not text.strip():
            continue
        stmts.append(parse_statement(text, n))
    return Script(tuple(stmts))


# ---------------------------------------------------------------------------
# pretty-printer

_PREC = {"&": 1, "×": 2, "+": 3, "-": 3, "*": 4, "/": 4}


def _prec(e) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 5
    if isinstance(e, Pow):
        return 6
    return 7


def pretty(e) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Imag):
        return f"{e.value}i"
    if isinstance(e, Str):
        return json.dumps(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Call):
        return f"{e.func}({', '.join(pretty(a) for a in e.args)})"
    if isinstance(e, PacketLit):
        return f"packet({pretty(e.support)}; {pretty(e.phase)}; {pretty(e.coeff)})"
    if isinstance(e, Index):
        return f"{e.base}[{pretty(e.index)}]"
    if isinstance(e, Brace):
        return f"{e.base}{{{pretty(e.arg)}}}"
    if isinstance(e, Tuple):
        return f"({', '.join(pretty(a) for a in e.items)})"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = pretty(e.left)
        if _prec(e.left) < p:
            left = f"({left})"
        right = pretty(e.right)
        if _prec(e.right) <= p:
            right = f"({right})"
        return f"{left} {e.op} {right}"
    if isinstance(e, Neg):
        inner = pretty(e.operand)
        return f"-{inner}" if _prec(e.operand) >= 5 else f"-({inner})"
    if isinstance(e, Pow):
        base = pretty(e.base)
        if _prec(e.base) < 7:
            base = f"({base})"
        x = e.exp
        if isinstance(x, Neg) and _prec(x.operand) == 7:
            exp = "-" + pretty(x.operand)
        elif _prec(x) == 7:
            exp = pretty(x)
        else:
            exp = f"({pretty(x)})"
        return f"{base}^{exp}"
    raise TypeError(f"not an expression node: {e!r}")


def pretty_statement(s) -> str:
    if isinstance(s, Assign):
        return f"{s.name} = {pretty(s.expr)}"
    items = [pretty(a) for a in s.args] + [f"{k}={pretty(v)}" for k, v in s.options]
    if s.name == "verify" and s.args and isinstance(s.args[0], Name):
        head, items = f"verify {items[0]}", items[1:]
        return head + (" " + ", ".join(items) if items else "")
    return s.name + (" " + ", ".join(items) if items else "")


def pretty_script(script: Script) -> str:
    return "".join(pretty_statement(s) + "\n" for s in script.statements)


# ---------------------------------------------------------------------------
# evaluator


@dataclass(frozen=True)
class PointBall:
    center: VF


ALL = "all"


def _is_const(v) -> bool:
    return isinstance(v, VF) and all(g == 0 for g in v.exponents())


def _rational(v, what: str = "value") -> Fraction:
    if isinstance(v, VF) and (v.is_zero() or (_is_const(v) and v.terms[0][1].im == 0)):
        return v.terms[0][1].re if v.terms else Fraction(0)
    raise OutsideModel(f"{what} must be a rational number")


def _integer(v, what: str = "value") -> int:
    q = _rational(v, what)
    if q.denominator != 1:
        raise OutsideModel(f"{what} must be an integer")
    return int(q)


def _to_mot(v) -> Mot:
    if isinstance(v, Mot):
        return v
    if isinstance(v, VF):
        return Mot.coerce(_integer(v, "a Mot coefficient"))
    raise OutsideModel(f"cannot use {_describe(v)} as a Mot value")


def _to_celem(v) -> CElem:
    if isinstance(v, CElem):
        return v
    return CElem.coerce(_to_mot(v))


def _to_form(v) -> Form:
    if isinstance(v, Form):
        return v
    if isinstance(v, VF):
        return Form.const(v)
    raise OutsideModel(f"cannot use {_describe(v)} as a polynomial")


def _to_vf(v) -> VF:
    if isinstance(v, VF):
        return v
    if isinstance(v, Form) and v.degree() <= 0:
        return v.constant()
    raise OutsideModel(f"cannot use {_describe(v)} as a series")


def _describe(v) -> str:
    return type(v).__name__


def _pad(f: MotFn, n: int) -> MotFn:
    return f if f.arity == n else fn_embed(f, n, list(range(f.arity)))


def _same(f: MotFn, g: MotFn) -> tuple:
    n = max(f.arity, g.arity)
    return _pad(f, n), _pad(g, n)


def _form_arity(form: Form) -> int:
    return max((i + 1 for k, _ in form.terms for i in k), default=0)


class Evaluator:
    def __init__(self, env: dict | None = None):
        self.env = dict(env or {})

    def eval(self, e):
        return self._eval(e)

    def _eval(self, e):
        if isinstance(e, Num):
            return VF.const(e.value)
        if isinstance(e, Imag):
            return VF.const(QI(0, e.value))
        if isinstance(e, Str):
            return e.value
        if isinstance(e, Name):
            return self._name(e)
        if isinstance(e, Index):
            g = _rational(self._eval(e.index), "a radius")
            return mot_o(g) if e.base == "O" else mot_c(g)
        if isinstance(e, Brace):
            return cx_exp(_to_vf(self._eval(e.arg)))
        if isinstance(e, Tuple):
            items = [self._eval(x) for x in e.items]
            if len(items) == 2 and isinstance(items[0], MotFn) and isinstance(items[1], RV):
                return MuFn(items[0], items[1])
            return tuple(items)
        if isinstance(e, Neg):
            return self._neg(self._eval(e.operand))
        if isinstance(e, Pow):
            return self._pow(e)
        if isinstance(e, BinOp):
            return self._binop(e.op, self._eval(e.left), self._eval(e.right))
        if isinstance(e, PacketLit):
            return self._packet(e)
        if isinstance(e, Call):
            return self._call(e.func, [self._eval(a) for a in e.args], e)
        raise TypeError(f"unknown node {e!r}")

    def _name(self, e: Name):
        if e.id in self.env:
            return self.env[e.id]
        if e.id == "t":
            return T
        if e.id == "i":
            return VF.const(QI(0, 1))
        if e.id == "e":
            return mot_e()
        if e.id == ALL:
            return ALL
        m = re.fullmatch(r"x([1-9][0-9]*)", e.id)
        if m:
            return Form.var(int(m.group(1)) - 1)
        raise UndefinedName(f"{e.id!r} is not defined (line {e.pos[0]}, column {e.pos[1]})")

    def _neg(self, v):
        if isinstance(v, (VF, Form, Mot, CElem, MotFn)):
            return -v
        raise OutsideModel(f"cannot negate {_describe(v)}")

    def _pow(self, e: Pow):
        base = self._eval(e.base)
        exp = _rational(self._eval(e.exp), "an exponent")
        if isinstance(base, VF):
            if exp.denominator != 1:
                if base.is_monomial() and base.terms[0][1] == QI(1):
                    return t_pow(base.terms[0][0] * exp)
                raise OutsideModel(f"cannot raise {base.text()} to {exp}")
            k = int(exp)
            if k < 0:
                if not base.is_monomial():
                    raise OutsideModel(f"{base.text()} is not invertible in the model")
                base, k = vf_inverse(base), -k
            out = VF.const(1)
            for _ in range(k):
                out = out * base
            return out
        if exp.denominator != 1:
            raise OutsideModel("only integer powers of non-series values")
        k = int(exp)
        if isinstance(base, Mot):
            return base ** k
        if isinstance(base, Form) and k >= 0:
            out = Form.const(VF.const(1))
            for _ in range(k):
                out = out * base
            return out
        raise OutsideModel(f"cannot raise {_describe(base)} to a power")

    def _binop(self, op: str, a, b):
        if op == "&":
            left = a if isinstance(a, list) else [a]
            right = b if isinstance(b, list) else [b]
            return left + right
        if op == "×":
            balls = (list(a.balls) if isinstance(a, Polyball) else [a]) + \
                    (list(b.balls) if isinstance(b, Polyball) else [b])
            if not all(isinstance(x, Ball) for x in balls):
                raise OutsideModel("× joins balls into a polyball")
            return Polyball(balls)
        if op == "/":
            d = _to_vf(b)
            if d.is_zero() or not d.is_monomial():
                raise OutsideModel("division only by nonzero monomials")
            inv = vf_inverse(d)
            if isinstance(a, Form):
                return a.scale(inv)
            return _to_vf(a) * inv
        if isinstance(a, MotFn) or isinstance(b, MotFn):
            return self._fn_op(op, a, b)
        kinds = {type(a), type(b)}
        if kinds <= {VF}:
            return {"+": a + b, "-": a - b, "*": a * b}[op]
        if kinds <= {VF, Form}:
            a, b = _to_form(a), _to_form(b)
            return {"+": lambda: a + b, "-": lambda: a - b, "*": lambda: a * b}[op]()
        if kinds & {CElem}:
            a, b = _to_celem(a), _to_celem(b)
        elif kinds & {Mot}:
            a, b = _to_mot(a), _to_mot(b)
        else:
            raise OutsideModel(f"cannot combine {_describe(a)} and {_describe(b)} with {op!r}")
        return {"+": lambda: a + b, "-": lambda: a - b, "*": lambda: a * b}[op]()

    def _fn_op(self, op: str, a, b):
        if isinstance(a, MotFn) and isinstance(b, MotFn):
            a, b = _same(a, b)
            return {"+": lambda: a + b, "-": lambda: a - b, "*": lambda: a * b}[op]()
        if op != "*":
            raise OutsideModel(f"cannot use {op!r} between a function and a scalar")
        f, c = (a, b) if isinstance(a, MotFn) else (b, a)
        return f.scale(_to_celem(c))

    def _packet(self, e: PacketLit) -> MotFn:
        support = self._eval(e.support)
        phase = _to_form(self._eval(e.phase))
        coeff = _to_celem(self._eval(e.coeff))
        cons = [] if support == ALL else (support if isinstance(support, list) else [support])
        n = _form_arity(phase)
        for c in cons:
            if isinstance(c, bool):
                continue
            if not isinstance(c, Constraint):
                raise OutsideModel("packet support must be 'all' or constraints joined by '&'")
            n = max(n, _form_arity(c.form))
        return MotFn.from_parts(n, [(cons, phase, coeff)])

    def _call(self, name: str, args: list, node):
        fn = getattr(self, f"_f_{name}", None)
        if fn is None:
            raise UndefinedName(f"unknown function {name!r} (line {node.pos[0]}, column {node.pos[1]})")
        return fn(*args)

    # builtin functions -----------------------------------------------------

    def _f_oball(self, c, r):
        return Ball(_to_vf(c), _rational(r, "a radius"), OPEN)

    def _f_cball(self, c, r):
        return Ball(_to_vf(c), _rational(r, "a radius"), CLOSED)

    def _f_point(self, c):
        return PointBall(_to_vf(c))

    def _f_polyball(self, *balls):
        return Polyball(list(balls))

    def _f_in(self, form, ball):
        form = _to_form(form)
        if isinstance(ball, PointBall):
            return make_constraint(form, INF, CLOSED, ball.center)
        return make_constraint(form, ball.radius, ball.kind, ball.center)

    def _f_chi(self, region, coeff=None):
        if isinstance(region, Ball):
            region = Polyball([region])
        return chi(region, 1 if coeff is None else _to_celem(coeff))

    def _f_expchar(self, phase, n=None):
        phase = _to_form(phase)
        return expchar(phase, _form_arity(phase) if n is None else _integer(n, "an arity"))

    def _f_nu(self, b):
        from .weil import nu

        return nu(_to_vf(b))

    def _f_zero(self, n):
        return zero_fn(_integer(n, "an arity"))

    def _f_one(self, n):
        return one_fn(_integer(n, "an arity"))

    def _f_identity(self, n):
        return identity_fn(_integer(n, "an arity"))

    def _f_lift(self, f, n):
        n = _integer(n, "an arity")
        if n < f.arity:
            raise ArityMismatch(f"cannot view a function of arity {f.arity} as arity {n}")
        return _pad(f, n)

    def _f_rv(self, x):
        return vf_rv(_to_vf(x))

    def _f_vec(self, *xs):
        return tuple(xs)

    def _f_regular(self, f):
        from .distrib import regular

        return regular(f)

    def _f_fourier(self, x):
        from .distrib import FourierOf
        from .fourier import fourier0

        if isinstance(x, MotFn):
            return fourier0(x)
        return FourierOf(x)

    def _f_tensor(self, a, b):
        from .distrib import Tensor

        return Tensor(a, b)

    def _f_conv(self, a, b):
        from .distrib import Conv
        from .integrator import convolve

        if isinstance(a, MotFn):
            a, b = _same(a, b)
            return convolve(a, b)
        return Conv(a, b)

    def _f_integrate(self, f):
        from .integrator import integrate

        return integrate(f)

    def _f_reflect(self, f):
        from .wavefn import fn_reflect

        return fn_reflect(f)

    def _f_translate(self, f, *shift):
        from .wavefn import fn_translate

        return fn_translate(f, [_to_vf(s) for s in shift])

    def _f_scale(self, f, a):
        from .wavefn import fn_scale_arg

        return fn_scale_arg(f, _to_vf(a))


def eval_expr(text: str, env: dict | None = None):
    return Evaluator(env).eval(parse_expr(text))


def parse_fn(text: str, arity: int | None = None) -> MotFn:
    v = eval_expr(text)
    if not isinstance(v, MotFn):
        raise OutsideModel(f"{text!r} does not describe a function")
    return v if arity is None else Evaluator()._f_lift(v, VF.const(arity))


def fn_to_json(f) -> dict:
    if isinstance(f, MuFn):
        return {"arity": f.fn.arity, "fn": f.fn.text(), "form": f.form.text()}
    return {"arity": f.arity, "fn": f.text()}


def fn_from_json(obj: dict):
    text = obj.get("fn", obj.get("expr"))
    if text is None:
        raise OutsideModel("function JSON needs an 'fn' field")
    f = parse_fn(text, obj.get("arity"))
    if "form" in obj:
        form = eval_expr(obj["form"])
        if not isinstance(form, RV):
            raise OutsideModel("'form' must be an rv(...) value")
        return MuFn(f, form)
    return f


# ---------------------------------------------------------------------------
# polynomials for the Newton tools


def _poly_vars(e, acc: set) -> None:
    if isinstance(e, Name):
        if e.id in ("x", "y"):
            acc.add({"x": 0, "y": 1}[e.id])
        else:
            m = re.fullmatch(r"x([1-9][0-9]*)", e.id)
            if m:
                acc.add(int(m.group(1)) - 1)
    for child in getattr(e, "__dict__", {}).values():
        if isinstance(child, tuple):
            for c in child:
                _poly_vars(c, acc)
        elif not isinstance(child, (str, int)):
            _poly_vars(child, acc)


def _poly(e, n: int):
    from .newton import VFPoly

    if isinstance(e, Name):
        if e.id in ("x", "y"):
            return VFPoly.var({"x": 0, "y": 1}[e.id], n)
        m = re.fullmatch(r"x([1-9][0-9]*)", e.id)
        if m:
            return VFPoly.var(int(m.group(1)) - 1, n)
    if isinstance(e, (Num, Imag, Name)):
        return VFPoly.const(_to_vf(Evaluator().eval(e)), n)
    if isinstance(e, Neg):
        return -_poly(e.operand, n)
    if isinstance(e, BinOp) and e.op in "+-*":
        a, b = _poly(e.left, n), _poly(e.right, n)
        return {"+": a + b, "-": a - b, "*": a * b}[e.op]
    if isinstance(e, BinOp) and e.op == "/":
        return _poly(e.left, n) * VFPoly.const(_to_vf(Evaluator().eval(BinOp("/", Num(1), e.right))), n)
    if isinstance(e, Pow):
        acc: set = set()
        _poly_vars(e.base, acc)
        if not acc:
            return VFPoly.const(_to_vf(Evaluator().eval(e)), n)
        k = _integer(Evaluator().eval(e.exp), "an exponent")
        if k < 0:
            raise OutsideModel("negative powers of variables are not polynomials")
        return _poly(e.base, n) ** k
    raise OutsideModel(f"not a polynomial expression: {pretty(e)}")


def parse_poly(text: str, nvars: int | None = None):
    """Polynomial in ``x, y`` or ``x1 .. xn`` with VF coefficients.

    A parenthesized tuple gives a list of polynomials (a polynomial map).
    """
    e = parse_expr(text)
    acc: set = set()
    _poly_vars(e, acc)
    n = nvars if nvars is not None else max(acc, default=-1) + 1
    if acc and max(acc) >= n:
        raise ArityMismatch(f"{text!r} uses more than {n} variables")
    if isinstance(e, Tuple):
        return [_poly(x, n) for x in e.items]
    return _poly(e, n)
