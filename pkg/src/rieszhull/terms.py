"""Terms over the MV signature plus rational scalars.

Concrete syntax, loosest binding first::

    term  := [RAT "#"] disj
    disj  := conj  { "\\/"  conj }
    conj  := sum   { "/\\"  sum }
    sum   := prod  { "(+)" prod }
    prod  := atom  { "(.)" atom }
    atom  := "~" atom | "(" term ")" | IDENT | "0" | "1"

Binary operators associate to the left.  A scalar prefix scopes over the
rest of the term it starts, so ``1/2 # x (+) y`` halves ``x (+) y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import mvcore
from .errors import DomainError, ParseError


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Bin:
    op: str  # oplus | odot | join | meet
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Scalar:
    q: Fraction
    arg: "Term"


Term = Union[Var, Const, Neg, Bin, Scalar]

SYMBOLS = {"join": "\\/", "meet": "/\\", "oplus": "(+)", "odot": "(.)"}
LEVEL = {"join": 1, "meet": 2, "oplus": 3, "odot": 4}

_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<op>\(\+\)|\(\.\)|\\/|/\\)
      | (?P<rat>\d+/\d+)
      | (?P<num>\d+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<punct>[~()#])
    """,
    re.VERBOSE,
)
_OPNAME = {v: k for k, v in SYMBOLS.items()}


def tokenize(text: str) -> list:
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def term(self):
        kind, text, pos = self.peek()
        if kind == "rat":
            self.take()
            q = Fraction(text)
            if not 0 <= q <= 1:
                raise DomainError(f"scalar {text} outside [0,1] at position {pos}")
            self.expect("#")
            return Scalar(q, self.disj())
        return self.disj()

    def _chain(self, sub, symbol: str):
        node = sub()
        while self.peek()[1] == symbol:
            self.take()
            node = Bin(_OPNAME[symbol], node, sub())
        return node

    def disj(self):
        return self._chain(self.conj, "\\/")

    def conj(self):
        return self._chain(self.sum, "/\\")

    def sum(self):
        return self._chain(self.prod, "(+)")

    def prod(self):
        return self._chain(self.atom, "(.)")

    def atom(self):
        kind, text, pos = self.take()
        if text == "~":
            return Neg(self.atom())
        if text == "(":
            node = self.term()
            self.expect(")")
            return node
        if kind == "ident":
            return Var(text)
        if kind == "num" and text in ("0", "1"):
            return Const(int(text))
        if kind == "rat":
            raise ParseError(f"scalar {text} must be followed by '#' and start a term", pos)
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    node = p.term()
    kind, tok, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {tok!r}", pos)
    return node


def _level(t) -> int:
    if isinstance(t, Scalar):
        return 0
    if isinstance(t, Bin):
        return LEVEL[t.op]
    return 5


def print_term(t: Term) -> str:
    """Inverse of ``parse_term`` up to whitespace and redundant parentheses."""

    def wrap(child, need_parens: bool) -> str:
        s = print_term(child)
        return f"({s})" if need_parens else s

    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Neg):
        return "~" + wrap(t.arg, _level(t.arg) < 5)
    if isinstance(t, Scalar):
        return f"{t.q.numerator}/{t.q.denominator} # " + wrap(t.arg, _level(t.arg) == 0)
    lvl = LEVEL[t.op]
    left = wrap(t.left, _level(t.left) < lvl)
    right = wrap(t.right, _level(t.right) <= lvl)
    return f"{left} {SYMBOLS[t.op]} {right}"


def variables(t: Term) -> list:
    seen = []

    def visit(n):
        if isinstance(n, Var):
            if n.name not in seen:
                seen.append(n.name)
        elif isinstance(n, (Neg, Scalar)):
            visit(n.arg)
        elif isinstance(n, Bin):
            visit(n.left)
            visit(n.right)

    visit(t)
    return seen


def has_scalars(t: Term) -> bool:
    if isinstance(t, Scalar):
        return True
    if isinstance(t, Neg):
        return has_scalars(t.arg)
    if isinstance(t, Bin):
        return has_scalars(t.left) or has_scalars(t.right)
    return False


def fold(t: Term, env: dict, ops):
    """Evaluate ``t`` with the operations of ``ops`` (const, oplus, ..., scalar)."""
    if isinstance(t, Var):
        if t.name not in env:
            raise DomainError(f"unbound variable {t.name!r}")
        return env[t.name]
    if isinstance(t, Const):
        return ops.const(t.value)
    if isinstance(t, Neg):
        return ops.neg(fold(t.arg, env, ops))
    if isinstance(t, Scalar):
        return ops.scalar(t.q, fold(t.arg, env, ops))
    return getattr(ops, t.op)(fold(t.left, env, ops), fold(t.right, env, ops))


class _VectorOps:
    def __init__(self, m: int):
        self.m = m

    def const(self, c):
        return (Fraction(c),) * self.m

    oplus = staticmethod(mvcore.oplus)
    odot = staticmethod(mvcore.odot)
    neg = staticmethod(mvcore.neg)
    meet = staticmethod(mvcore.meet)
    join = staticmethod(mvcore.join)

    @staticmethod
    def scalar(q, v):
        if not 0 <= q <= 1:
            raise DomainError(f"scalar {q} outside [0,1]")
        mvcore.check_unit_range(v)
        return tuple(q * x for x in v)


def eval_term(t: Term, env: dict, riesz: bool = False):
    """Exact value of ``t``; env values are rationals or equal-length vectors.

    Scalar nodes are only allowed when ``riesz`` is set.
    """
    if not riesz and has_scalars(t):
        raise DomainError("scalar multiplication used outside a Riesz context")
    vec_lengths = {len(v) for v in env.values() if isinstance(v, tuple)}
    if len(vec_lengths) > 1:
        raise DomainError("environment vectors have different lengths")
    if vec_lengths:
        m = vec_lengths.pop()
        scal = False
    else:
        m = 1
        scal = True
    full = {}
    for k, v in env.items():
        full[k] = tuple(Fraction(x) for x in v) if isinstance(v, tuple) else (Fraction(v),) * m
    out = fold(t, full, _VectorOps(m))
    return out[0] if scal else out
