"""Text syntax for types and terms.

Types::

    o   1   A -> B   A * B   A^n   A[B]   (A)
    Bool   Church<n>   Fin<n>   Untyped

``->`` is right-associative, ``*`` is left-associative and binds tighter,
``^n`` and the cast ``[B]`` bind tightest.  ``A^n`` is the right-nested
product with ``n`` factors.

Terms::

    \\(x: A). t     t u     <t, u, ...>     t.1   t.2   t.i/n     ()

``t.i/n`` is the ``i``-th projection of an ``n``-ary right-nested tuple.
The names ``true``, ``false``, ``and``, ``not`` and ``id`` denote the
Boolean combinators unless shadowed by a binder.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    AND, FALSE, ID_BOOL, NOT, O, ONE, TRUE, App, Arrow, Base, Lam, Pair,
    Prod, Proj, SimpleType, Term, Unit, UnitIntro, Var, arrows, bool_type,
    power, proj_term, subst_type, tuple_term,
)

__all__ = [
    "ParseError", "parse_type", "parse_term", "print_type", "print_term",
    "church_type", "fin_type", "untyped_terms_type", "PRELUDE_TERMS",
]


class ParseError(ValueError):
    """Syntax error; ``pos`` is the character offset in the input."""

    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos
        self.text = text


def church_type(n: int) -> SimpleType:
    """``(o -> o)^n -> o -> o``."""
    if n < 1:
        raise ValueError("Church_n needs n >= 1")
    return arrows(power(Arrow(O, O), n), O, O)


def fin_type(k: int) -> SimpleType:
    """``o^k -> o``, the encoding of a ``k``-element set."""
    if k < 1:
        raise ValueError("Fin k needs k >= 1")
    return Arrow(power(O, k), O)


def untyped_terms_type() -> SimpleType:
    """``((o -> o) -> o) -> (o -> o -> o) -> o``."""
    return arrows(Arrow(Arrow(O, O), O), arrows(O, O, O), O)


PRELUDE_TERMS = {"true": TRUE, "false": FALSE, "and": AND, "not": NOT, "id": ID_BOOL}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->|→)
  | (?P<num>[0-9]+)
  | (?P<ident>[a-zA-Z_][a-zA-Z0-9_']*)
  | (?P<sym>[\\λ().:<>,*^\[\]/×⟨⟩])
""", re.VERBOSE)

_SYM_ALIASES = {"λ": "\\", "×": "*", "⟨": "<", "⟩": ">"}


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            if kind == "sym":
                val = _SYM_ALIASES.get(val, val)
            elif kind == "arrow":
                kind, val = "sym", "->"
            out.append(_Tok(kind, val, pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str):
        raise ParseError(msg, self.tok.pos, self.text)

    def at(self, value: str) -> bool:
        return self.tok.kind == "sym" and self.tok.value == value

    def eat(self, value: str) -> None:
        if not self.at(value):
            self.error(f"expected {value!r}, found {self.tok.value or 'end of input'!r}")
        self.i += 1

    def number(self) -> int:
        if self.tok.kind != "num":
            self.error("expected a number")
        v = int(self.tok.value)
        self.i += 1
        return v

    def done(self) -> None:
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.value!r}")

    # types ------------------------------------------------------------
    def type_(self) -> SimpleType:
        left = self.prod()
        if self.at("->"):
            self.i += 1
            return Arrow(left, self.type_())
        return left

    def prod(self) -> SimpleType:
        t = self.power()
        while self.at("*"):
            self.i += 1
            t = Prod(t, self.power())
        return t

    def power(self) -> SimpleType:
        t = self.cast()
        if self.at("^"):
            self.i += 1
            pos = self.tok.pos
            n = self.number()
            if n < 1:
                raise ParseError("exponent must be >= 1", pos, self.text)
            t = power(t, n)
        return t

    def cast(self) -> SimpleType:
        t = self.type_atom()
        while self.at("["):
            self.i += 1
            b = self.type_()
            self.eat("]")
            t = subst_type(t, b)
        return t

    def type_atom(self) -> SimpleType:
        tok = self.tok
        if self.at("("):
            self.i += 1
            t = self.type_()
            self.eat(")")
            return t
        if tok.kind == "num" and tok.value == "1":
            self.i += 1
            return ONE
        if tok.kind == "ident":
            self.i += 1
            name = tok.value
            if name == "o":
                return O
            if name == "Bool":
                return bool_type()
            if name == "Untyped":
                return untyped_terms_type()
            m = re.fullmatch(r"(Church|Fin)_?([0-9]+)", name)
            if m and int(m.group(2)) >= 1:
                n = int(m.group(2))
                return church_type(n) if m.group(1) == "Church" else fin_type(n)
            raise ParseError(f"unknown type name {name!r}", tok.pos, self.text)
        self.error("expected a type")

    # terms ------------------------------------------------------------
    def term(self, scope: list) -> Term:
        if self.at("\\"):
            return self.lam(scope)
        t = self.postfix(scope)
        while True:
            if self.at("\\"):
                return App(t, self.lam(scope))
            if self.tok.kind == "ident" or self.at("(") or self.at("<"):
                t = App(t, self.postfix(scope))
            else:
                return t

    def lam(self, scope: list) -> Term:
        self.eat("\\")
        self.eat("(")
        if self.tok.kind != "ident":
            self.error("expected a binder name")
        name = self.tok.value
        self.i += 1
        self.eat(":")
        ty = self.type_()
        self.eat(")")
        self.eat(".")
        scope.append(name)
        try:
            body = self.term(scope)
        finally:
            scope.pop()
        return Lam(ty, body)

    def postfix(self, scope: list) -> Term:
        t = self.atom(scope)
        while self.at(".") and self.toks[self.i + 1].kind == "num":
            self.i += 1
            pos = self.tok.pos
            i = self.number()
            if self.at("/"):
                self.i += 1
                n = self.number()
                try:
                    t = proj_term(t, i, n)
                except ValueError as e:
                    raise ParseError(str(e), pos, self.text) from None
            elif i in (1, 2):
                t = Proj(i, t)
            else:
                raise ParseError("binary projection must be .1 or .2 (use .i/n)", pos, self.text)
        return t

    def atom(self, scope: list) -> Term:
        tok = self.tok
        if self.at("("):
            self.i += 1
            if self.at(")"):
                self.i += 1
                return UnitIntro()
            t = self.term(scope)
            self.eat(")")
            return t
        if self.at("<"):
            self.i += 1
            items = [self.term(scope)]
            while self.at(","):
                self.i += 1
                items.append(self.term(scope))
            self.eat(">")
            return tuple_term(items)
        if tok.kind == "ident":
            self.i += 1
            name = tok.value
            for k in range(len(scope) - 1, -1, -1):
                if scope[k] == name:
                    return Var(len(scope) - 1 - k)
            if name in PRELUDE_TERMS:
                return PRELUDE_TERMS[name]
            raise ParseError(f"unbound variable {name!r}", tok.pos, self.text)
        self.error("expected a term")


def parse_type(text: str) -> SimpleType:
    p = _Parser(text)
    t = p.type_()
    p.done()
    return t


def parse_term(text: str, free: list[str] | None = None) -> Term:
    """Parse a term; ``free`` names the variables of an open context, outermost first."""
    p = _Parser(text)
    t = p.term(list(free or []))
    p.done()
    return t


# ---------------------------------------------------------------------------
# printing


def _homogeneous_power(t: SimpleType):
    n = 1
    a = t
    parts = []
    while isinstance(a, Prod):
        parts.append(a.left)
        a = a.right
        n += 1
    parts.append(a)
    if n >= 3 and all(p == parts[0] for p in parts):
        return parts[0], n
    return None


def print_type(t: SimpleType, prec: int = 0) -> str:
    # prec: 0 arrow level, 1 product level (left operand), 2 atom
    if isinstance(t, Base):
        return "o"
    if isinstance(t, Unit):
        return "1"
    if isinstance(t, Arrow):
        s = f"{print_type(t.domain, 1)} -> {print_type(t.codomain, 0)}"
        return f"({s})" if prec > 0 else s
    hp = _homogeneous_power(t)
    if hp is not None:
        return f"{print_type(hp[0], 2)}^{hp[1]}"
    s = f"{print_type(t.left, 1)} * {print_type(t.right, 2)}"
    return f"({s})" if prec > 1 else s


def print_term(t: Term, allow_open: bool = False) -> str:
    return _pt(t, [], 0, allow_open)


def _name(level: int) -> str:
    return f"x{level + 1}"


def _pt(t: Term, names: list, prec: int, allow_open: bool) -> str:
    # prec: 0 anywhere, 1 function position, 2 argument position
    cls = type(t)
    if cls is Var:
        if t.index < len(names):
            return names[-1 - t.index]
        if allow_open:
            return f"#{t.index}"
        raise ValueError("cannot print an open term")
    if cls is Lam:
        nm = _name(len(names))
        names.append(nm)
        try:
            body = _pt(t.body, names, 0, allow_open)
        finally:
            names.pop()
        s = f"\\({nm}: {print_type(t.annotation)}). {body}"
        return f"({s})" if prec > 0 else s
    if cls is App:
        s = f"{_pt(t.fn, names, 1, allow_open)} {_pt(t.arg, names, 2, allow_open)}"
        return f"({s})" if prec > 1 else s
    if cls is Pair:
        items = []
        while type(t) is Pair:
            items.append(_pt(t.left, names, 0, allow_open))
            t = t.right
        items.append(_pt(t, names, 0, allow_open))
        return "<" + ", ".join(items) + ">"
    if cls is Proj:
        return f"{_pt(t.of, names, 2, allow_open)}.{t.i}"
    return "()"
