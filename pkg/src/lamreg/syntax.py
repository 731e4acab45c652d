"""Simply typed lambda-calculus with products and unit.

Types are built from the base type ``o``, arrows, binary products and the
unit type.  Terms are kept in nameless form: ``Var(i)`` refers to the
``i``-th enclosing binder, counting from zero.  Every abstraction carries
its domain annotation, so a closed term has at most one type.

n-ary products ``A^n`` are right-nested: ``A^3 = A * (A * A)``, and the
n-ary projection ``t_i`` is the matching chain of binary projections.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))

__all__ = [
    "SimpleType", "Base", "Arrow", "Prod", "Unit", "O", "ONE",
    "Term", "Var", "Lam", "App", "Pair", "Proj", "UnitIntro", "UNIT",
    "StlcTypeError",
    "power", "arrows", "bool_type", "product_components",
    "tuple_term", "proj_term", "lam_n",
    "typecheck", "normalize", "beta_eta_equal", "is_normal",
    "subst_type", "cast_term", "term_size", "type_depth", "shift",
    "enumerate_normal_terms",
    "TRUE", "FALSE", "AND", "NOT", "ID_BOOL",
]


# ---------------------------------------------------------------------------
# types


class SimpleType:
    __slots__ = ()

    def __repr__(self) -> str:
        from .surface import print_type
        return f"<type {print_type(self)}>"


@dataclass(frozen=True, eq=True, repr=False)
class Base(SimpleType):
    def __hash__(self) -> int:
        return 0x0B


@dataclass(frozen=True, eq=True, repr=False)
class Unit(SimpleType):
    def __hash__(self) -> int:
        return 0x01


@dataclass(frozen=True, eq=True, repr=False)
class Arrow(SimpleType):
    domain: SimpleType
    codomain: SimpleType
    _h: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_h", hash(("->", self.domain, self.codomain)))

    def __hash__(self) -> int:
        return self._h


@dataclass(frozen=True, eq=True, repr=False)
class Prod(SimpleType):
    left: SimpleType
    right: SimpleType
    _h: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_h", hash(("*", self.left, self.right)))

    def __hash__(self) -> int:
        return self._h


O = Base()
ONE = Unit()


@lru_cache(maxsize=None)
def power(a: SimpleType, n: int) -> SimpleType:
    """Right-nested product ``a * (a * (... * a))`` with ``n`` factors."""
    if n < 1:
        raise ValueError(f"power needs n >= 1, got {n}")
    if n == 1:
        return a
    return Prod(a, power(a, n - 1))


def arrows(*types: SimpleType) -> SimpleType:
    """``arrows(A, B, C) == A -> B -> C``."""
    t = types[-1]
    for a in reversed(types[:-1]):
        t = Arrow(a, t)
    return t


def bool_type() -> SimpleType:
    return Arrow(power(O, 2), O)


def product_components(a: SimpleType, n: int) -> list[SimpleType]:
    """Split ``a`` as an ``n``-ary right-nested product."""
    out = []
    for _ in range(n - 1):
        if not isinstance(a, Prod):
            raise StlcTypeError(f"expected a product with {n} components")
        out.append(a.left)
        a = a.right
    out.append(a)
    return out


def type_depth(a: SimpleType) -> int:
    if isinstance(a, (Arrow, Prod)):
        l, r = (a.domain, a.codomain) if isinstance(a, Arrow) else (a.left, a.right)
        return 1 + max(type_depth(l), type_depth(r))
    return 0


@lru_cache(maxsize=None)
def subst_type(a: SimpleType, b: SimpleType) -> SimpleType:
    """``a[b]``: replace every base leaf of ``a`` with ``b``."""
    if isinstance(a, Base):
        return b
    if isinstance(a, Unit):
        return a
    if isinstance(a, Arrow):
        return Arrow(subst_type(a.domain, b), subst_type(a.codomain, b))
    return Prod(subst_type(a.left, b), subst_type(a.right, b))


# ---------------------------------------------------------------------------
# terms


class Term:
    __slots__ = ()

    def __repr__(self) -> str:
        from .surface import print_term
        try:
            return f"<term {print_term(self)}>"
        except Exception:  # open terms print with raw indices
            return f"<term {self._raw()}>"

    def _raw(self) -> str:
        return object.__repr__(self)


@dataclass(frozen=True, eq=True, repr=False)
class Var(Term):
    index: int


@dataclass(frozen=True, eq=True, repr=False)
class Lam(Term):
    annotation: SimpleType
    body: Term


@dataclass(frozen=True, eq=True, repr=False)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, eq=True, repr=False)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True, eq=True, repr=False)
class Proj(Term):
    i: int
    of: Term

    def __post_init__(self):
        if self.i not in (1, 2):
            raise ValueError("binary projection index must be 1 or 2")


@dataclass(frozen=True, eq=True, repr=False)
class UnitIntro(Term):
    pass


UNIT = UnitIntro()


class StlcTypeError(TypeError):
    """Raised for ill-typed or ill-scoped terms."""


def tuple_term(items: Sequence[Term]) -> Term:
    """Right-nested tuple ``<t1, <t2, ... tn>>``; a 1-tuple is its element."""
    if not items:
        raise ValueError("empty tuple")
    t = items[-1]
    for x in reversed(items[:-1]):
        t = Pair(x, t)
    return t


def proj_term(t: Term, i: int, n: int) -> Term:
    """The ``i``-th component of ``t`` seen as an ``n``-ary right-nested tuple."""
    if not 1 <= i <= n:
        raise ValueError(f"projection {i} out of range 1..{n}")
    for _ in range(i - 1):
        t = Proj(2, t)
    return Proj(1, t) if i < n else t


def lam_n(annotations: Sequence[SimpleType], body: Term) -> Term:
    for a in reversed(annotations):
        body = Lam(a, body)
    return body


def term_size(t: Term) -> int:
    """Number of AST nodes (annotations are not counted)."""
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        n += 1
        cls = type(u)
        if cls is Lam:
            stack.append(u.body)
        elif cls is App:
            stack.append(u.fn)
            stack.append(u.arg)
        elif cls is Pair:
            stack.append(u.left)
            stack.append(u.right)
        elif cls is Proj:
            stack.append(u.of)
    return n


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    """Add ``d`` to every free index ``>= cutoff``."""
    cls = type(t)
    if cls is Var:
        return Var(t.index + d) if t.index >= cutoff else t
    if cls is Lam:
        return Lam(t.annotation, shift(t.body, d, cutoff + 1))
    if cls is App:
        return App(shift(t.fn, d, cutoff), shift(t.arg, d, cutoff))
    if cls is Pair:
        return Pair(shift(t.left, d, cutoff), shift(t.right, d, cutoff))
    if cls is Proj:
        return Proj(t.i, shift(t.of, d, cutoff))
    return t


# ---------------------------------------------------------------------------
# typing


def _describe(t: Term) -> str:
    try:
        from .surface import print_term
        s = print_term(t, allow_open=True)
    except Exception:
        s = type(t).__name__
    return s if len(s) < 80 else s[:77] + "..."


def typecheck(t: Term, ctx: Sequence[SimpleType] = ()) -> SimpleType:
    """Return the unique type of ``t`` in ``ctx``.

    ``ctx`` lists the types of the free variables, outermost first, so
    ``Var(0)`` has type ``ctx[-1]``.
    """
    return _infer(t, list(ctx))


# Types of closed abstractions, keyed by identity.  Compiled deciders and
# kit terms are large and get checked again on every application.
_CLOSED_TYPES: dict[int, tuple[Term, SimpleType]] = {}
_CLOSED_TYPES_MAX = 4096


def _infer(t: Term, ctx: list) -> SimpleType:
    cls = type(t)
    if cls is Var:
        if not 0 <= t.index < len(ctx):
            raise StlcTypeError(f"unbound variable index {t.index}")
        return ctx[-1 - t.index]
    if cls is Lam:
        if not ctx:
            hit = _CLOSED_TYPES.get(id(t))
            if hit is not None and hit[0] is t:
                return hit[1]
        ctx.append(t.annotation)
        try:
            body = _infer(t.body, ctx)
        finally:
            ctx.pop()
        ty = Arrow(t.annotation, body)
        if not ctx:
            if len(_CLOSED_TYPES) >= _CLOSED_TYPES_MAX:
                _CLOSED_TYPES.clear()
            _CLOSED_TYPES[id(t)] = (t, ty)
        return ty
    if cls is App:
        f = _infer(t.fn, ctx)
        a = _infer(t.arg, ctx)
        if not isinstance(f, Arrow):
            raise StlcTypeError(f"applying a non-function of type {f!r} in {_describe(t)}")
        if f.domain != a:
            raise StlcTypeError(
                f"argument type mismatch in {_describe(t)}: expected {f.domain!r}, got {a!r}")
        return f.codomain
    if cls is Pair:
        # right spine iteratively: tuples can be very wide
        lefts = []
        while type(t) is Pair:
            lefts.append(_infer(t.left, ctx))
            t = t.right
        ty = _infer(t, ctx)
        for a in reversed(lefts):
            ty = Prod(a, ty)
        return ty
    if cls is Proj:
        chain = []
        while type(t) is Proj:
            chain.append(t.i)
            t = t.of
        ty = _infer(t, ctx)
        for i in reversed(chain):
            if not isinstance(ty, Prod):
                raise StlcTypeError(f"projection out of a non-product of type {ty!r}")
            ty = ty.left if i == 1 else ty.right
        return ty
    if cls is UnitIntro:
        return ONE
    raise StlcTypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# normalization by evaluation
#
# Semantic values: base -> neutral, arrow -> python callable,
# product -> python pair, unit -> ().  Neutrals use de Bruijn levels:
#   ("v", level) | ("a", neutral, value, arg_type) | ("p", i, neutral)
# Pair components are evaluated on demand: the combinators of the compiler
# build wide tuples of which a projection usually keeps a single entry.


class _Delay:
    __slots__ = ("t", "env", "v")

    def __init__(self, t: Term, env: list):
        self.t = t
        self.env = env
        self.v = _Delay

    def force(self):
        if self.v is _Delay:
            self.v = _eval(self.t, self.env)
            self.t = self.env = None
        return self.v


def _force(v):
    return v.force() if type(v) is _Delay else v


def _eval(t: Term, env: list):
    cls = type(t)
    if cls is Var:
        return _force(env[-1 - t.index])
    if cls is Lam:
        body = t.body
        return lambda v: _eval(body, env + [v])
    if cls is App:
        return _eval(t.fn, env)(_eval(t.arg, env))
    if cls is Pair:
        return (_delay(t.left, env), _delay(t.right, env))
    if cls is Proj:
        chain = []
        while type(t) is Proj:
            chain.append(t.i)
            t = t.of
        v = _eval(t, env)
        for i in reversed(chain):
            v = _force(v[i - 1])
        return v
    return ()


def _delay(t: Term, env: list):
    cls = type(t)
    if cls is Var:
        return env[-1 - t.index]
    if cls is Lam or cls is UnitIntro:
        return _eval(t, env)
    return _Delay(t, env)


def _reflect(a: SimpleType, ne):
    if isinstance(a, Base):
        return ne
    if isinstance(a, Arrow):
        dom, cod = a.domain, a.codomain
        return lambda v: _reflect(cod, ("a", ne, v, dom))
    if isinstance(a, Prod):
        lefts = []
        while isinstance(a, Prod):
            lefts.append(_reflect(a.left, ("p", 1, ne)))
            ne = ("p", 2, ne)
            a = a.right
        v = _reflect(a, ne)
        for x in reversed(lefts):
            v = (x, v)
        return v
    return ()


def _reify(a: SimpleType, v, level: int) -> Term:
    if isinstance(a, Base):
        return _reify_ne(v, level)
    if isinstance(a, Arrow):
        x = _reflect(a.domain, ("v", level))
        return Lam(a.domain, _reify(a.codomain, v(x), level + 1))
    if isinstance(a, Prod):
        items = []
        while isinstance(a, Prod):
            items.append(_reify(a.left, _force(v[0]), level))
            v = _force(v[1])
            a = a.right
        items.append(_reify(a, v, level))
        return tuple_term(items)
    return UNIT


def _reify_ne(ne, level: int) -> Term:
    tag = ne[0]
    if tag == "v":
        return Var(level - ne[1] - 1)
    if tag == "a":
        return App(_reify_ne(ne[1], level), _reify(ne[3], ne[2], level))
    chain = []
    while ne[0] == "p":
        chain.append(ne[1])
        ne = ne[2]
    t = _reify_ne(ne, level)
    for i in reversed(chain):
        t = Proj(i, t)
    return t


def normalize(t: Term, ctx: Sequence[SimpleType] = ()) -> Term:
    """beta-normal eta-long form of ``t`` (surjective pairing and unit eta included)."""
    ctx = list(ctx)
    ty = typecheck(t, ctx)
    env = [_reflect(a, ("v", lvl)) for lvl, a in enumerate(ctx)]
    return _reify(ty, _eval(t, env), len(ctx))


def normalize_at(t: Term, ty: SimpleType, ctx: Sequence[SimpleType] = ()) -> Term:
    """Like :func:`normalize` but trusts ``ty`` instead of re-inferring it."""
    ctx = list(ctx)
    env = [_reflect(a, ("v", lvl)) for lvl, a in enumerate(ctx)]
    return _reify(ty, _eval(t, env), len(ctx))


def beta_eta_equal(t: Term, u: Term, a: SimpleType | None = None) -> bool:
    ta, ua = typecheck(t), typecheck(u)
    if ta != ua or (a is not None and a != ta):
        raise StlcTypeError(f"type mismatch: {ta!r} vs {ua!r}")
    return normalize_at(t, ta) == normalize_at(u, ua)


def is_normal(t: Term, ctx: Sequence[SimpleType] = ()) -> bool:
    """True iff ``t`` is already beta-normal and eta-long."""
    return normalize(t, ctx) == t


# ---------------------------------------------------------------------------
# casting


def cast_term(t: Term, b: SimpleType) -> Term:
    """``t[b]``: substitute ``b`` for ``o`` in every annotation of ``t``."""
    cls = type(t)
    if cls is Lam:
        return Lam(subst_type(t.annotation, b), cast_term(t.body, b))
    if cls is App:
        return App(cast_term(t.fn, b), cast_term(t.arg, b))
    if cls is Pair:
        return Pair(cast_term(t.left, b), cast_term(t.right, b))
    if cls is Proj:
        return Proj(t.i, cast_term(t.of, b))
    return t


# ---------------------------------------------------------------------------
# bounded enumeration of normal forms


def enumerate_normal_terms(a: SimpleType, size_bound: int) -> Iterator[Term]:
    """Every closed beta-normal eta-long term of type ``a`` with at most
    ``size_bound`` nodes, by increasing size, each exactly once."""
    memo: dict = {}

    def nf(ctx: tuple, ty: SimpleType, s: int) -> list:
        key = (ctx, ty, s)
        if key in memo:
            return memo[key]
        out: list = []
        if s >= 1:
            if isinstance(ty, Arrow):
                out = [Lam(ty.domain, b) for b in nf(ctx + (ty.domain,), ty.codomain, s - 1)]
            elif isinstance(ty, Prod):
                for s1 in range(1, s - 1):
                    ls = nf(ctx, ty.left, s1)
                    if not ls:
                        continue
                    rs = nf(ctx, ty.right, s - 1 - s1)
                    out.extend(Pair(l, r) for l in ls for r in rs)
            elif isinstance(ty, Unit):
                out = [UNIT] if s == 1 else []
            else:
                for lvl, hty in enumerate(ctx):
                    out.extend(spine(ctx, Var(len(ctx) - 1 - lvl), hty, s - 1))
        memo[key] = out
        return out

    def spine(ctx: tuple, head: Term, hty: SimpleType, r: int) -> list:
        if isinstance(hty, Base):
            return [head] if r == 0 else []
        out: list = []
        if isinstance(hty, Arrow):
            for sa in range(1, r):
                args = nf(ctx, hty.domain, sa)
                if not args:
                    continue
                for arg in args:
                    out.extend(spine(ctx, App(head, arg), hty.codomain, r - 1 - sa))
        elif isinstance(hty, Prod) and r >= 1:
            out.extend(spine(ctx, Proj(1, head), hty.left, r - 1))
            out.extend(spine(ctx, Proj(2, head), hty.right, r - 1))
        return out

    for s in range(1, size_bound + 1):
        yield from nf((), a, s)


# ---------------------------------------------------------------------------
# Boolean combinators

_O2 = power(O, 2)
_BOOL = bool_type()

TRUE = Lam(_O2, Proj(1, Var(0)))
FALSE = Lam(_O2, Proj(2, Var(0)))
# and := \(p: Bool*Bool). \(x: o*o). p.1 <p.2 x, x.2>
AND = Lam(Prod(_BOOL, _BOOL), Lam(_O2, App(Proj(1, Var(1)), Pair(App(Proj(2, Var(1)), Var(0)), Proj(2, Var(0))))))
# not := \(b: Bool). \(x: o*o). b <x.2, x.1>
NOT = Lam(_BOOL, Lam(_O2, App(Var(1), Pair(Proj(2, Var(0)), Proj(1, Var(0))))))
ID_BOOL = Lam(_BOOL, Var(0))
