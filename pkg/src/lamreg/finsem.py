"""Finite-set semantics of simple types and terms.

A :class:`FinDomain` is the denotation of a simple type over a finite
base.  Elements are enumerated canonically:

* ``BaseDom(k)``: ``1..k``;
* ``ProdDom``: left-major lexicographic,
  ``index(a, b) = (index(a) - 1) * size(right) + index(b)``;
* ``FunDom``: functions as tables over the canonical enumeration of the
  domain, the image of the first domain element being the most
  significant digit,
  ``index(f) = 1 + sum_j (index(f(d_j)) - 1) * size(cod) ** (m - j)``.

Raw values are plain Python data: ``int`` for base elements, ``()`` for
the unit, a 2-tuple for pairs and :class:`Fn` for functions.  A function
value is either a materialized table or a lazy closure; closures are
materialized on demand (for indexing, equality, hashing) as long as the
domain fits the table guard.  Lazy closures are what make evaluation at
huge types possible: ``[[Church_2]]`` over a 16-element base has far
too many elements to ever enumerate, but applying a closure is cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .syntax import (
    App, Arrow, Base, Lam, Pair, Prod, Proj, SimpleType, StlcTypeError,
    Term, Unit, UnitIntro, Var, typecheck,
)

__all__ = [
    "FinDomain", "BaseDom", "UnitDom", "ProdDom", "FunDom", "FinElem", "Fn",
    "DomainTooLarge", "MAX_TABLE",
    "denote_type", "enumerate_domain", "index_of", "elem_at", "apply_elem",
    "eval_term", "eval_value", "value_index", "value_at", "values",
    "make_fn", "domain_size", "fits", "transport",
]

MAX_TABLE = 1 << 24


class DomainTooLarge(ValueError):
    """A domain is too large to enumerate or materialize under the active guard."""


class FinDomain:
    __slots__ = ()

    @property
    def size(self) -> int:
        return domain_size(self)


@dataclass(frozen=True, repr=False)
class BaseDom(FinDomain):
    k: int
    _h: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("base domains must be non-empty")
        object.__setattr__(self, "_h", hash(("base", self.k)))

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"BaseDom({self.k})"


@dataclass(frozen=True, repr=False)
class UnitDom(FinDomain):
    def __hash__(self):
        return 0x1D

    def __repr__(self):
        return "UnitDom()"


@dataclass(frozen=True, repr=False)
class ProdDom(FinDomain):
    left: FinDomain
    right: FinDomain
    _h: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_h", hash(("prod", self.left, self.right)))

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"ProdDom({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class FunDom(FinDomain):
    dom: FinDomain
    cod: FinDomain
    _h: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_h", hash(("fun", self.dom, self.cod)))

    def __hash__(self):
        return self._h

    def __repr__(self):
        return f"FunDom({self.dom!r}, {self.cod!r})"


UNIT_DOM = UnitDom()

# exact sizes are only computed below this many bits
_SIZE_BITS_CAP = 1 << 20


@lru_cache(maxsize=None)
def _log2_size(d: FinDomain) -> float:
    if isinstance(d, BaseDom):
        return math.log2(d.k)
    if isinstance(d, UnitDom):
        return 0.0
    if isinstance(d, ProdDom):
        return _log2_size(d.left) + _log2_size(d.right)
    dom_bits = _log2_size(d.dom)
    if dom_bits > 1023:
        return math.inf if _log2_size(d.cod) > 0 else 0.0
    return (2.0 ** dom_bits) * _log2_size(d.cod)


@lru_cache(maxsize=None)
def domain_size(d: FinDomain) -> int:
    """Exact cardinality; raises :class:`DomainTooLarge` for astronomically large domains."""
    if _log2_size(d) > _SIZE_BITS_CAP:
        raise DomainTooLarge(f"{d!r} has about 2^{_log2_size(d):.3g} elements")
    if isinstance(d, BaseDom):
        return d.k
    if isinstance(d, UnitDom):
        return 1
    if isinstance(d, ProdDom):
        return domain_size(d.left) * domain_size(d.right)
    return domain_size(d.cod) ** domain_size(d.dom)


def fits(d: FinDomain, bound: int) -> bool:
    """``size(d) <= bound`` without computing huge sizes."""
    if _log2_size(d) > math.log2(bound) + 1:
        return False
    return domain_size(d) <= bound


@lru_cache(maxsize=None)
def denote_type(a: SimpleType, base: FinDomain) -> FinDomain:
    if isinstance(a, Base):
        return base
    if isinstance(a, Unit):
        return UNIT_DOM
    if isinstance(a, Arrow):
        return FunDom(denote_type(a.domain, base), denote_type(a.codomain, base))
    return ProdDom(denote_type(a.left, base), denote_type(a.right, base))


# ---------------------------------------------------------------------------
# raw values


class Fn:
    """A function value of a :class:`FunDom`: a table, a closure, or both."""

    __slots__ = ("domain", "_fn", "_table", "_index", "_hash")

    def __init__(self, domain: FunDom, fn: Callable | None = None, table: tuple | None = None):
        self.domain = domain
        self._fn = fn
        self._table = table
        self._index = None
        self._hash = None

    def __call__(self, x):
        if self._table is not None:
            return self._table[value_index(self.domain.dom, x) - 1]
        return self._fn(x)

    def table(self, max_table: int = MAX_TABLE) -> tuple:
        if self._table is None:
            dom = self.domain.dom
            if not fits(dom, max_table):
                raise DomainTooLarge(f"cannot tabulate a function on {dom!r}")
            self._table = tuple(self._fn(x) for x in values(dom))
        return self._table

    @property
    def is_materialized(self) -> bool:
        return self._table is not None

    def __eq__(self, other):
        if not isinstance(other, Fn):
            return NotImplemented
        if self is other:
            return True
        return self.domain == other.domain and self.table() == other.table()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.table())
        return self._hash

    def __repr__(self):
        if self._table is not None and len(self._table) <= 16:
            return f"Fn{list(self._table)}"
        return f"Fn<{self.domain!r}>"


def make_fn(domain: FunDom, f: Callable | Sequence) -> Fn:
    """Build a function value from a callable on raw values or from a table."""
    if callable(f):
        return Fn(domain, fn=f)
    table = tuple(f)
    if len(table) != domain_size(domain.dom):
        raise ValueError("table length does not match the domain size")
    return Fn(domain, table=table)


def value_index(d: FinDomain, v) -> int:
    """Canonical 1-based index of the raw value ``v`` in ``d``."""
    if isinstance(d, BaseDom):
        return v
    if isinstance(d, UnitDom):
        return 1
    if isinstance(d, ProdDom):
        return (value_index(d.left, v[0]) - 1) * domain_size(d.right) + value_index(d.right, v[1])
    if v._index is None:
        c = domain_size(d.cod)
        acc = 0
        for e in v.table():
            acc = acc * c + (value_index(d.cod, e) - 1)
        v._index = acc + 1
    return v._index


def value_at(d: FinDomain, i: int):
    """Raw value at canonical 1-based index ``i``."""
    if not 1 <= i <= domain_size(d):
        raise IndexError(f"index {i} out of range 1..{domain_size(d)} for {d!r}")
    return _value_at(d, i)


def _value_at(d: FinDomain, i: int):
    if isinstance(d, BaseDom):
        return i
    if isinstance(d, UnitDom):
        return ()
    if isinstance(d, ProdDom):
        q, r = divmod(i - 1, domain_size(d.right))
        return (_value_at(d.left, q + 1), _value_at(d.right, r + 1))
    m = domain_size(d.dom)
    c = domain_size(d.cod)
    digits = []
    rest = i - 1
    for _ in range(m):
        rest, r = divmod(rest, c)
        digits.append(r)
    fn = Fn(d, table=tuple(_value_at(d.cod, r + 1) for r in reversed(digits)))
    fn._index = i
    return fn


def values(d: FinDomain) -> Iterator:
    """All raw values of ``d`` in canonical order."""
    if isinstance(d, BaseDom):
        yield from range(1, d.k + 1)
    elif isinstance(d, UnitDom):
        yield ()
    elif isinstance(d, ProdDom):
        rights = list(values(d.right))
        for a in values(d.left):
            for b in rights:
                yield (a, b)
    else:
        n = domain_size(d)
        for i in range(1, n + 1):
            yield _value_at(d, i)


# ---------------------------------------------------------------------------
# public element wrapper


@dataclass(frozen=True)
class FinElem:
    """An element of a finite domain, identified by its canonical index."""

    domain: FinDomain
    value: object = field(compare=False, repr=False)

    @property
    def index(self) -> int:
        return value_index(self.domain, self.value)

    @property
    def table(self) -> tuple[int, ...]:
        """Codomain indices of a function element, in canonical domain order."""
        if not isinstance(self.domain, FunDom):
            raise TypeError("only function elements have tables")
        return tuple(value_index(self.domain.cod, e) for e in self.value.table())

    def __eq__(self, other):
        if not isinstance(other, FinElem):
            return NotImplemented
        return self.domain == other.domain and self.value == other.value

    def __hash__(self):
        return hash((self.domain, self.value))

    def __call__(self, x: "FinElem") -> "FinElem":
        return apply_elem(self, x)

    def __repr__(self):
        try:
            return f"FinElem({self.domain!r}, index={self.index})"
        except DomainTooLarge:
            return f"FinElem({self.domain!r}, <lazy>)"


def enumerate_domain(d: FinDomain) -> Iterator[FinElem]:
    for v in values(d):
        yield FinElem(d, v)


def index_of(x: FinElem) -> int:
    return x.index


def elem_at(d: FinDomain, i: int) -> FinElem:
    return FinElem(d, value_at(d, i))


def apply_elem(f: FinElem, x: FinElem) -> FinElem:
    if not isinstance(f.domain, FunDom):
        raise TypeError(f"{f!r} is not a function element")
    if f.domain.dom != x.domain:
        raise TypeError(f"domain mismatch: {f.domain.dom!r} vs {x.domain!r}")
    return FinElem(f.domain.cod, f.value(x.value))


# ---------------------------------------------------------------------------
# evaluation


def _compile(t: Term, ctx: list, base: FinDomain):
    """Return ``(type, runner)`` where ``runner(env)`` computes the raw value.

    ``env`` is a list of raw values, outermost first.
    """
    cls = type(t)
    if cls is Var:
        if not 0 <= t.index < len(ctx):
            raise StlcTypeError(f"unbound variable index {t.index}")
        k = -1 - t.index
        return ctx[k], lambda env: env[k]
    if cls is Lam:
        ctx.append(t.annotation)
        try:
            bty, body = _compile(t.body, ctx, base)
        finally:
            ctx.pop()
        ty = Arrow(t.annotation, bty)
        dom = denote_type(ty, base)
        return ty, lambda env: Fn(dom, fn=lambda v: body(env + [v]))
    if cls is App:
        fty, f = _compile(t.fn, ctx, base)
        aty, a = _compile(t.arg, ctx, base)
        if not isinstance(fty, Arrow) or fty.domain != aty:
            raise StlcTypeError("ill-typed application")
        return fty.codomain, lambda env: f(env)(a(env))
    if cls is Pair:
        lty, l = _compile(t.left, ctx, base)
        rty, r = _compile(t.right, ctx, base)
        return Prod(lty, rty), lambda env: (l(env), r(env))
    if cls is Proj:
        ty, p = _compile(t.of, ctx, base)
        if not isinstance(ty, Prod):
            raise StlcTypeError("projection out of a non-product")
        k = t.i - 1
        return (ty.left if k == 0 else ty.right), lambda env: p(env)[k]
    if cls is UnitIntro:
        from .syntax import ONE
        return ONE, lambda env: ()
    raise StlcTypeError(f"not a term: {t!r}")


def eval_value(t: Term, base: FinDomain, env: Sequence = (), ctx: Sequence[SimpleType] = ()):
    """Raw value of ``t``; ``env`` holds raw values for ``ctx``, outermost first."""
    ty, run = _compile(t, list(ctx), base)
    return ty, run(list(env))


def eval_term(t: Term, base: FinDomain, env: Sequence[FinElem] = ()) -> FinElem:
    """``[[t]]`` at ``base``.  Open terms take their free variables from ``env``
    (outermost first); the context types are read off the element domains."""
    if env:
        ctx = [_type_of_domain(e.domain, base) for e in env]
    else:
        ctx = []
    ty, v = eval_value(t, base, [e.value for e in env], ctx)
    return FinElem(denote_type(ty, base), v)


def _type_of_domain(d: FinDomain, base: FinDomain) -> SimpleType:
    # only used to rebuild a context from element domains
    from .syntax import O, ONE
    if d == base:
        return O
    if isinstance(d, UnitDom):
        return ONE
    if isinstance(d, ProdDom):
        return Prod(_type_of_domain(d.left, base), _type_of_domain(d.right, base))
    if isinstance(d, FunDom):
        return Arrow(_type_of_domain(d.dom, base), _type_of_domain(d.cod, base))
    raise StlcTypeError(f"{d!r} is not a denotation over {base!r}")


# ---------------------------------------------------------------------------
# transport along a bijection of bases


def transport(a: SimpleType, src: FinDomain, dst: FinDomain,
              fwd: Callable, bwd: Callable) -> tuple[Callable, Callable]:
    """Lift a base bijection ``fwd: src -> dst`` (inverse ``bwd``) to
    ``[[a]]_src <-> [[a]]_dst``; returns the two raw-value maps."""
    if isinstance(a, Base):
        return fwd, bwd
    if isinstance(a, Unit):
        return (lambda v: v), (lambda v: v)
    if isinstance(a, Prod):
        lf, lb = transport(a.left, src, dst, fwd, bwd)
        rf, rb = transport(a.right, src, dst, fwd, bwd)
        return (lambda v: (lf(v[0]), rf(v[1]))), (lambda v: (lb(v[0]), rb(v[1])))
    df, db = transport(a.domain, src, dst, fwd, bwd)
    cf, cb = transport(a.codomain, src, dst, fwd, bwd)
    d_dst = denote_type(a, dst)
    d_src = denote_type(a, src)
    return (lambda f: Fn(d_dst, fn=lambda x: cf(f(db(x))))), \
           (lambda g: Fn(d_src, fn=lambda x: cb(g(df(x)))))
