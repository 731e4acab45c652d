"""Logical relations between two finite-set interpretations.

A :class:`FinRelation` relates two finite domains and is stored as a set of
canonical index pairs.  :func:`lift_relation` extends a relation between
two bases to every simple type: componentwise at products, the singleton
at the unit, and at arrows ``f ~ g`` iff related arguments go to related
results.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .finsem import (
    UNIT_DOM, BaseDom, DomainTooLarge, FinDomain, FinElem, FunDom, ProdDom,
    denote_type, domain_size, elem_at, eval_value, fits, value_index, values,
)
from .recognizers import SemRecognizer
from .syntax import (
    O, ONE, UNIT, App, Arrow, Base, Lam, Pair, Prod, Proj, SimpleType, Term,
    Unit, Var, bool_type, shift, typecheck,
)

__all__ = [
    "MAX_PAIRS", "FinRelation", "PreconditionError", "lift_relation", "related",
    "fundamental_lemma_check", "point_relation", "is_functional", "is_surjective",
    "is_partial_surjection", "lift_is_partial_surjection", "partial_surjection_closure_check",
    "partial_surjections", "pullback_recognizer", "transfer_check",
    "types_up_to_depth", "random_term",
]

MAX_PAIRS = 10**6


class PreconditionError(ValueError):
    """The base relation does not satisfy the hypotheses of a check."""


@dataclass(frozen=True)
class FinRelation:
    """A relation between ``left`` and ``right``, as 1-based index pairs."""

    left: FinDomain
    right: FinDomain
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        nl, nr = domain_size(self.left), domain_size(self.right)
        for i, j in self.pairs:
            if not (1 <= i <= nl and 1 <= j <= nr):
                raise ValueError(f"pair {(i, j)} outside the domains")

    @classmethod
    def from_function(cls, table: Iterable[int], right: int | FinDomain) -> "FinRelation":
        """Graph of a map between base sets given by its table (1-based)."""
        table = list(table)
        right = BaseDom(right) if isinstance(right, int) else right
        return cls(BaseDom(len(table)), right, {(i + 1, j) for i, j in enumerate(table)})

    def __contains__(self, pair) -> bool:
        a, b = pair
        if isinstance(a, FinElem):
            a, b = a.index, b.index
        return (a, b) in self.pairs

    def elem_pairs(self) -> Iterator[tuple[FinElem, FinElem]]:
        for i, j in sorted(self.pairs):
            yield elem_at(self.left, i), elem_at(self.right, j)

    def mates(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for i, j in self.pairs:
            out.setdefault(i, set()).add(j)
        return out

    def __len__(self) -> int:
        return len(self.pairs)


def point_relation(e: FinDomain) -> FinRelation:
    """The identity relation on ``e`` (points of ``e`` paired with themselves)."""
    n = domain_size(e)
    return FinRelation(e, e, {(i, i) for i in range(1, n + 1)})


def is_functional(r: FinRelation) -> bool:
    seen: dict[int, int] = {}
    for i, j in r.pairs:
        if seen.setdefault(i, j) != j:
            return False
    return True


def is_surjective(r: FinRelation) -> bool:
    return {j for _, j in r.pairs} == set(range(1, domain_size(r.right) + 1))


def is_partial_surjection(r: FinRelation) -> bool:
    return is_functional(r) and is_surjective(r)


def lift_relation(a: SimpleType, base: FinRelation, max_pairs: int = MAX_PAIRS) -> FinRelation:
    return _lift(a, base, max_pairs, {})


def _lift(a: SimpleType, base: FinRelation, max_pairs: int, memo: dict) -> FinRelation:
    if a in memo:
        return memo[a]
    if isinstance(a, Base):
        out = base
    elif isinstance(a, Unit):
        out = FinRelation(UNIT_DOM, UNIT_DOM, {(1, 1)})
    elif isinstance(a, Prod):
        l = _lift(a.left, base, max_pairs, memo)
        r = _lift(a.right, base, max_pairs, memo)
        nl, nr = domain_size(r.left), domain_size(r.right)
        out = FinRelation(ProdDom(l.left, r.left), ProdDom(l.right, r.right),
                          {((i1 - 1) * nl + i2, (j1 - 1) * nr + j2)
                           for i1, j1 in l.pairs for i2, j2 in r.pairs})
    else:
        out = _lift_arrow(_lift(a.domain, base, max_pairs, memo),
                          _lift(a.codomain, base, max_pairs, memo), max_pairs)
    memo[a] = out
    return out


def _lift_arrow(dom: FinRelation, cod: FinRelation, max_pairs: int) -> FinRelation:
    left = FunDom(dom.left, cod.left)
    right = FunDom(dom.right, cod.right)
    if not (fits(left, max_pairs) and fits(right, max_pairs)) \
            or domain_size(left) * domain_size(right) > max_pairs:
        raise DomainTooLarge(f"lifting to {left!r} x {right!r} exceeds {max_pairs} candidate pairs")
    m1, m2 = domain_size(dom.left), domain_size(dom.right)
    c1, c2 = domain_size(cod.left), domain_size(cod.right)
    # argument pairs grouped by the right argument
    by_right: list[list[int]] = [[] for _ in range(m2)]
    for x, y in dom.pairs:
        by_right[y - 1].append(x)
    cod_mates = cod.mates()
    everything = frozenset(range(1, c2 + 1))
    weights = [c2 ** (m2 - 1 - y) for y in range(m2)]
    pairs = set()
    for fi, f in enumerate(itertools.product(range(1, c1 + 1), repeat=m1), start=1):
        allowed = []
        for y in range(m2):
            s = everything
            for x in by_right[y]:
                s = s & cod_mates.get(f[x - 1], frozenset())
                if not s:
                    break
            if not s:
                break
            allowed.append(sorted(s))
        else:
            for g in itertools.product(*allowed):
                pairs.add((fi, 1 + sum((v - 1) * w for v, w in zip(g, weights))))
    return FinRelation(left, right, pairs)


@lru_cache(maxsize=4096)
def _lift_cached(a: SimpleType, base: FinRelation, max_pairs: int) -> FinRelation:
    return lift_relation(a, base, max_pairs)


@lru_cache(maxsize=256)
def _values_list(d: FinDomain) -> list:
    return list(values(d))


def related(a: SimpleType, base: FinRelation, u, v, max_pairs: int = MAX_PAIRS) -> bool:
    """Whether raw values ``u`` in ``[[a]]_left`` and ``v`` in ``[[a]]_right`` are
    related by the lifted relation.  When the lift of ``a`` is beyond the
    guard, arrows are checked pointwise on related arguments."""
    if isinstance(a, Base):
        return (value_index(base.left, u), value_index(base.right, v)) in base.pairs
    if isinstance(a, Unit):
        return True
    if isinstance(a, Prod):
        return (related(a.left, base, u[0], v[0], max_pairs)
                and related(a.right, base, u[1], v[1], max_pairs))
    try:
        rel = _lift_cached(a, base, max_pairs)
    except DomainTooLarge:
        pass
    else:
        return (value_index(rel.left, u), value_index(rel.right, v)) in rel.pairs
    dom = _lift_cached(a.domain, base, max_pairs)
    xs, ys = _values_list(dom.left), _values_list(dom.right)
    for i, j in dom.pairs:
        if not related(a.codomain, base, u(xs[i - 1]), v(ys[j - 1]), max_pairs):
            return False
    return True


Evaluator = Callable[[Term, FinDomain], object]


def _default_eval(t: Term, base: FinDomain):
    return eval_value(t, base)[1]


def fundamental_lemma_check(t: Term, base: FinRelation, max_pairs: int = MAX_PAIRS,
                            left_eval: Evaluator = _default_eval,
                            right_eval: Evaluator = _default_eval) -> bool:
    """Whether ``([[t]]_left, [[t]]_right)`` is in the lifted relation.

    The evaluators are parameters so that a test can plug in a faulty one.
    """
    a = typecheck(t)
    return related(a, base, left_eval(t, base.left), right_eval(t, base.right), max_pairs)


def partial_surjection_closure_check(a: SimpleType, base: FinRelation,
                                     max_pairs: int = MAX_PAIRS) -> bool:
    """Whether the lift of a partial surjection between inhabited sets is
    again a partial surjection."""
    if domain_size(base.left) < 1 or domain_size(base.right) < 1:
        raise PreconditionError("both sides must be inhabited")
    if not is_partial_surjection(base):
        raise PreconditionError("base relation is not a partial surjection")
    return lift_is_partial_surjection(a, base, max_pairs)


def lift_is_partial_surjection(a: SimpleType, base: FinRelation, max_pairs: int = MAX_PAIRS) -> bool:
    """``is_partial_surjection(lift_relation(a, base))``, without building the
    lift at an arrow type whose left side is too large to enumerate."""
    try:
        return is_partial_surjection(_lift_cached(a, base, max_pairs))
    except DomainTooLarge:
        if not isinstance(a, Arrow):
            raise
    return _arrow_is_partial_surjection(_lift_cached(a.domain, base, max_pairs),
                                        _lift_cached(a.codomain, base, max_pairs), max_pairs)


def _arrow_is_partial_surjection(dom: FinRelation, cod: FinRelation, max_pairs: int) -> bool:
    # f ~ g iff f(x) lies in allowed_g(x) for every x, where allowed_g(x) is
    # the set of left mates of g(y) over all y related to x.  So the mates of
    # g form a product: g has one iff no factor is empty, and two right
    # functions share one iff their factors meet everywhere.
    m1, m2 = domain_size(dom.left), domain_size(dom.right)
    c1, c2 = domain_size(cod.left), domain_size(cod.right)
    right = FunDom(dom.right, cod.right)
    n_right = domain_size(right) if fits(right, max_pairs) else max_pairs + 1
    if n_right * n_right * m1 > max_pairs * 16:
        raise DomainTooLarge(f"partial-surjection check on {right!r} exceeds the pair guard")
    ys_of = [[] for _ in range(m1)]
    for x, y in dom.pairs:
        ys_of[x - 1].append(y)
    inverse = [set() for _ in range(c2)]
    for i, j in cod.pairs:
        inverse[j - 1].add(i)
    everything = frozenset(range(1, c1 + 1))
    factors = []
    for g in itertools.product(range(1, c2 + 1), repeat=m2):
        fac = []
        for x in range(m1):
            s = everything
            for y in ys_of[x]:
                s = s & inverse[g[y - 1] - 1]
            if not s:
                return False
            fac.append(s)
        factors.append(fac)
    for f1, f2 in itertools.combinations(factors, 2):
        if all(a & b for a, b in zip(f1, f2)):
            return False
    return True


def partial_surjections(n_left: int, n_right: int) -> Iterator[FinRelation]:
    """All partial surjections ``BaseDom(n_left) -> BaseDom(n_right)``."""
    for assign in itertools.product(range(n_right + 1), repeat=n_left):
        if set(range(1, n_right + 1)) <= set(assign):
            yield FinRelation(BaseDom(n_left), BaseDom(n_right),
                              {(i + 1, j) for i, j in enumerate(assign) if j})


def pullback_recognizer(r: SemRecognizer, rel: FinRelation,
                        max_pairs: int = MAX_PAIRS) -> SemRecognizer:
    """Recognizer over ``rel.left`` accepting the points related to an
    accepting point of ``r``.  Same language as ``r`` when the lifted
    relation is functional."""
    if rel.right != r.base:
        raise ValueError("relation must end at the recognizer's base")
    lifted = lift_relation(r.subject_type, rel, max_pairs)
    d = denote_type(r.subject_type, r.base)
    good = {i for i, j in lifted.pairs if r.accepting(elem_at(d, j))}
    return SemRecognizer(r.subject_type, rel.left, lambda e: e.index in good,
                         f"pullback({r.name})")


def transfer_check(r: SemRecognizer, t: Term, rel: FinRelation | None = None,
                   max_pairs: int = MAX_PAIRS) -> bool:
    """Verdict of ``r`` on ``t`` equals the verdict computed on the left side
    of ``rel`` (the point relation of ``r.base`` by default)."""
    rel = point_relation(r.base) if rel is None else rel
    return pullback_recognizer(r, rel, max_pairs).accepts(t) == r.accepts(t)


# ---------------------------------------------------------------------------
# sampling


def types_up_to_depth(depth: int) -> list[SimpleType]:
    """Every type over ``o`` and ``1`` built with ``->`` and ``*`` of depth <= ``depth``."""
    level = [O, ONE]
    for _ in range(depth):
        level = list(dict.fromkeys(level + [c(x, y) for c in (Arrow, Prod)
                                            for x in level for y in level]))
    return level


_OO = Arrow(O, O)
_SAMPLE_TYPES = [bool_type(), _OO, Prod(bool_type(), _OO), Arrow(Prod(O, O), Prod(O, O)),
                 Arrow(_OO, _OO), Arrow(ONE, _OO), Arrow(Prod(_OO, _OO), _OO)]


def _closed_filler(rng: random.Random, ty: SimpleType, ctx: list, budget: int) -> Term:
    """A random closed-in-``ctx`` term of type ``ty`` (needs ``ty`` inhabited in ``ctx``)."""
    if isinstance(ty, Arrow):
        return Lam(ty.domain, _closed_filler(rng, ty.codomain, ctx + [ty.domain], budget))
    if isinstance(ty, Prod):
        return Pair(_closed_filler(rng, ty.left, ctx, budget - 1),
                    _closed_filler(rng, ty.right, ctx, budget - 1))
    if isinstance(ty, Unit):
        return UNIT
    heads = []
    for lvl, hty in enumerate(ctx):
        heads.extend(_spines(Var(len(ctx) - 1 - lvl), hty))
    rng.shuffle(heads)
    if budget <= 0:
        heads.sort(key=lambda h: len(h[1]))
    for head, args in heads:
        try:
            t = head
            for kind, x in args:
                t = App(t, _closed_filler(rng, x, ctx, budget - 1)) if kind == "app" else Proj(x, t)
            return t
        except LookupError:
            continue
    raise LookupError(f"no inhabitant of {ty!r} found")


def _spines(head: Term, hty: SimpleType, path: tuple = ()) -> list:
    if isinstance(hty, Base):
        return [(head, path)]
    if isinstance(hty, Arrow):
        return _spines(head, hty.codomain, path + (("app", hty.domain),))
    if isinstance(hty, Prod):
        return (_spines(head, hty.left, path + (("proj", 1),))
                + _spines(head, hty.right, path + (("proj", 2),)))
    return []


def _expand(rng: random.Random, t: Term, ctx: list, rate: float) -> Term:
    """Insert beta, projection and eta redexes at random positions of ``t``."""
    cls = type(t)
    if cls is Lam:
        t = Lam(t.annotation, _expand(rng, t.body, ctx + [t.annotation], rate))
    elif cls is App:
        t = App(_expand(rng, t.fn, ctx, rate), _expand(rng, t.arg, ctx, rate))
    elif cls is Pair:
        t = Pair(_expand(rng, t.left, ctx, rate), _expand(rng, t.right, ctx, rate))
    elif cls is Proj:
        t = Proj(t.i, _expand(rng, t.of, ctx, rate))
    if rng.random() >= rate:
        return t
    ty = typecheck(t, ctx)
    kind = rng.randrange(4)
    if kind == 0:
        # (\(z: B). t) u
        b = rng.choice([ONE, bool_type(), Arrow(O, O)])
        return App(Lam(b, shift(t, 1)), _closed_filler(rng, b, [], 4))
    if kind == 1:
        u = _closed_filler(rng, ONE, [], 1)
        return Proj(1, Pair(t, u)) if rng.random() < 0.5 else Proj(2, Pair(u, t))
    if kind == 2 and isinstance(ty, Arrow):
        return Lam(ty.domain, App(shift(t, 1), Var(0)))
    if kind == 3 and isinstance(ty, Arrow):
        # \(z: A). (\(f: A -> B). f) t z
        return Lam(ty.domain, App(App(Lam(ty, Var(0)), shift(t, 1)), Var(0)))
    return t


def random_term(rng: random.Random, ty: SimpleType | None = None, rate: float = 0.3) -> Term:
    """A random well-typed closed term containing redexes."""
    ty = rng.choice(_SAMPLE_TYPES) if ty is None else ty
    base = _closed_filler(rng, ty, [], 6)
    return _expand(rng, base, [], rate)
