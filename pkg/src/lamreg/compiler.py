"""Translations between syntactic and semantic recognizers.

``syn_to_sem`` evaluates the decider in finite sets at the 2-element base.
``sem_to_syn`` goes the other way: the finite set ``{1..k}`` is encoded
as the type ``Fin k = o^k -> o`` whose closed inhabitants are exactly the
projections ``pi_i``, and for every type ``A`` a pair of terms

    embed_A   : Fin m -> A[Fin n]
    project_A : A[Fin n] -> Fin m        (m = |[[A]]_n|)

is built by induction on ``A``.  ``project_A`` sends ``t[Fin n]`` to
``pi_i`` where ``i`` is the canonical index of ``[[t]]_n``; composing it
with ``Fin(chi)`` for the characteristic function ``chi`` of the accepting
set gives the decider.

The combinator terms follow the left-major product order and the
most-significant-first function tables of :mod:`lamreg.finsem`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .finsem import (
    BaseDom, DomainTooLarge, FinElem, denote_type, domain_size, elem_at,
    eval_value, fits, transport, value_at, value_index,
)
from .recognizers import SemRecognizer, SynRecognizer
from .surface import fin_type, print_type
from .syntax import (
    O, TRUE, UNIT, App, Arrow, Base, Lam, Pair, Prod, Proj, SimpleType,
    Term, Unit, Var, power, proj_term, subst_type, tuple_term,
)

__all__ = [
    "MAX_WIDTH", "fin_type", "pi_term", "fin_map_term", "prod_collapse",
    "prod_expand", "fun_collapse", "fun_expand", "FinCombinatorKit",
    "build_kit", "sem_to_syn", "syn_to_sem", "as_cardinal_base",
    "SizeGuardError",
]

MAX_WIDTH = 1 << 16


class SizeGuardError(ValueError):
    """A compiled tuple would be wider than the active guard."""


def _guard(m: int, what: str, limit: int) -> None:
    if m > limit:
        raise SizeGuardError(f"{what}: width {m} exceeds the size guard {limit}")


@lru_cache(maxsize=None)
def pi_term(i: int, k: int) -> Term:
    """``\\(x: o^k). x_i``."""
    if not 1 <= i <= k:
        raise ValueError(f"pi_{i} needs 1 <= i <= {k}")
    return Lam(power(O, k), proj_term(Var(0), i, k))


def fin_map_term(f: Sequence[int], k2: int) -> Term:
    """``Fin(f) = \\(p: Fin k). \\(x: o^k2). p <x_f(1), ..., x_f(k)>``.

    ``f`` is the table of a map ``1..k -> 1..k2`` (``k = len(f)``).
    """
    k = len(f)
    if k < 1 or k2 < 1:
        raise ValueError("Fin needs non-empty sets")
    if any(not 1 <= j <= k2 for j in f):
        raise ValueError(f"map values must lie in 1..{k2}")
    x = Var(0)
    return Lam(fin_type(k), Lam(power(O, k2),
               App(Var(1), tuple_term([proj_term(x, j, k2) for j in f]))))


@lru_cache(maxsize=None)
def _fin_map_cached(f: tuple, k2: int) -> Term:
    return fin_map_term(f, k2)


@lru_cache(maxsize=None)
def prod_collapse(k: int, k2: int, limit: int = MAX_WIDTH) -> Term:
    """``Fin k * Fin k2 -> Fin (k k2)``:
    ``\\p. \\(x: o^(k k2)). p.1 <Fin(1 x Id) p.2 x, ..., Fin(k x Id) p.2 x>``."""
    _guard(k * k2, "prod_collapse", limit)
    kk = k * k2
    p, x = Var(1), Var(0)
    items = []
    for i in range(1, k + 1):
        shift_i = _fin_map_cached(tuple((i - 1) * k2 + j for j in range(1, k2 + 1)), kk)
        items.append(App(App(shift_i, Proj(2, p)), x))
    return Lam(Prod(fin_type(k), fin_type(k2)),
               Lam(power(O, kk), App(Proj(1, p), tuple_term(items))))


@lru_cache(maxsize=None)
def prod_expand(k: int, k2: int, limit: int = MAX_WIDTH) -> Term:
    """``Fin (k k2) -> Fin k * Fin k2``, the pair of ``Fin`` of the two index projections."""
    _guard(k * k2, "prod_expand", limit)
    fst = tuple(idx // k2 + 1 for idx in range(k * k2))
    snd = tuple(idx % k2 + 1 for idx in range(k * k2))
    p = Var(0)
    return Lam(fin_type(k * k2),
               Pair(App(_fin_map_cached(fst, k), p), App(_fin_map_cached(snd, k2), p)))


@lru_cache(maxsize=None)
def fun_collapse(k: int, k2: int, limit: int = MAX_WIDTH) -> Term:
    """``(Fin k -> Fin k2) -> Fin (k2^k)``: tuple ``<F pi_1, ..., F pi_k>``
    folded from the right with :func:`prod_collapse`."""
    _guard(k2 ** k, "fun_collapse", limit)
    f = Var(0)
    acc = App(f, pi_term(k, k))
    for j in range(k - 1, 0, -1):
        acc = App(prod_collapse(k2, k2 ** (k - j), limit), Pair(App(f, pi_term(j, k)), acc))
    return Lam(Arrow(fin_type(k), fin_type(k2)), acc)


@lru_cache(maxsize=None)
def fun_expand(k: int, k2: int, limit: int = MAX_WIDTH) -> Term:
    """``Fin (k2^k) -> Fin k -> Fin k2``: pair the code with the argument,
    collapse, then apply ``Fin`` of the evaluation map."""
    m = k2 ** k
    _guard(m * k, "fun_expand", limit)
    ev = []
    for a in range(m):
        digits = []
        rest = a
        for _ in range(k):
            rest, r = divmod(rest, k2)
            digits.append(r + 1)
        ev.extend(reversed(digits))
    p, q = Var(1), Var(0)
    body = App(_fin_map_cached(tuple(ev), k2), App(prod_collapse(m, k, limit), Pair(p, q)))
    return Lam(fin_type(m), Lam(fin_type(k), body))


@dataclass(frozen=True)
class FinCombinatorKit:
    """``embed : Fin m -> A[Fin n]`` and ``project : A[Fin n] -> Fin m``."""

    subject_type: SimpleType
    n: int
    m: int
    embed: Term
    project: Term

    @property
    def cast_type(self) -> SimpleType:
        return subst_type(self.subject_type, fin_type(self.n))


def build_kit(a: SimpleType, n: int, limit: int = MAX_WIDTH) -> FinCombinatorKit:
    if n < 1:
        raise ValueError("base cardinality must be >= 1")
    return _build_kit(a, n, limit)


@lru_cache(maxsize=None)
def _build_kit(a: SimpleType, n: int, limit: int) -> FinCombinatorKit:
    fn = fin_type(n)
    if isinstance(a, Base):
        ident = Lam(fn, Var(0))
        return FinCombinatorKit(a, n, n, ident, ident)
    if isinstance(a, Unit):
        return FinCombinatorKit(a, n, 1, Lam(fin_type(1), UNIT), Lam(a, Lam(O, Var(0))))
    y = Var(0)
    if isinstance(a, Prod):
        k1 = _build_kit(a.left, n, limit)
        k2 = _build_kit(a.right, n, limit)
        m = k1.m * k2.m
        _guard(m, f"kit for {print_type(a)}", limit)
        t = subst_type(a, fn)
        project = Lam(t, App(prod_collapse(k1.m, k2.m, limit),
                             Pair(App(k1.project, Proj(1, y)), App(k2.project, Proj(2, y)))))
        e = App(prod_expand(k1.m, k2.m, limit), y)
        embed = Lam(fin_type(m), Pair(App(k1.embed, Proj(1, e)), App(k2.embed, Proj(2, e))))
        return FinCombinatorKit(a, n, m, embed, project)
    k1 = _build_kit(a.domain, n, limit)
    k2 = _build_kit(a.codomain, n, limit)
    if k2.m > 1 and k1.m * math.log2(k2.m) > math.log2(limit) + 1:
        raise SizeGuardError(f"kit for {print_type(a)}: width {k2.m}^{k1.m} exceeds the size guard {limit}")
    m = k2.m ** k1.m
    _guard(m, f"kit for {print_type(a)}", limit)
    t = subst_type(a, fn)
    # project: \(y: T1 -> T2). collapse (\(p: Fin m1). project2 (y (embed1 p)))
    inner = Lam(fin_type(k1.m), App(k2.project, App(Var(1), App(k1.embed, Var(0)))))
    project = Lam(t, App(fun_collapse(k1.m, k2.m, limit), inner))
    # embed: \(p: Fin m). \(z: T1). embed2 (expand p (project1 z))
    embed = Lam(fin_type(m), Lam(subst_type(a.domain, fn),
                App(k2.embed, App(App(fun_expand(k1.m, k2.m, limit), Var(1)),
                                  App(k1.project, Var(0))))))
    return FinCombinatorKit(a, n, m, embed, project)


def as_cardinal_base(r: SemRecognizer) -> SemRecognizer:
    """Re-express a recognizer over a structured base as one over ``BaseDom(k)``,
    transporting points along the canonical enumeration of the base."""
    if isinstance(r.base, BaseDom):
        return r
    src = r.base
    dst = BaseDom(domain_size(src))
    _, back = transport(r.subject_type, src, dst,
                        lambda v: value_index(src, v), lambda i: value_at(src, i))
    d_src = denote_type(r.subject_type, src)
    acc = r.accepting
    return SemRecognizer(r.subject_type, dst, lambda e: acc(FinElem(d_src, back(e.value))),
                         r.name)


def sem_to_syn(r: SemRecognizer, limit: int = MAX_WIDTH) -> SynRecognizer:
    """Decider ``\\(y: A[Fin n]). Fin(chi) (project_A y)`` with ``B = Fin n``."""
    if not isinstance(r, SemRecognizer):
        raise TypeError("sem_to_syn needs a single-base SemRecognizer")
    r = as_cardinal_base(r)
    n = r.base.k
    a = r.subject_type
    d = denote_type(a, r.base)
    if not fits(d, limit):
        raise SizeGuardError(f"[[{print_type(a)}]]_{n} exceeds the size guard {limit}")
    kit = build_kit(a, n, limit)
    chi = tuple(1 if r.accepting(elem_at(d, i)) else 2 for i in range(1, kit.m + 1))
    decider = Lam(kit.cast_type, App(fin_map_term(chi, 2), App(kit.project, Var(0))))
    return SynRecognizer(a, fin_type(n), decider, f"sem2syn({r.name})")


def syn_to_sem(r: SynRecognizer, max_table: int | None = None) -> SemRecognizer:
    """``F = {q : [[r]]_2 (q) = [[true]]_2}`` over the base ``[[B]]_2``."""
    two = BaseDom(2)
    base = denote_type(r.subst, two)
    try:
        domain_size(base)
    except DomainTooLarge as e:
        raise SizeGuardError(f"[[{print_type(r.subst)}]]_2 is too large to serve as a base") from e
    if max_table is not None and not fits(base, max_table):
        raise SizeGuardError(f"[[{print_type(r.subst)}]]_2 exceeds the size guard {max_table}")
    _, rv = eval_value(r.decider, two)
    _, tv = eval_value(TRUE, two)

    def accepting(q: FinElem) -> bool:
        return rv(q.value) == tv

    return SemRecognizer(r.subject_type, base, accepting, f"syn2sem({r.name})")
