"""Semantic and syntactic recognizers, and their Boolean combinations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Protocol

from .finsem import (
    BaseDom, FinDomain, FinElem, DomainTooLarge, denote_type, domain_size,
    enumerate_domain, eval_term, fits,
)
from .syntax import (
    AND, FALSE, NOT, O, TRUE, App, Arrow, Lam, Pair, Prod, Proj, SimpleType,
    StlcTypeError, Term, Var, bool_type, cast_term, normalize_at, power,
    subst_type, typecheck,
)

__all__ = [
    "Recognizer", "SemRecognizer", "ProductSemRecognizer", "SynRecognizer",
    "LanguageCombination", "OR",
    "sem_accepts", "syn_accepts", "complement", "intersect", "union",
    "equivalence_on", "accept_all", "reject_all", "index_parity",
    "MATERIALIZE_BOUND",
]

MATERIALIZE_BOUND = 10**6

_BOOL = bool_type()
_O2 = power(O, 2)
# or := \(p: Bool*Bool). \(x: o*o). p.1 <x.1, p.2 x>
OR = Lam(Prod(_BOOL, _BOOL), Lam(_O2, App(Proj(1, Var(1)), Pair(Proj(1, Var(0)), App(Proj(2, Var(1)), Var(0))))))


class Recognizer(Protocol):
    subject_type: SimpleType

    def accepts(self, t: Term) -> bool: ...


def _check_subject(a: SimpleType, t: Term) -> None:
    ty = typecheck(t)
    if ty != a:
        raise StlcTypeError(f"term has type {ty!r}, recognizer expects {a!r}")


@dataclass(frozen=True)
class SemRecognizer:
    """``L(F) = {t : [[t]]_base in F}`` with ``F`` given as a predicate."""

    subject_type: SimpleType
    base: FinDomain
    accepting: Callable[[FinElem], bool] = field(compare=False)
    name: str = "sem"

    @property
    def domain(self) -> FinDomain:
        return denote_type(self.subject_type, self.base)

    def point(self, t: Term) -> FinElem:
        _check_subject(self.subject_type, t)
        return eval_term(t, self.base)

    def accepts(self, t: Term) -> bool:
        return bool(self.accepting(self.point(t)))

    def materialize(self, bound: int = MATERIALIZE_BOUND) -> frozenset[int]:
        """Indices of the accepting points, by full enumeration."""
        d = self.domain
        if not fits(d, bound):
            raise DomainTooLarge(f"{d!r} exceeds the materialization bound {bound}")
        return frozenset(e.index for e in enumerate_domain(d) if self.accepting(e))

    @classmethod
    def from_set(cls, subject_type: SimpleType, base: FinDomain, indices: Iterable[int],
                 name: str = "sem") -> "SemRecognizer":
        s = frozenset(indices)
        n = domain_size(denote_type(subject_type, base))
        if any(not 1 <= i <= n for i in s):
            raise ValueError("accepting index out of range")
        return cls(subject_type, base, lambda e: e.index in s, name)

    def complement(self) -> "SemRecognizer":
        acc = self.accepting
        return SemRecognizer(self.subject_type, self.base, lambda e: not acc(e), f"not({self.name})")


@dataclass(frozen=True)
class ProductSemRecognizer:
    """Recognizer at the object ``(Q, Q')`` of the product of two copies of finite sets.

    A point is the pair of the two interpretations; the accepting set is
    given by combining the component predicates with ``combine``.
    """

    first: "SemRecognizer | ProductSemRecognizer"
    second: "SemRecognizer | ProductSemRecognizer"
    combine: Callable[[bool, bool], bool] = field(compare=False)
    name: str = "product"

    def __post_init__(self):
        if self.first.subject_type != self.second.subject_type:
            raise StlcTypeError("subject types differ")

    @property
    def subject_type(self) -> SimpleType:
        return self.first.subject_type

    @property
    def base(self) -> tuple:
        return (self.first.base, self.second.base)

    def point(self, t: Term) -> tuple:
        return (self.first.point(t), self.second.point(t))

    def accepts(self, t: Term) -> bool:
        _check_subject(self.subject_type, t)
        return bool(self.combine(self.first.accepts(t), self.second.accepts(t)))

    def complement(self) -> "ProductSemRecognizer":
        c = self.combine
        return ProductSemRecognizer(self.first, self.second, lambda a, b: not c(a, b),
                                    f"not({self.name})")


@dataclass(frozen=True)
class SynRecognizer:
    """``L = {t : r t[B] =be true}`` for a closed ``r : A[B] -> Bool``."""

    subject_type: SimpleType
    subst: SimpleType
    decider: Term
    name: str = "syn"

    def __post_init__(self):
        want = Arrow(subst_type(self.subject_type, self.subst), _BOOL)
        got = typecheck(self.decider)
        if got != want:
            raise StlcTypeError(f"decider has type {got!r}, expected {want!r}")

    def accepts(self, t: Term) -> bool:
        _check_subject(self.subject_type, t)
        nf = normalize_at(App(self.decider, cast_term(t, self.subst)), _BOOL)
        if nf == TRUE:
            return True
        if nf == FALSE:
            return False
        raise AssertionError(f"closed Boolean normalized to neither true nor false: {nf!r}")

    @property
    def cast_type(self) -> SimpleType:
        return subst_type(self.subject_type, self.subst)

    def complement(self) -> "SynRecognizer":
        r = Lam(self.cast_type, App(NOT, App(self.decider, Var(0))))
        return SynRecognizer(self.subject_type, self.subst, r, f"not({self.name})")


@dataclass(frozen=True)
class LanguageCombination:
    """Verdict-level Boolean combination of two recognizers."""

    first: object
    second: object
    combine: Callable[[bool, bool], bool] = field(compare=False)
    name: str = "combination"

    def __post_init__(self):
        if self.first.subject_type != self.second.subject_type:
            raise StlcTypeError("subject types differ")

    @property
    def subject_type(self) -> SimpleType:
        return self.first.subject_type

    def accepts(self, t: Term) -> bool:
        return bool(self.combine(self.first.accepts(t), self.second.accepts(t)))

    def complement(self) -> "LanguageCombination":
        c = self.combine
        return LanguageCombination(self.first, self.second, lambda a, b: not c(a, b),
                                   f"not({self.name})")


def sem_accepts(r, t: Term) -> bool:
    return r.accepts(t)


def syn_accepts(r: SynRecognizer, t: Term) -> bool:
    return r.accepts(t)


def complement(r):
    return r.complement()


def _binary(r1, r2, op: str):
    if r1.subject_type != r2.subject_type:
        raise StlcTypeError("subject types differ")
    combine = (lambda a, b: a and b) if op == "and" else (lambda a, b: a or b)
    name = f"{op}({r1.name}, {r2.name})"
    sem = (SemRecognizer, ProductSemRecognizer)
    if isinstance(r1, sem) and isinstance(r2, sem):
        return ProductSemRecognizer(r1, r2, combine, name)
    if isinstance(r1, SynRecognizer) and isinstance(r2, SynRecognizer) and r1.subst == r2.subst:
        y = Var(0)
        body = App(AND if op == "and" else OR, Pair(App(r1.decider, y), App(r2.decider, y)))
        return SynRecognizer(r1.subject_type, r1.subst, Lam(r1.cast_type, body), name)
    return LanguageCombination(r1, r2, combine, name)


def intersect(r1, r2):
    return _binary(r1, r2, "and")


def union(r1, r2):
    return _binary(r1, r2, "or")


def equivalence_on(r1, r2, terms: Iterable[Term]) -> Term | None:
    """First term on which the two recognizers disagree, or ``None``."""
    if r1.subject_type != r2.subject_type:
        raise StlcTypeError("subject types differ")
    for t in terms:
        if r1.accepts(t) != r2.accepts(t):
            return t
    return None


def accept_all(a: SimpleType, base: FinDomain | int = 1) -> SemRecognizer:
    base = BaseDom(base) if isinstance(base, int) else base
    return SemRecognizer(a, base, lambda e: True, "accept-all")


def reject_all(a: SimpleType, base: FinDomain | int = 1) -> SemRecognizer:
    base = BaseDom(base) if isinstance(base, int) else base
    return SemRecognizer(a, base, lambda e: False, "reject-all")


def index_parity(a: SimpleType, base: FinDomain | int = 2) -> SemRecognizer:
    """Accepts the terms whose denotation has an even canonical index."""
    base = BaseDom(base) if isinstance(base, int) else base
    return SemRecognizer(a, base, lambda e: e.index % 2 == 0, "parity")
