"""Church encodings of words, DFAs as recognizers, and the encoding of
untyped lambda-terms with its affineness-detecting semantics."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence

from .finsem import BaseDom, Fn, FunDom, FinElem, denote_type, eval_value
from .recognizers import SemRecognizer, SynRecognizer
from .surface import ParseError, church_type, parse_term, parse_type, untyped_terms_type
from .syntax import (
    O, App, Arrow, Lam, Proj, SimpleType, StlcTypeError, Term, Var,
    normalize, power, proj_term, typecheck,
)

__all__ = [
    "Word", "Dfa", "run_dfa", "dfa_to_recognizer", "church_type",
    "encode_word", "decode_word", "words",
    "UVar", "UAbs", "UApp", "ScopedTerm", "encode_scoped", "encode_open",
    "decode_scoped", "occ", "is_affine", "scoped_terms", "parse_untyped",
    "print_untyped", "untyped_terms_type",
    "INF", "Q_INDEX", "Q_ELEMS", "trunc_add", "trunc_scale", "fabs_q", "fapp_q",
    "sem_scoped", "affine_recognizer", "fabs_value", "fapp_value",
    "EVEN_ONES", "ODD_TWOS", "EVEN_UNARY", "parity_sem_recognizer",
    "parity_syn_recognizer", "PARITY_DECIDER",
]

Word = tuple


# ---------------------------------------------------------------------------
# words and DFAs


def words(n: int, max_len: int) -> Iterator[Word]:
    """All words over ``1..n`` of length at most ``max_len``, shortest first."""
    for k in range(max_len + 1):
        yield from product(range(1, n + 1), repeat=k)


def encode_word(w: Sequence[int], n: int | None = None) -> Term:
    """Church encoding ``\\(a: (o -> o)^n). \\(e: o). a_wk (... (a_w1 e))``."""
    w = tuple(w)
    if n is None:
        n = max(w, default=1)
    if any(not 1 <= c <= n for c in w):
        raise ValueError(f"letters of {w} must lie in 1..{n}")
    body: Term = Var(0)
    for c in w:
        body = App(proj_term(Var(1), c, n), body)
    return Lam(power(Arrow(O, O), n), Lam(O, body))


def _church_arity(a: SimpleType) -> int:
    for n in range(1, 64):
        if church_type(n) == a:
            return n
    raise StlcTypeError(f"{a!r} is not a Church_n type")


def _proj_index(t: Term, n: int) -> tuple[int, Term]:
    """Invert :func:`proj_term`: returns ``(i, core)``."""
    first = type(t) is Proj and t.i == 1
    if first:
        t = t.of
    twos = 0
    while type(t) is Proj and t.i == 2:
        twos += 1
        t = t.of
    i = twos + 1
    if (first and i >= n) or (not first and i != n):
        raise ValueError("not an n-ary projection")
    return i, t


def decode_word(t: Term) -> Word:
    n = _church_arity(typecheck(t))
    nf = normalize(t)
    body = nf.body.body
    out = []
    while type(body) is App:
        i, core = _proj_index(body.fn, n)
        if core != Var(1):
            raise ValueError("not a Church numeral body")
        out.append(i)
        body = body.arg
    if body != Var(0):
        raise ValueError("not a Church numeral body")
    return tuple(reversed(out))


@dataclass(frozen=True)
class Dfa:
    """Complete DFA over letters ``1..alphabet`` and states ``1..states``.

    ``delta[c - 1][q - 1]`` is the successor of state ``q`` on letter ``c``.
    """

    alphabet: int
    states: int
    initial: int
    accepting: frozenset
    delta: tuple

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        if self.alphabet < 1 or self.states < 1:
            raise ValueError("alphabet and state set must be non-empty")
        if not 1 <= self.initial <= self.states:
            raise ValueError("initial state out of range")
        if any(not 1 <= q <= self.states for q in self.accepting):
            raise ValueError("accepting state out of range")
        if len(self.delta) != self.alphabet or any(len(r) != self.states for r in self.delta):
            raise ValueError("delta must have one row per letter and one entry per state")
        if any(not 1 <= q <= self.states for r in self.delta for q in r):
            raise ValueError("transition target out of range")

    @classmethod
    def from_json(cls, data: dict | str | Path) -> "Dfa":
        if isinstance(data, Path) or (isinstance(data, str) and not data.lstrip().startswith("{")):
            data = json.loads(Path(data).read_text(encoding="utf-8"))
        elif isinstance(data, str):
            data = json.loads(data)
        return cls(data["alphabet"], data["states"], data["initial"], data["accepting"], data["delta"])

    def to_json(self) -> dict:
        return {"alphabet": self.alphabet, "states": self.states, "initial": self.initial,
                "accepting": sorted(self.accepting), "delta": [list(r) for r in self.delta]}


def run_dfa(d: Dfa, w: Sequence[int]) -> bool:
    q = d.initial
    for c in w:
        q = d.delta[c - 1][q - 1]
    return q in d.accepting


def dfa_to_recognizer(d: Dfa) -> SemRecognizer:
    """Accepts ``f`` in ``[[Church_n]]_Q`` iff ``f(delta_1, ..., delta_n)(q0)`` is accepting."""
    a = church_type(d.alphabet)
    q = BaseDom(d.states)
    qq = FunDom(q, q)
    deltas = [Fn(qq, table=row) for row in d.delta]
    args = deltas[-1]
    for x in reversed(deltas[:-1]):
        args = (x, args)

    def accepting(f: FinElem) -> bool:
        return f.value(args)(d.initial) in d.accepting

    return SemRecognizer(a, q, accepting, "dfa")



# Q = {T = 1, F = 2}; letter 1 flips the state of EVEN_ONES, letter 2 that of ODD_TWOS.
EVEN_ONES = Dfa(2, 2, 1, frozenset({1}), ((2, 1), (1, 2)))
ODD_TWOS = Dfa(2, 2, 2, frozenset({1}), ((1, 2), (2, 1)))
EVEN_UNARY = Dfa(1, 2, 1, frozenset({1}), ((2, 1),))


def parity_sem_recognizer() -> SemRecognizer:
    """Words over ``{1, 2}`` with an even number of 1s and an odd number of 2s:
    ``f(swap, id)(T) = T`` and ``f(id, swap)(F) = T`` at the base ``{T, F}``."""
    q = BaseDom(2)
    qq = FunDom(q, q)
    swap, ident = Fn(qq, table=(2, 1)), Fn(qq, table=(1, 2))

    def accepting(f: FinElem) -> bool:
        return f.value((swap, ident))(1) == 1 and f.value((ident, swap))(2) == 1

    return SemRecognizer(church_type(2), q, accepting, "even-ones-odd-twos")


PARITY_DECIDER = "\\(w: Church2[Bool]). and <w <not, id> true, w <id, not> false>"


def parity_syn_recognizer() -> SynRecognizer:
    """The same language decided by a term: run the word on Booleans twice,
    once flipping on 1s from true, once flipping on 2s from false."""
    return SynRecognizer(church_type(2), parse_type("Bool"), parse_term(PARITY_DECIDER),
                         "even-ones-odd-twos")

# ---------------------------------------------------------------------------
# untyped terms with de Bruijn indices (1-based)


@dataclass(frozen=True)
class UVar:
    i: int


@dataclass(frozen=True)
class UAbs:
    body: object


@dataclass(frozen=True)
class UApp:
    fn: object
    arg: object


def _scoped(n: int, u) -> bool:
    if isinstance(u, UVar):
        return 1 <= u.i <= n
    if isinstance(u, UAbs):
        return _scoped(n + 1, u.body)
    return _scoped(n, u.fn) and _scoped(n, u.arg)


def _constructors(u) -> int:
    if isinstance(u, UVar):
        return 1
    if isinstance(u, UAbs):
        return 1 + _constructors(u.body)
    return 1 + _constructors(u.fn) + _constructors(u.arg)


@dataclass(frozen=True)
class ScopedTerm:
    """A judgment ``n |- u``: every index of ``u`` is bound or at most ``n``."""

    n: int
    u: object

    def __post_init__(self):
        if self.n < 0 or not _scoped(self.n, self.u):
            raise ValueError(f"{self.n} |- {self.u!r} is not derivable")

    @property
    def size(self) -> int:
        return _constructors(self.u)


def encode_open(s: ScopedTerm) -> Term:
    """Encoding of ``n |- u`` as a term of type ``o`` in the context
    ``l: (o -> o) -> o, a: o -> o -> o, x_1: o, ..., x_n: o``."""
    def enc(n: int, u) -> Term:
        if isinstance(u, UVar):
            return Var(u.i - 1)
        if isinstance(u, UAbs):
            return App(Var(n + 1), Lam(O, enc(n + 1, u.body)))
        return App(App(Var(n), enc(n, u.fn)), enc(n, u.arg))
    return enc(s.n, s.u)


def gamma(n: int) -> list[SimpleType]:
    lam_t = untyped_terms_type()
    return [lam_t.domain, lam_t.codomain.domain] + [O] * n


def encode_scoped(s: ScopedTerm) -> Term:
    """Closed term of type ``Untyped`` for a closed scoped term."""
    if s.n != 0:
        raise ValueError("encode_scoped needs a closed term; use encode_open")
    lam_t = untyped_terms_type()
    return Lam(lam_t.domain, Lam(lam_t.codomain.domain, encode_open(s)))


def decode_scoped(t: Term) -> ScopedTerm:
    if typecheck(t) != untyped_terms_type():
        raise StlcTypeError("expected a closed term of type Untyped")
    nf = normalize(t)

    def dec(n: int, b: Term):
        if type(b) is Var:
            if b.index < n:
                return UVar(b.index + 1)
        elif type(b) is App:
            if b.fn == Var(n + 1) and type(b.arg) is Lam:
                return UAbs(dec(n + 1, b.arg.body))
            if type(b.fn) is App and b.fn.fn == Var(n):
                return UApp(dec(n, b.fn.arg), dec(n, b.arg))
        raise ValueError(f"unexpected normal form shape: {b!r}")

    return ScopedTerm(0, dec(0, nf.body.body))


def occ(i: int, s: ScopedTerm) -> int:
    """Occurrences of the ``i``-th free variable of ``s``."""
    if not 1 <= i <= s.n:
        raise ValueError(f"variable {i} is not in scope 1..{s.n}")

    def go(i: int, u) -> int:
        if isinstance(u, UVar):
            return 1 if u.i == i else 0
        if isinstance(u, UAbs):
            return go(i + 1, u.body)
        return go(i, u.fn) + go(i, u.arg)
    return go(i, s.u)


def is_affine(s: ScopedTerm) -> bool:
    """Affine in its bound variables: every binder is used at most once."""
    def go(n: int, u) -> bool:
        if isinstance(u, UVar):
            return True
        if isinstance(u, UAbs):
            return occ(1, ScopedTerm(n + 1, u.body)) <= 1 and go(n + 1, u.body)
        return go(n, u.fn) and go(n, u.arg)
    return go(s.n, s.u)


def scoped_terms(n: int, max_constructors: int) -> Iterator[ScopedTerm]:
    """Every scoped term ``n |- u`` with at most ``max_constructors`` constructors."""
    memo: dict = {}

    def exact(n: int, k: int) -> list:
        key = (n, k)
        if key in memo:
            return memo[key]
        out: list = []
        if k == 1:
            out = [UVar(i) for i in range(1, n + 1)]
        elif k > 1:
            out = [UAbs(b) for b in exact(n + 1, k - 1)]
            for k1 in range(1, k - 1):
                fs = exact(n, k1)
                if fs:
                    for f in fs:
                        for a in exact(n, k - 1 - k1):
                            out.append(UApp(f, a))
        memo[key] = out
        return out

    for k in range(1, max_constructors + 1):
        for u in exact(n, k):
            yield ScopedTerm(n, u)


def parse_untyped(text: str) -> ScopedTerm:
    """Parse ``\\x. t``, application by juxtaposition and named variables
    into a closed scoped term."""
    import re
    toks = re.findall(r"[a-zA-Z_][a-zA-Z0-9_']*|[\\λ().]", text)
    if "".join(toks) != re.sub(r"\s+", "", text):
        raise ParseError("unexpected character in untyped term", 0, text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def term(scope):
        nonlocal pos
        if peek() in ("\\", "λ"):
            pos += 1
            name = peek()
            if name is None or not re.match(r"[a-zA-Z_]", name):
                raise ParseError("expected binder name", pos, text)
            pos += 1
            if peek() != ".":
                raise ParseError("expected '.'", pos, text)
            pos += 1
            return UAbs(term(scope + [name]))
        t = atom(scope)
        while peek() is not None and peek() not in (")",):
            if peek() in ("\\", "λ"):
                return UApp(t, term(scope))
            t = UApp(t, atom(scope))
        return t

    def atom(scope):
        nonlocal pos
        tok = peek()
        if tok == "(":
            pos += 1
            t = term(scope)
            if peek() != ")":
                raise ParseError("expected ')'", pos, text)
            pos += 1
            return t
        if tok is None or not re.match(r"[a-zA-Z_]", tok):
            raise ParseError(f"unexpected token {tok!r}", pos, text)
        pos += 1
        if tok not in scope:
            raise ParseError(f"unbound variable {tok!r}", pos, text)
        return UVar(len(scope) - max(k for k, v in enumerate(scope) if v == tok))

    u = term([])
    if pos != len(toks):
        raise ParseError("trailing input", pos, text)
    return ScopedTerm(0, u)


def print_untyped(s: ScopedTerm) -> str:
    def go(u, depth: int, prec: int) -> str:
        if isinstance(u, UVar):
            lvl = depth - u.i
            return f"x{lvl + 1}" if lvl >= 0 else f"free{-lvl}"
        if isinstance(u, UAbs):
            r = f"\\x{depth + 1}. {go(u.body, depth + 1, 0)}"
            return f"({r})" if prec > 0 else r
        r = f"{go(u.fn, depth, 1)} {go(u.arg, depth, 2)}"
        return f"({r})" if prec > 1 else r
    return go(s.u, s.n, 0)


# ---------------------------------------------------------------------------
# the affineness semantics over Q = {0, 1, inf} x {T, F}

INF = "inf"
_KS = (0, 1, INF)
# (0,T)=1, (1,T)=2, (inf,T)=3, (0,F)=4, (1,F)=5, (inf,F)=6
Q_ELEMS = tuple((k, b) for b in (True, False) for k in _KS)
Q_INDEX = {q: i + 1 for i, q in enumerate(Q_ELEMS)}


def trunc_add(k1, k2):
    if k1 == 0:
        return k2
    if k2 == 0:
        return k1
    return INF


def trunc_scale(n: int, k):
    """``n . k`` in the truncated monoid (``k`` added ``n`` times)."""
    acc = 0
    for _ in range(min(n, 2)):
        acc = trunc_add(acc, k)
    return acc


def fapp_q(q):
    return lambda q2: (trunc_add(q[0], q2[0]), q[1] and q2[1])


def fabs_q(g):
    g0 = g((0, True))
    return (g0[0], g0[1] and g((1, True))[0] != INF)


def sem_scoped(s: ScopedTerm, qs: Sequence, fabs=fabs_q, fapp=fapp_q):
    """Direct semantics of ``n |- u`` at ``[q_1, ..., q_n]``."""
    if len(qs) != s.n:
        raise ValueError(f"expected {s.n} arguments")

    def go(u, env: tuple):
        if isinstance(u, UVar):
            return env[u.i - 1]
        if isinstance(u, UAbs):
            return fabs(lambda q: go(u.body, (q,) + env))
        return fapp(go(u.fn, env))(go(u.arg, env))
    return go(s.u, tuple(qs))


_Q = BaseDom(6)
_QQ = FunDom(_Q, _Q)


def _fabs_raw(g: Fn) -> int:
    return Q_INDEX[fabs_q(lambda q: Q_ELEMS[g(Q_INDEX[q]) - 1])]


def fabs_value() -> Fn:
    """``fabs`` as an element of ``[[(o -> o) -> o]]_Q``."""
    return Fn(FunDom(_QQ, _Q), fn=_fabs_raw)


def fapp_value() -> Fn:
    """``fapp`` as an element of ``[[o -> o -> o]]_Q``."""
    rows = []
    for q in Q_ELEMS:
        f = fapp_q(q)
        rows.append(Fn(_QQ, table=tuple(Q_INDEX[f(q2)] for q2 in Q_ELEMS)))
    return Fn(FunDom(_Q, _QQ), table=tuple(rows))


def affine_recognizer() -> SemRecognizer:
    """Accepts ``s`` in ``[[Untyped]]_Q`` iff ``s(fabs)(fapp) = (0, T)``."""
    fabs, fapp = fabs_value(), fapp_value()
    target = Q_INDEX[(0, True)]

    def accepting(s: FinElem) -> bool:
        return s.value(fabs)(fapp) == target

    return SemRecognizer(untyped_terms_type(), _Q, accepting, "affine")


def eval_encoded_open(s: ScopedTerm, qs: Sequence) -> tuple:
    """``[[<<n |- u>>]](fabs)(fapp)(q_n, ..., q_1)`` as an element of ``Q``."""
    env = [fabs_value(), fapp_value()] + [Q_INDEX[q] for q in reversed(tuple(qs))]
    _, v = eval_value(encode_open(s), _Q, env, gamma(s.n))
    return Q_ELEMS[v - 1]
