"""Bounded-exhaustive verification batteries.

Each battery returns a :class:`CheckResult`; the bounds are parameters so
that the test-suite and the ``verify`` command can share them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .compiler import (
    build_kit, fin_map_term, fun_collapse, fun_expand, pi_term, prod_collapse,
    prod_expand, sem_to_syn, syn_to_sem,
)
from .encodings import (
    EVEN_ONES, EVEN_UNARY, INF, ODD_TWOS, Q_ELEMS, ScopedTerm, affine_recognizer,
    dfa_to_recognizer, encode_scoped, encode_word, eval_encoded_open, is_affine,
    occ, parity_sem_recognizer, parity_syn_recognizer, run_dfa, scoped_terms,
    sem_scoped, trunc_add, trunc_scale, words,
)
from .finsem import BaseDom, DomainTooLarge, Fn, FunDom, eval_term, value_index
from .logrel import (
    fundamental_lemma_check, partial_surjection_closure_check, partial_surjections,
    random_term, types_up_to_depth,
)
from .recognizers import (
    SynRecognizer, accept_all, complement, index_parity, intersect, reject_all, union,
)
from .surface import church_type, fin_type
from .syntax import (
    O, ONE, App, Arrow, Lam, Pair, Prod, Var, bool_type, enumerate_normal_terms,
    normalize, subst_type, term_size,
)

__all__ = ["CheckResult", "SUITES", "CRITERIA", "run_suite"]


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)
    info: str = ""

    def expect(self, ok: bool, what) -> None:
        self.checked += 1
        if not ok:
            self.passed = False
            if len(self.failures) < 5:
                self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f"  first failures: {self.failures}"
        note = f"; {self.info}" if self.info else ""
        return f"[{status}] {self.name} ({self.checked} checks{note}){extra}"


def _nf_pi(i: int, k: int):
    return normalize(pi_term(i, k))


# ---------------------------------------------------------------------------
# words


def check_parity_semantic(max_len: int = 8) -> CheckResult:
    res = CheckResult("semantic recognizer for even 1s / odd 2s")
    single = parity_sem_recognizer()
    product = intersect(dfa_to_recognizer(EVEN_ONES), dfa_to_recognizer(ODD_TWOS))
    for w in words(2, max_len):
        want = run_dfa(EVEN_ONES, w) and run_dfa(ODD_TWOS, w)
        t = encode_word(w, 2)
        res.expect(single.accepts(t) == want, w)
        res.expect(product.accepts(t) == want, w)
    return res


def check_parity_syntactic(max_len: int = 6) -> CheckResult:
    res = CheckResult("syntactic recognizer for even 1s / odd 2s")
    r = parity_syn_recognizer()
    for w in words(2, max_len):
        want = run_dfa(EVEN_ONES, w) and run_dfa(ODD_TWOS, w)
        res.expect(r.accepts(encode_word(w, 2)) == want, w)
    return res


# ---------------------------------------------------------------------------
# affine terms


def check_affine(max_constructors: int = 7, open_n: int = 3, open_constructors: int = 6,
                 factor_n: int = 2, factor_constructors: int = 5) -> CheckResult:
    res = CheckResult("affine untyped terms")
    rec = affine_recognizer()
    for s in scoped_terms(0, max_constructors):
        res.expect(rec.accepts(encode_scoped(s)) == is_affine(s), s)
    ks = (0, 1, INF)
    for n in range(0, open_n + 1):
        for s in scoped_terms(n, open_constructors):
            for k in itertools.product(ks, repeat=n):
                qs = [(x, True) for x in k]
                want = 0
                for i in range(1, n + 1):
                    want = trunc_add(want, trunc_scale(occ(i, s), k[i - 1]))
                res.expect(sem_scoped(s, qs)[0] == want, ("left", s, k))
            zero = [(0, True)] * n
            res.expect(sem_scoped(s, zero)[1] == is_affine(s), ("right", s))
            if n > factor_n or s.size > factor_constructors:
                continue
            # the direct semantics factors through the encoding
            for qs in itertools.product(Q_ELEMS, repeat=n):
                res.expect(eval_encoded_open(s, qs) == sem_scoped(s, qs), ("factor", s, qs))
    return res


# ---------------------------------------------------------------------------
# syntactic -> semantic


_SMALL_SUBJECTS = [bool_type(), Arrow(O, O), church_type(1), Arrow(Prod(O, O), O), Prod(ONE, bool_type())]
_SMALL_SUBSTS = [O, bool_type(), Prod(O, O)]


def random_syn_recognizer(rng: random.Random) -> SynRecognizer:
    a = rng.choice(_SMALL_SUBJECTS)
    b = rng.choice(_SMALL_SUBSTS)
    decider = random_term(rng, Arrow(subst_type(a, b), bool_type()), rate=0.2)
    return SynRecognizer(a, b, decider, "random")


def _stream(a, max_len: int, size: int):
    yield from enumerate_normal_terms(a, size)
    if a == church_type(2):
        for w in words(2, max_len):
            yield encode_word(w, 2)
    elif a == church_type(1):
        for w in words(1, max_len):
            yield encode_word(w, 1)


def check_syn_to_sem(max_len: int = 6, size: int = 12, n_random: int = 5, seed: int = 0) -> CheckResult:
    res = CheckResult("syntactic to semantic translation")
    rng = random.Random(seed)
    recs = [parity_syn_recognizer()] + [random_syn_recognizer(rng) for _ in range(n_random)]
    for r in recs:
        s = syn_to_sem(r)
        for t in _stream(r.subject_type, max_len, size):
            res.expect(s.accepts(t) == r.accepts(t), (r.name, t))
    return res


# ---------------------------------------------------------------------------
# semantic -> syntactic


def check_sem_to_syn(max_len: int = 8, size: int = 12) -> CheckResult:
    res = CheckResult("semantic to syntactic translation")
    src = dfa_to_recognizer(EVEN_UNARY)
    compiled = sem_to_syn(src)
    kit = build_kit(church_type(1), 2)
    res.info = f"Church1 decider: m = {kit.m}, {term_size(compiled.decider)} nodes"
    for w in words(1, max_len):
        t = encode_word(w, 1)
        want = run_dfa(EVEN_UNARY, w)
        res.expect(src.accepts(t) == want, w)
        res.expect(compiled.accepts(t) == want, w)
    for a in (bool_type(), Arrow(O, O)):
        for make in (accept_all, reject_all, index_parity):
            src = make(a, 2)
            compiled = sem_to_syn(src)
            for t in enumerate_normal_terms(a, size):
                res.expect(compiled.accepts(t) == src.accepts(t), (src.name, t))
    return res


# ---------------------------------------------------------------------------
# Fin combinators


def _tables(k: int, k2: int):
    return itertools.product(range(1, k2 + 1), repeat=k)


def check_combinators(kmax: int = 3) -> CheckResult:
    res = CheckResult("Fin combinators and functoriality")
    for k, k2 in itertools.product(range(1, kmax + 1), repeat=2):
        pc, pe = prod_collapse(k, k2), prod_expand(k, k2)
        for i, j in itertools.product(range(1, k + 1), range(1, k2 + 1)):
            idx = (i - 1) * k2 + j
            res.expect(normalize(App(pc, Pair(pi_term(i, k), pi_term(j, k2)))) == _nf_pi(idx, k * k2),
                       ("prod_collapse", k, k2, i, j))
            res.expect(normalize(App(pe, pi_term(idx, k * k2)))
                       == normalize(Pair(pi_term(i, k), pi_term(j, k2))), ("prod_expand", k, k2, idx))
            res.expect(normalize(App(pc, App(pe, pi_term(idx, k * k2)))) == _nf_pi(idx, k * k2),
                       ("collapse.expand", k, k2, idx))
        fc, fe = fun_collapse(k, k2), fun_expand(k, k2)
        dom = FunDom(BaseDom(k), BaseDom(k2))
        m = k2 ** k
        for f in _tables(k, k2):
            idx = value_index(dom, Fn(dom, table=f))
            res.expect(normalize(App(fc, fin_map_term(f, k2))) == _nf_pi(idx, m), ("fun_collapse", f))
            for i in range(1, k + 1):
                res.expect(normalize(App(App(fe, pi_term(idx, m)), pi_term(i, k))) == _nf_pi(f[i - 1], k2),
                           ("fun_expand", f, i))
    for k in range(1, kmax + 1):
        ident = tuple(range(1, k + 1))
        res.expect(normalize(fin_map_term(ident, k)) == normalize(Lam(fin_type(k), Var(0))), ("id", k))
    for k, k2, k3 in itertools.product(range(1, kmax + 1), repeat=3):
        for f in _tables(k, k2):
            ff = fin_map_term(f, k2)
            for i in range(1, k + 1):
                res.expect(normalize(App(ff, pi_term(i, k))) == _nf_pi(f[i - 1], k2), ("Fin f", f, i))
            for g in _tables(k2, k3):
                gf = tuple(g[x - 1] for x in f)
                comp = Lam(fin_type(k), App(fin_map_term(g, k3), App(ff, Var(0))))
                res.expect(normalize(comp) == normalize(fin_map_term(gf, k3)), ("compose", f, g))
    return res


def check_kits(n: int = 2, size: int = 10, full_roundtrip_limit: int = 256) -> CheckResult:
    """Generator round-trips and index coherence of the embed/project kits."""
    res = CheckResult("embed/project kits")
    for a in types_up_to_depth(2) + [church_type(1)]:
        try:
            kit = build_kit(a, n)
        except ValueError:
            continue
        if kit.m > full_roundtrip_limit:
            continue
        for i in range(1, kit.m + 1):
            res.expect(normalize(App(kit.project, App(kit.embed, pi_term(i, kit.m)))) == _nf_pi(i, kit.m),
                       ("roundtrip", a, i))
        stream = list(enumerate_normal_terms(a, size))
        if a == church_type(1):
            stream += [encode_word(w, 1) for w in words(1, 6)]
        for t in stream:
            from .syntax import cast_term
            e = eval_term(t, BaseDom(n))
            res.expect(normalize(App(kit.project, cast_term(t, fin_type(n)))) == _nf_pi(e.index, kit.m),
                       ("index", a, t))
    return res


# ---------------------------------------------------------------------------
# logical relations


def check_logrel(samples: int = 200, n_bases: int = 10, max_side: int = 3, depth: int = 2,
                 seed: int = 0, max_pairs: int = 10**6) -> CheckResult:
    res = CheckResult("logical relations")
    rng = random.Random(seed)
    bases = [r for nl in range(1, max_side + 1) for nr in range(1, max_side + 1)
             for r in partial_surjections(nl, nr)]
    chosen = rng.sample(bases, min(n_bases, len(bases)))
    for _ in range(samples):
        t = random_term(rng)
        for b in chosen:
            res.expect(fundamental_lemma_check(t, b, max_pairs), ("fundamental", t, b))
    skipped = 0
    for b in bases:
        for a in types_up_to_depth(depth):
            try:
                ok = partial_surjection_closure_check(a, b, max_pairs)
            except DomainTooLarge:
                skipped += 1
                continue
            res.expect(ok, ("closure", a, b))
    res.info = f"{skipped} closure cases beyond the guard"
    return res


# ---------------------------------------------------------------------------
# Boolean combinations


def check_boolean(max_len: int = 6) -> CheckResult:
    res = CheckResult("Boolean algebra of recognizers")
    ones = dfa_to_recognizer(EVEN_ONES)
    twos = dfa_to_recognizer(ODD_TWOS)
    syn = parity_syn_recognizer()
    base = {"ones": ones, "twos": twos, "syn": syn, "nsyn": complement(syn)}
    top, bot = accept_all(church_type(2), 2), reject_all(church_type(2), 2)
    triples = list(itertools.permutations(base.values(), 3))
    ws = list(words(2, max_len))
    ts = [encode_word(w, 2) for w in ws]
    verdict = {name: [r.accepts(t) for t in ts] for name, r in base.items()}
    for w, i in zip(ws, range(len(ts))):
        res.expect(verdict["nsyn"][i] == (not verdict["syn"][i]), ("complement", w))
    for a, b in itertools.permutations(base.values(), 2):
        laws = [
            (intersect(a, b), intersect(b, a)),
            (union(a, b), union(b, a)),
            (complement(intersect(a, b)), union(complement(a), complement(b))),
            (complement(union(a, b)), intersect(complement(a), complement(b))),
            (union(a, intersect(a, b)), a),
            (intersect(a, union(a, b)), a),
        ]
        for t in ts:
            va, vb = a.accepts(t), b.accepts(t)
            res.expect(intersect(a, b).accepts(t) == (va and vb), ("and", a.name, b.name))
            res.expect(union(a, b).accepts(t) == (va or vb), ("or", a.name, b.name))
            for lhs, rhs in laws:
                res.expect(lhs.accepts(t) == rhs.accepts(t), ("law", lhs.name, rhs.name))
    for a in base.values():
        for t in ts:
            res.expect(complement(complement(a)).accepts(t) == a.accepts(t), ("double", a.name))
            res.expect(not intersect(a, complement(a)).accepts(t), ("contradiction", a.name))
            res.expect(union(a, complement(a)).accepts(t), ("excluded middle", a.name))
            res.expect(intersect(a, top).accepts(t) == a.accepts(t), ("unit and", a.name))
            res.expect(union(a, bot).accepts(t) == a.accepts(t), ("unit or", a.name))
    for a, b, c in triples:
        lhs1, rhs1 = intersect(a, union(b, c)), union(intersect(a, b), intersect(a, c))
        lhs2, rhs2 = intersect(intersect(a, b), c), intersect(a, intersect(b, c))
        for t in ts:
            res.expect(lhs1.accepts(t) == rhs1.accepts(t), ("distributivity", a.name, b.name, c.name))
            res.expect(lhs2.accepts(t) == rhs2.accepts(t), ("associativity", a.name, b.name, c.name))
    return res


# ---------------------------------------------------------------------------


CRITERIA: dict[int, tuple[str, Callable[[], CheckResult]]] = {
    1: ("parity", check_parity_semantic),
    2: ("decider", check_parity_syntactic),
    3: ("affine", check_affine),
    4: ("syn2sem", check_syn_to_sem),
    5: ("sem2syn", check_sem_to_syn),
    6: ("combinators", check_combinators),
    7: ("logrel", check_logrel),
    8: ("boolean", check_boolean),
}

SUITES: dict[str, Callable[[], CheckResult]] = {name: fn for name, fn in CRITERIA.values()}
SUITES["kits"] = check_kits


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        return [fn() for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return [SUITES[name]()]
