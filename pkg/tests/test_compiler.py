import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamreg.compiler import (
    SizeGuardError, as_cardinal_base, build_kit, fin_map_term, fun_collapse, fun_expand,
    pi_term, prod_collapse, prod_expand, sem_to_syn, syn_to_sem,
)
from lamreg.encodings import (
    EVEN_ONES, EVEN_UNARY, dfa_to_recognizer, encode_word, parity_syn_recognizer, run_dfa, words,
)
from lamreg.finsem import BaseDom, FunDom, ProdDom, denote_type, eval_term
from lamreg.recognizers import SemRecognizer, SynRecognizer, index_parity
from lamreg.surface import church_type, fin_type, parse_term, parse_type
from lamreg.syntax import (
    FALSE, TRUE, App, Arrow, Pair, bool_type, cast_term, enumerate_normal_terms, normalize,
    subst_type, typecheck,
)
from lamreg.verify import random_syn_recognizer

from oracles import all_tables, table_index


def nf_pi(i, k):
    return normalize(pi_term(i, k))


def test_pi_terms():
    assert pi_term(1, 2) == TRUE
    assert pi_term(2, 2) == FALSE
    assert fin_type(2) == bool_type()
    for k in range(1, 6):
        ps = {nf_pi(i, k) for i in range(1, k + 1)}
        assert len(ps) == k
        assert ps == set(enumerate_normal_terms(fin_type(k), k + 3))
    with pytest.raises(ValueError):
        pi_term(0, 3)


@pytest.mark.parametrize("k, k2", list(itertools.product(range(1, 4), repeat=2)))
def test_fin_map(k, k2):
    for f in all_tables(k, k2):
        t = fin_map_term(f, k2)
        assert typecheck(t) == parse_type(f"Fin{k} -> Fin{k2}")
        for i in range(1, k + 1):
            assert normalize(App(t, pi_term(i, k))) == nf_pi(f[i - 1], k2)


def test_fin_map_not_is_negation():
    flip = fin_map_term((2, 1), 2)
    assert normalize(App(flip, TRUE)) == FALSE
    assert normalize(App(flip, FALSE)) == TRUE


@pytest.mark.parametrize("k, k2", list(itertools.product(range(1, 4), repeat=2)))
def test_product_generators(k, k2):
    pc, pe = prod_collapse(k, k2), prod_expand(k, k2)
    for i, j in itertools.product(range(1, k + 1), range(1, k2 + 1)):
        idx = (i - 1) * k2 + j  # left-major
        assert normalize(App(pc, Pair(pi_term(i, k), pi_term(j, k2)))) == nf_pi(idx, k * k2)
        assert normalize(App(pe, pi_term(idx, k * k2))) == normalize(Pair(pi_term(i, k), pi_term(j, k2)))


@pytest.mark.parametrize("k, k2", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_function_generators(k, k2):
    fc, fe = fun_collapse(k, k2), fun_expand(k, k2)
    m = k2 ** k
    for f in all_tables(k, k2):
        idx = table_index(f, k2)
        assert normalize(App(fc, fin_map_term(f, k2))) == nf_pi(idx, m)
        for i in range(1, k + 1):
            assert normalize(App(App(fe, pi_term(idx, m)), pi_term(i, k))) == nf_pi(f[i - 1], k2)


def test_generator_guard():
    with pytest.raises(SizeGuardError):
        prod_collapse(300, 300)
    with pytest.raises(SizeGuardError):
        fun_collapse(17, 2)


@pytest.mark.parametrize("ty", ["o", "1", "o * o", "o -> o", "Bool", "(o -> o) -> o", "o * 1 -> o", "Church1"])
def test_kit_shapes(ty):
    a = parse_type(ty)
    kit = build_kit(a, 2)
    assert kit.cast_type == subst_type(a, fin_type(2))
    assert kit.m == denote_type(a, BaseDom(2)).size
    assert typecheck(kit.project) == Arrow(kit.cast_type, fin_type(kit.m))
    assert typecheck(kit.embed) == Arrow(fin_type(kit.m), kit.cast_type)


@pytest.mark.parametrize("ty", ["o", "1", "o * o", "o -> o", "1 -> o", "Bool", "o * o -> o * 1"])
def test_kit_roundtrip(ty):
    kit = build_kit(parse_type(ty), 2)
    for i in range(1, kit.m + 1):
        assert normalize(App(kit.project, App(kit.embed, pi_term(i, kit.m)))) == nf_pi(i, kit.m)


@pytest.mark.parametrize("ty", ["Bool", "o -> o", "o * o -> o", "(o -> o) -> o -> o", "Church1"])
def test_project_computes_the_index(ty):
    a = parse_type(ty)
    kit = build_kit(a, 2)
    for t in enumerate_normal_terms(a, 12):
        idx = eval_term(t, BaseDom(2)).index
        assert normalize(App(kit.project, cast_term(t, fin_type(2)))) == nf_pi(idx, kit.m)


def test_kit_guard():
    with pytest.raises(SizeGuardError):
        build_kit(church_type(2), 2)


def test_sem_to_syn_dfa():
    r = sem_to_syn(dfa_to_recognizer(EVEN_UNARY))
    assert isinstance(r, SynRecognizer)
    assert r.subst == fin_type(2)
    for w in words(1, 8):
        assert r.accepts(encode_word(w, 1)) == run_dfa(EVEN_UNARY, w)


def test_sem_to_syn_church2_is_guarded():
    with pytest.raises(SizeGuardError):
        sem_to_syn(dfa_to_recognizer(EVEN_ONES))


@pytest.mark.parametrize("ty", ["Bool", "o -> o", "o * o -> o"])
def test_sem_to_syn_arbitrary_sets(ty):
    a = parse_type(ty)
    rng = random.Random(3)
    n = denote_type(a, BaseDom(2)).size
    for _ in range(3):
        acc = {i for i in range(1, n + 1) if rng.random() < 0.5}
        src = SemRecognizer.from_set(a, BaseDom(2), acc)
        out = sem_to_syn(src)
        for t in enumerate_normal_terms(a, 12):
            assert out.accepts(t) == src.accepts(t)


def test_non_cardinal_base():
    # a base given as a product domain is re-expressed over {1..4}
    a = parse_type("o -> o")
    src = SemRecognizer(a, ProdDom(BaseDom(2), BaseDom(2)), lambda e: e.index % 3 == 0)
    card = as_cardinal_base(src)
    assert card.base == BaseDom(4)
    out = sem_to_syn(src)
    for t in enumerate_normal_terms(a, 8):
        assert card.accepts(t) == src.accepts(t) == out.accepts(t)


def test_syn_to_sem_parity():
    syn = parity_syn_recognizer()
    sem = syn_to_sem(syn)
    # the semantic side lives over [[B]] at the two point base
    assert sem.base == FunDom(ProdDom(BaseDom(2), BaseDom(2)), BaseDom(2))
    for w in words(2, 6):
        t = encode_word(w, 2)
        assert sem.accepts(t) == syn.accepts(t)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_syn_to_sem_random(seed):
    r = random_syn_recognizer(random.Random(seed))
    s = syn_to_sem(r)
    for t in enumerate_normal_terms(r.subject_type, 10):
        assert s.accepts(t) == r.accepts(t)


def test_roundtrip_through_both_translations():
    a = parse_type("o -> o")
    src = index_parity(a, 2)
    back = syn_to_sem(sem_to_syn(src))
    # back lives over the base [[Fin 2]]_2, so compare verdicts on terms
    for t in enumerate_normal_terms(a, 10):
        assert back.accepts(t) == src.accepts(t)


def test_kit_battery():
    # every type of depth <= 2 that fits the guard, full round trips up to m = 256
    from lamreg.verify import check_kits
    res = check_kits()
    assert res.passed, res.failures
    assert res.checked > 2000


def test_kit_on_all_four_tables():
    # only the identity is definable at o -> o, but after casting to Fin 2
    # every one of the 4 tables has a witness
    kit = build_kit(parse_type("o -> o"), 2)
    assert kit.m == 4
    for f in all_tables(2, 2):
        assert normalize(App(kit.project, fin_map_term(f, 2))) == nf_pi(table_index(f, 2), 4)
