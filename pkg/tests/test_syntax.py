import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamreg.finsem import BaseDom, eval_term
from lamreg.logrel import random_term
from lamreg.surface import church_type, fin_type, parse_term, parse_type
from lamreg.syntax import (
    AND, FALSE, NOT, O, ONE, TRUE, UNIT, App, Arrow, Lam, Pair, Prod, Proj,
    StlcTypeError, Var, beta_eta_equal, bool_type, cast_term, enumerate_normal_terms,
    is_normal, normalize, power, proj_term, subst_type, term_size, tuple_term, typecheck,
)

from oracles import beta_normal, has_redex

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_power_is_right_nested():
    assert power(O, 1) == O
    assert power(O, 3) == Prod(O, Prod(O, O))
    with pytest.raises(ValueError):
        power(O, 0)


def test_bool_is_fin2():
    assert bool_type() == fin_type(2) == Arrow(Prod(O, O), O)


def test_subst_type():
    assert subst_type(Arrow(O, ONE), bool_type()) == Arrow(bool_type(), ONE)
    assert subst_type(church_type(1), O) == church_type(1)


def test_projection_chain():
    x = Var(0)
    assert proj_term(x, 1, 3) == Proj(1, x)
    assert proj_term(x, 2, 3) == Proj(1, Proj(2, x))
    assert proj_term(x, 3, 3) == Proj(2, Proj(2, x))
    assert proj_term(x, 1, 1) == x
    with pytest.raises(ValueError):
        proj_term(x, 4, 3)


def test_typecheck_basic():
    assert typecheck(TRUE) == bool_type()
    assert typecheck(AND) == Arrow(Prod(bool_type(), bool_type()), bool_type())
    assert typecheck(NOT) == Arrow(bool_type(), bool_type())
    assert typecheck(Var(0), [O, ONE]) == ONE
    assert typecheck(UNIT) == ONE


@pytest.mark.parametrize("term, ctx", [
    (Var(0), []),
    (App(TRUE, TRUE), []),
    (Proj(1, Var(0)), [O]),
    (App(Var(0), Var(0)), [Arrow(O, O)]),
])
def test_typecheck_rejects(term, ctx):
    with pytest.raises(StlcTypeError):
        typecheck(term, ctx)


def test_binary_projection_index():
    with pytest.raises(ValueError):
        Proj(3, Var(0))


def test_normalize_examples():
    ident = Lam(bool_type(), Var(0))
    assert normalize(App(ident, TRUE)) == TRUE
    # eta-long identity on Bool
    x2 = Var(0)
    want = Lam(bool_type(), Lam(power(O, 2), App(Var(1), Pair(Proj(1, x2), Proj(2, x2)))))
    assert normalize(ident) == want
    # unit eta
    assert normalize(Lam(ONE, Var(0))) == Lam(ONE, UNIT)
    # surjective pairing
    p = Lam(Prod(O, O), Pair(Proj(1, Var(0)), Proj(2, Var(0))))
    assert normalize(p) == normalize(Lam(Prod(O, O), Var(0)))


def test_boolean_combinators():
    for a, b in [(TRUE, TRUE), (TRUE, FALSE), (FALSE, TRUE), (FALSE, FALSE)]:
        want = TRUE if (a == TRUE and b == TRUE) else FALSE
        assert normalize(App(AND, Pair(a, b))) == want
    assert normalize(App(NOT, TRUE)) == FALSE
    assert normalize(App(NOT, FALSE)) == TRUE


def test_beta_eta_equal_type_mismatch():
    with pytest.raises(StlcTypeError):
        beta_eta_equal(TRUE, Lam(O, Var(0)))
    assert beta_eta_equal(App(NOT, App(NOT, TRUE)), TRUE)


def test_wide_tuples_do_not_recurse_deeply():
    n = 3000
    t = Lam(power(O, n), tuple_term([proj_term(Var(0), i, n) for i in range(n, 0, -1)]))
    assert typecheck(t) == Arrow(power(O, n), power(O, n))
    assert term_size(normalize(t)) > n


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_normalize_properties(seed):
    t = random_term(random.Random(seed))
    a = typecheck(t)
    nf = normalize(t)
    assert typecheck(nf) == a
    assert is_normal(nf)
    assert not has_redex(nf)
    assert normalize(nf) == nf
    # agrees with naive rewriting followed by normalization
    assert normalize(beta_normal(t)) == nf


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from([1, 2, 3]))
def test_normalize_preserves_denotation(seed, k):
    t = random_term(random.Random(seed))
    assert eval_term(t, BaseDom(k)).index == eval_term(normalize(t), BaseDom(k)).index


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([O, ONE, bool_type(), Prod(O, O), Arrow(O, O)]))
def test_cast_preserves_typing(seed, b):
    t = random_term(random.Random(seed))
    assert typecheck(cast_term(t, b)) == subst_type(typecheck(t), b)
    assert normalize(cast_term(t, b)) == normalize(cast_term(normalize(t), b))


def test_cast_examples():
    assert cast_term(TRUE, O) == TRUE
    assert typecheck(cast_term(TRUE, bool_type())) == Arrow(Prod(bool_type(), bool_type()), bool_type())


def test_enumerate_bool():
    assert set(enumerate_normal_terms(bool_type(), 8)) == {TRUE, FALSE}


def test_enumerate_church_counts():
    # a word of length L has size 2L + 3 over one letter and 3L + 3 over two
    assert len(list(enumerate_normal_terms(church_type(1), 11))) == 5
    assert len(list(enumerate_normal_terms(church_type(2), 12))) == 1 + 2 + 4 + 8


def test_enumerate_fin_is_projections():
    for k in range(1, 5):
        got = list(enumerate_normal_terms(fin_type(k), k + 3))
        want = [normalize(Lam(power(O, k), proj_term(Var(0), i, k))) for i in range(1, k + 1)]
        assert sorted(map(repr, got)) == sorted(map(repr, want))


def test_enumerate_uninhabited_and_unit():
    assert list(enumerate_normal_terms(O, 6)) == []
    assert list(enumerate_normal_terms(Prod(O, O), 6)) == []
    assert list(enumerate_normal_terms(ONE, 3)) == [UNIT]


@pytest.mark.parametrize("ty", ["Bool", "o -> o", "(o -> o) -> o -> o", "o * o -> o * o", "1 -> o -> o"])
def test_enumerate_distinct_normal_sorted(ty):
    a = parse_type(ty)
    terms = list(enumerate_normal_terms(a, 10))
    assert len(set(terms)) == len(terms)
    sizes = [term_size(t) for t in terms]
    assert sizes == sorted(sizes) and all(s <= 10 for s in sizes)
    for t in terms:
        assert typecheck(t) == a and is_normal(t)


def test_enumeration_is_complete_against_normalized_random_terms():
    a = parse_type("o * o -> o * o")
    pool = set(enumerate_normal_terms(a, 12))
    rng = random.Random(7)
    for _ in range(30):
        nf = normalize(random_term(rng, a))
        if term_size(nf) <= 12:
            assert nf in pool


def test_parse_then_normalize_church():
    t = parse_term("\\(a: (o -> o)^2). \\(e: o). a.2/2 (a.1/2 (a.2/2 (a.2/2 (a.1/2 e))))")
    assert typecheck(t) == church_type(2)
    assert is_normal(t)
