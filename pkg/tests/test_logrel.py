import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamreg.finsem import BaseDom, DomainTooLarge, denote_type, elem_at, eval_term
from lamreg.logrel import (
    FinRelation, PreconditionError, _arrow_is_partial_surjection, fundamental_lemma_check, is_functional,
    is_partial_surjection, is_surjective, lift_relation, partial_surjection_closure_check,
    partial_surjections, point_relation, pullback_recognizer, random_term, related,
    transfer_check, types_up_to_depth,
)
from lamreg.recognizers import SemRecognizer, index_parity
from lamreg.surface import parse_type
from lamreg.syntax import O, Arrow, bool_type, enumerate_normal_terms, typecheck

from oracles import brute_lift

SMALL_TYPES = ["o", "1", "o * o", "o -> o", "1 -> o", "o * 1 -> o", "(o -> o) -> o", "o -> o * o"]


def test_relation_validation():
    with pytest.raises(ValueError):
        FinRelation(BaseDom(2), BaseDom(2), {(3, 1)})
    r = FinRelation(BaseDom(2), BaseDom(3), {(1, 1), (1, 2), (2, 3)})
    assert (1, 2) in r and (2, 1) not in r
    assert len(r) == 3
    assert r.mates()[1] == {1, 2}
    assert not is_functional(r) and is_surjective(r)


def test_from_function():
    r = FinRelation.from_function([2, 2, 1], 2)
    assert r.pairs == frozenset({(1, 2), (2, 2), (3, 1)})
    assert is_functional(r) and is_surjective(r) and is_partial_surjection(r)


def test_point_relation():
    r = point_relation(BaseDom(3))
    assert r.pairs == frozenset({(1, 1), (2, 2), (3, 3)})


def _count_partial_surjections(nl, nr):
    return sum((-1) ** j * math.comb(nr, j) * (nr + 1 - j) ** nl for j in range(nr + 1))


def test_partial_surjection_enumeration():
    total = 0
    for nl, nr in itertools.product(range(1, 4), repeat=2):
        got = list(partial_surjections(nl, nr))
        assert len(got) == _count_partial_surjections(nl, nr)
        assert all(is_partial_surjection(r) for r in got)
        total += len(got)
    assert total == 31


def test_types_up_to_depth():
    assert len(types_up_to_depth(0)) == 2
    assert len(types_up_to_depth(1)) == 2 + 8
    assert len(types_up_to_depth(2)) == 10 + 10 * 10 * 2 - 8


def _random_relation(rng, nl, nr):
    pairs = {(i, j) for i in range(1, nl + 1) for j in range(1, nr + 1) if rng.random() < 0.5}
    return FinRelation(BaseDom(nl), BaseDom(nr), pairs)


@pytest.mark.parametrize("ty", SMALL_TYPES)
def test_lift_matches_definition(ty):
    a = parse_type(ty)
    rng = random.Random(hash(ty) & 0xFFFF)
    for nl, nr in [(1, 2), (2, 2), (2, 1), (3, 2)]:
        if denote_type(a, BaseDom(nl)).size * denote_type(a, BaseDom(nr)).size > 20000:
            continue
        base = _random_relation(rng, nl, nr)
        want = brute_lift(a, base.pairs, base.left, base.right)
        assert lift_relation(a, base).pairs == frozenset(want)


def test_lift_of_identity_is_identity():
    for ty in SMALL_TYPES:
        lifted = lift_relation(parse_type(ty), point_relation(BaseDom(2)))
        assert all(i == j for i, j in lifted.pairs)


def test_lift_guard():
    base = FinRelation(BaseDom(3), BaseDom(3), {(i, j) for i in range(1, 4) for j in range(1, 4)})
    with pytest.raises(DomainTooLarge):
        lift_relation(parse_type("(o -> o) -> o -> o"), base, max_pairs=1000)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1),
       st.sampled_from([r for nl in (1, 2, 3) for nr in (1, 2) for r in partial_surjections(nl, nr)]))
def test_fundamental_lemma(seed, base):
    t = random_term(random.Random(seed))
    assert fundamental_lemma_check(t, base)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_fundamental_lemma_arbitrary_relations(seed):
    # the lemma holds for every relation, not just partial surjections
    rng = random.Random(seed)
    t = random_term(rng)
    base = _random_relation(rng, rng.randint(1, 2), rng.randint(1, 2))
    assert fundamental_lemma_check(t, base)


def test_fundamental_lemma_detects_a_faulty_evaluator():
    base = FinRelation.from_function([1, 2, 2], 2)  # 3 -> 2, surjective

    def bad_eval(t, b):
        # shifts every denotation to the next canonical index
        e = eval_term(t, b)
        n = e.domain.size
        return elem_at(e.domain, e.index % n + 1).value

    rng = random.Random(1)
    terms = [random_term(rng) for _ in range(40)]
    caught = [t for t in terms if not fundamental_lemma_check(t, base, right_eval=bad_eval)]
    assert caught
    assert all(fundamental_lemma_check(t, base) for t in terms)


def test_related_pointwise_agrees_with_full_lift():
    base = FinRelation.from_function([1, 2, 2], 2)
    a = bool_type()
    lifted = lift_relation(a, base)
    for t in enumerate_normal_terms(a, 8):
        u = eval_term(t, base.left).value
        v = eval_term(t, base.right).value
        assert related(a, base, u, v) == ((eval_term(t, base.left).index,
                                           eval_term(t, base.right).index) in lifted)
        # max_pairs=1 forces the pointwise path
        assert related(a, base, u, v, max_pairs=1)


@pytest.mark.parametrize("ty", [t for t in types_up_to_depth(1)])
def test_closure_under_lifting(ty):
    for base in partial_surjections(3, 2):
        assert partial_surjection_closure_check(ty, base)


def test_closure_precondition():
    not_surjective = FinRelation(BaseDom(2), BaseDom(2), {(1, 1), (2, 1)})
    with pytest.raises(PreconditionError):
        partial_surjection_closure_check(O, not_surjective)
    not_functional = FinRelation(BaseDom(1), BaseDom(2), {(1, 1), (1, 2)})
    with pytest.raises(PreconditionError):
        partial_surjection_closure_check(O, not_functional)


def test_lift_of_non_partial_surjection_can_fail():
    # many-to-many base: the lift at o is not functional
    base = FinRelation(BaseDom(1), BaseDom(2), {(1, 1), (1, 2)})
    assert not is_partial_surjection(lift_relation(O, base))


def test_transfer_along_surjection():
    r = SemRecognizer.from_set(bool_type(), BaseDom(2), {4})
    surj = FinRelation.from_function([1, 2, 2], 2)
    pulled = pullback_recognizer(r, surj)
    assert pulled.base == BaseDom(3)
    for t in enumerate_normal_terms(bool_type(), 8):
        assert pulled.accepts(t) == r.accepts(t)
        assert transfer_check(r, t, surj)


def test_transfer_default_and_errors():
    r = index_parity(parse_type("o -> o"), 2)
    for t in enumerate_normal_terms(r.subject_type, 6):
        assert transfer_check(r, t)
    with pytest.raises(ValueError):
        pullback_recognizer(r, point_relation(BaseDom(3)))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1),
       st.sampled_from(list(partial_surjections(3, 2))))
def test_transfer_random(seed, rel):
    rng = random.Random(seed)
    t = random_term(rng)
    a = typecheck(t)
    salt = rng.randrange(1 << 30)
    r = SemRecognizer(a, BaseDom(2), lambda e: hash((salt, e.index)) % 2 == 0)
    try:
        assert transfer_check(r, t, rel)
    except DomainTooLarge:
        pass


def test_closure_beyond_enumeration():
    # [[(o -> o) -> o]] has 3^27 points on the left; the check works on factors
    surj = FinRelation.from_function([1, 2, 2], 2)
    a = parse_type("(o -> o) -> o")
    with pytest.raises(DomainTooLarge):
        lift_relation(a, surj)
    assert partial_surjection_closure_check(a, surj)


ARROWS = [t for t in types_up_to_depth(2) if isinstance(t, Arrow)]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(ARROWS), st.integers(1, 3), st.integers(1, 2), st.integers(0, 2**32 - 1))
def test_factored_check_matches_full_lift(a, nl, nr, seed):
    base = _random_relation(random.Random(seed), nl, nr)
    try:
        full = is_partial_surjection(lift_relation(a, base, max_pairs=10**5))
    except DomainTooLarge:
        return
    dom, cod = lift_relation(a.domain, base), lift_relation(a.codomain, base)
    assert _arrow_is_partial_surjection(dom, cod, 10**6) == full
