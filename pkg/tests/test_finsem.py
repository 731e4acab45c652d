import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamreg.finsem import (
    BaseDom, DomainTooLarge, FinElem, FunDom, ProdDom, UNIT_DOM, denote_type, domain_size,
    elem_at, enumerate_domain, eval_term, fits, transport, value_index, values,
)
from lamreg.logrel import random_term
from lamreg.surface import church_type, fin_type, parse_term, parse_type
from lamreg.syntax import FALSE, NOT, O, TRUE, App, cast_term, normalize, typecheck

from oracles import table_index


def _size_oracle(ty, k):
    s = parse_type(ty) if isinstance(ty, str) else ty
    from lamreg.syntax import Arrow, Base, Prod, Unit
    if isinstance(s, Base):
        return k
    if isinstance(s, Unit):
        return 1
    if isinstance(s, Prod):
        return _size_oracle(s.left, k) * _size_oracle(s.right, k)
    return _size_oracle(s.codomain, k) ** _size_oracle(s.domain, k)


@pytest.mark.parametrize("ty", ["o", "1", "o * o", "o -> o", "Bool", "(o -> o) -> o", "Church1", "1 -> o * 1"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_domain_sizes(ty, k):
    d = denote_type(parse_type(ty), BaseDom(k))
    n = _size_oracle(ty, k)
    assert domain_size(d) == n
    if n <= 5000:
        vals = list(values(d))
        assert len(vals) == n
        assert [value_index(d, v) for v in vals] == list(range(1, n + 1))


def test_small_sizes_frozen():
    assert domain_size(denote_type(fin_type(2), BaseDom(2))) == 16
    assert domain_size(denote_type(church_type(1), BaseDom(2))) == 256


def test_elem_at_roundtrip():
    d = denote_type(parse_type("(o -> o) -> o"), BaseDom(2))
    for i in range(1, 17):
        assert elem_at(d, i).index == i


def test_true_false_tables():
    t2 = eval_term(TRUE, BaseDom(2))
    assert t2.table == (1, 1, 2, 2)
    assert t2.index == 4
    assert eval_term(FALSE, BaseDom(2)).table == (1, 2, 1, 2)
    t3 = eval_term(TRUE, BaseDom(3))
    assert t3.table == (1, 1, 1, 2, 2, 2, 3, 3, 3)
    assert t3.index == table_index(t3.table, 3)


def test_function_index_is_radix_of_table():
    d = denote_type(parse_type("o * o -> o"), BaseDom(3))
    for e in list(enumerate_domain(d))[::97]:
        assert e.index == table_index(e.table, 3)


def test_application_and_type_errors():
    b = BaseDom(2)
    n, t, f = eval_term(NOT, b), eval_term(TRUE, b), eval_term(FALSE, b)
    assert n(t) == f and n(f) == t
    with pytest.raises(TypeError):
        t(t)
    with pytest.raises(TypeError):
        elem_at(BaseDom(2), 1).table


def test_domain_too_large():
    d = denote_type(parse_type("((o -> o) -> o) -> o"), BaseDom(3))
    assert not fits(d, 10**6)
    with pytest.raises(DomainTooLarge):
        list(values(d))


def test_open_evaluation():
    b = BaseDom(2)
    t = parse_term("f x", free=["f", "x"])
    fx = elem_at(denote_type(parse_type("o -> o"), b), 2)  # table (1, 2): the identity
    x = elem_at(b, 2)
    # the environment is listed outermost first, in the order of ``free``
    assert eval_term(t, b, [fx, x]) == x
    const1 = elem_at(denote_type(parse_type("o -> o"), b), 1)
    assert eval_term(t, b, [const1, x]) == elem_at(b, 1)


def test_transport_roundtrip():
    a = parse_type("o * 1 -> o * o")
    src, dst = BaseDom(3), BaseDom(3)
    perm = {1: 2, 2: 3, 3: 1}
    inv = {v: k for k, v in perm.items()}
    fwd, bwd = transport(a, src, dst, perm.__getitem__, inv.__getitem__)
    d = denote_type(a, src)
    for v in values(d):
        assert value_index(d, bwd(fwd(v))) == value_index(d, v)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1),
       st.sampled_from([parse_type("1"), parse_type("o * o"), parse_type("o -> o")]))
def test_cast_evaluation_coherence(seed, b):
    # evaluating t[B] at base k equals evaluating t at base [[B]]_k
    t = random_term(random.Random(seed))
    k = BaseDom(2)
    bd = denote_type(b, k)
    lhs = eval_term(cast_term(t, b), k)
    rhs = eval_term(t, bd)
    assert lhs.domain == rhs.domain
    assert lhs.index == rhs.index


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_unit_base_is_trivial(seed):
    t = random_term(random.Random(seed))
    # every domain over a one-point base is a singleton
    assert eval_term(t, BaseDom(1)).index == 1
