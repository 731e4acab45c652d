"""Independent reference implementations used as test oracles.

They are deliberately naive: textbook substitution, brute-force
enumeration, direct transcriptions of definitions.
"""

import itertools

from lamreg.finsem import FunDom, denote_type, value_index, values
from lamreg.syntax import App, Lam, Pair, Proj, UnitIntro, Var


def _shift(t, d, c=0):
    if isinstance(t, Var):
        return Var(t.index + d) if t.index >= c else t
    if isinstance(t, Lam):
        return Lam(t.annotation, _shift(t.body, d, c + 1))
    if isinstance(t, App):
        return App(_shift(t.fn, d, c), _shift(t.arg, d, c))
    if isinstance(t, Pair):
        return Pair(_shift(t.left, d, c), _shift(t.right, d, c))
    if isinstance(t, Proj):
        return Proj(t.i, _shift(t.of, d, c))
    return t


def _subst(t, j, s):
    if isinstance(t, Var):
        return s if t.index == j else t
    if isinstance(t, Lam):
        return Lam(t.annotation, _subst(t.body, j + 1, _shift(s, 1)))
    if isinstance(t, App):
        return App(_subst(t.fn, j, s), _subst(t.arg, j, s))
    if isinstance(t, Pair):
        return Pair(_subst(t.left, j, s), _subst(t.right, j, s))
    if isinstance(t, Proj):
        return Proj(t.i, _subst(t.of, j, s))
    return t


def _step(t):
    """One leftmost-outermost beta or projection step, or None."""
    if isinstance(t, App) and isinstance(t.fn, Lam):
        return _shift(_subst(t.fn.body, 0, _shift(t.arg, 1)), -1)
    if isinstance(t, Proj) and isinstance(t.of, Pair):
        return t.of.left if t.i == 1 else t.of.right
    if isinstance(t, Lam):
        b = _step(t.body)
        return None if b is None else Lam(t.annotation, b)
    if isinstance(t, App):
        f = _step(t.fn)
        if f is not None:
            return App(f, t.arg)
        a = _step(t.arg)
        return None if a is None else App(t.fn, a)
    if isinstance(t, Pair):
        l = _step(t.left)
        if l is not None:
            return Pair(l, t.right)
        r = _step(t.right)
        return None if r is None else Pair(t.left, r)
    if isinstance(t, Proj):
        o = _step(t.of)
        return None if o is None else Proj(t.i, o)
    return None


def beta_normal(t):
    """Normal form for beta and projection reduction, by naive rewriting."""
    while True:
        u = _step(t)
        if u is None:
            return t
        t = u


def has_redex(t):
    return _step(t) is not None


def brute_lift(a, rel_pairs, left_base, right_base):
    """Lift a base relation (index pairs) to type ``a`` straight from the
    definition, enumerating every pair of raw values."""
    from lamreg.syntax import Arrow, Base, Prod, Unit

    def related(ty, u, v):
        if isinstance(ty, Base):
            return (u, v) in rel_pairs
        if isinstance(ty, Unit):
            return True
        if isinstance(ty, Prod):
            return related(ty.left, u[0], v[0]) and related(ty.right, u[1], v[1])
        dl, dr = denote_type(ty.domain, left_base), denote_type(ty.domain, right_base)
        return all(related(ty.codomain, u(x), v(y))
                   for x in values(dl) for y in values(dr) if related(ty.domain, x, y))

    dl, dr = denote_type(a, left_base), denote_type(a, right_base)
    return {(value_index(dl, u), value_index(dr, v))
            for u in values(dl) for v in values(dr) if related(a, u, v)}


def count_scoped(n, k, memo=None):
    """Number of scoped terms ``n |- u`` with exactly ``k`` constructors."""
    memo = {} if memo is None else memo
    if (n, k) in memo:
        return memo[n, k]
    if k <= 0:
        r = 0
    elif k == 1:
        r = n
    else:
        r = count_scoped(n + 1, k - 1, memo)
        r += sum(count_scoped(n, i, memo) * count_scoped(n, k - 1 - i, memo) for i in range(1, k - 1))
    memo[n, k] = r
    return r


def table_index(table, cod_size):
    """Radix index of a function table, first entry most significant."""
    acc = 0
    for v in table:
        acc = acc * cod_size + (v - 1)
    return acc + 1


def all_tables(k, k2):
    return list(itertools.product(range(1, k2 + 1), repeat=k))
