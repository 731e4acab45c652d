"""Logical relations between two finite interpretations of o.

A relation between the base sets lifts to every type; the fundamental lemma
says every closed term is related to itself.  When the base relation is a
partial surjection, so is every lift, and a recognizer can be pulled back
along it without changing its language.

    python3 demos/05_logical_relations.py
"""

import random

from lamreg import (
    BaseDom, FinRelation, SemRecognizer, bool_type, enumerate_normal_terms,
    fundamental_lemma_check, is_partial_surjection, lift_relation, parse_type,
    partial_surjections, print_term, print_type, pullback_recognizer, random_term, typecheck,
)

base = FinRelation.from_function([1, 2, 2], 2)  # 3 points onto 2
print("base relation:", sorted(base.pairs))
for ty in ["o", "o -> o", "Bool"]:
    lifted = lift_relation(parse_type(ty), base)
    print(f"  lift to {ty:7}: {len(lifted):4} pairs, partial surjection: {is_partial_surjection(lifted)}")

rng = random.Random(0)
print("\nrandom terms and the fundamental lemma")
for _ in range(4):
    t = random_term(rng)
    print(f"  {print_type(typecheck(t)):28} related to itself: {fundamental_lemma_check(t, base)}")
    print("     ", print_term(t)[:90])

bases = [r for nl in (1, 2, 3) for nr in (1, 2, 3) for r in partial_surjections(nl, nr)]
print(f"\n{len(bases)} partial surjections with sides <= 3")

r = SemRecognizer.from_set(bool_type(), BaseDom(2), {4})  # just `true`
pulled = pullback_recognizer(r, base)
print("pulled back to", pulled.base, "->",
      [pulled.accepts(t) == r.accepts(t) for t in enumerate_normal_terms(bool_type(), 8)])
