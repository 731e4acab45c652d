"""Compiling a finite-set recognizer into a lambda term.

Each finite set {1..k} is encoded as Fin k = o^k -> o, whose closed
inhabitants are exactly the k projections.  For the subject type A we build
a term that maps t[Fin 2] to the projection indexing [[t]] over two points,
then post-compose with the characteristic function of the accepting set.

    python3 demos/04_semantic_to_syntactic.py
"""

import time

from lamreg import (
    EVEN_ONES, EVEN_UNARY, SizeGuardError, dfa_to_recognizer, encode_word, sem_to_syn, term_size,
)

src = dfa_to_recognizer(EVEN_UNARY)
t0 = time.perf_counter()
compiled = sem_to_syn(src)
print(f"compiled in {time.perf_counter() - t0:.2f}s: {term_size(compiled.decider)} nodes, "
      f"cast at {compiled.subst!r}")

for n in range(9):
    t = encode_word([1] * n, 1)
    print(f"1^{n}: source={src.accepts(t)!s:5}  compiled={compiled.accepts(t)}")

# two letters push [[Church2]] at two points to 4^16 elements
try:
    sem_to_syn(dfa_to_recognizer(EVEN_ONES))
except SizeGuardError as e:
    print("\nChurch2 is out of reach:", e)
