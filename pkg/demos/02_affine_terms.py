"""Untyped lambda terms as typed terms, and affinity decided semantically.

Untyped terms are encoded with a binder ``l: (o -> o) -> o`` and an
application ``a: o -> o -> o``.  Over the six-point set {0, 1, inf} x {T, F}
one choice of ``l`` and ``a`` counts variable uses and flags any binder
used twice.

    python3 demos/02_affine_terms.py
"""

from lamreg import affine_recognizer, encode_scoped, is_affine, parse_untyped, print_term
from lamreg.encodings import scoped_terms

rec = affine_recognizer()
for text in ["\\x. x", "\\x. x x", "\\x. \\y. y x", "(\\x. x x) (\\x. x x)",
             "\\f. (\\x. x x) (\\x. f (x x))", "\\x. \\y. x"]:
    s = parse_untyped(text)
    t = encode_scoped(s)
    print(f"{text:32} affine={is_affine(s)!s:5}  recognizer={rec.accepts(t)}")
    print("    ", print_term(t))

closed = list(scoped_terms(0, 7))
agree = sum(rec.accepts(encode_scoped(s)) == is_affine(s) for s in closed)
print(f"\n{agree} / {len(closed)} closed terms with <= 7 constructors agree")
