"""Words as Church numerals, and a DFA read as a semantic recognizer.

A word over {1..n} becomes a closed term of type (o -> o)^n -> o -> o.
Interpreting o as the state set of a DFA turns each letter into a
transition map, so evaluating the term runs the automaton.

    python3 demos/01_church_words.py
"""

from lamreg import (
    EVEN_ONES, ODD_TWOS, decode_word, dfa_to_recognizer, encode_word, intersect,
    parity_sem_recognizer, print_term, run_dfa, words,
)

w = (1, 2, 2, 1, 2)
t = encode_word(w, 2)
print("word", "".join(map(str, w)), "is the term")
print("   ", print_term(t))
assert decode_word(t) == w

# one recognizer per DFA, then their product
ones, twos = dfa_to_recognizer(EVEN_ONES), dfa_to_recognizer(ODD_TWOS)
both = intersect(ones, twos)
single = parity_sem_recognizer()  # the same language over a single 2-point base

print("\nword     even 1s  odd 2s  product  single")
for w in words(2, 3):
    t = encode_word(w, 2)
    s = "".join(map(str, w)) or "(empty)"
    print(f"{s:8} {ones.accepts(t)!s:8} {twos.accepts(t)!s:7} {both.accepts(t)!s:8} {single.accepts(t)}")

bad = [w for w in words(2, 8)
       if single.accepts(encode_word(w, 2)) != (run_dfa(EVEN_ONES, w) and run_dfa(ODD_TWOS, w))]
print(f"\ndisagreements with the DFAs on all 511 words of length <= 8: {len(bad)}")
