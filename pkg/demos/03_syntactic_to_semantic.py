"""A syntactic recognizer and its semantic counterpart.

The decider below reads a word at the instance o := Bool, where each letter
acts by ``not`` or ``id``; it checks both parities at once.  Evaluating the
decider in finite sets gives a recognizer over the 16-element set [[Bool]]
that accepts the same words.

    python3 demos/03_syntactic_to_semantic.py
"""

from lamreg import encode_word, parity_syn_recognizer, syn_to_sem, words

syn = parity_syn_recognizer()
print("decider:", "\\(w: Church2[Bool]). and <w <not, id> true, w <id, not> false>")
sem = syn_to_sem(syn)
print("semantic base:", sem.base, "with", sem.base.size, "points")

ws = list(words(2, 6))
agree = sum(sem.accepts(encode_word(w, 2)) == syn.accepts(encode_word(w, 2)) for w in ws)
print(f"agreement on {len(ws)} words of length <= 6: {agree}")
print("accepted words of length <= 3:",
      ["".join(map(str, w)) for w in words(2, 3) if syn.accepts(encode_word(w, 2))])
