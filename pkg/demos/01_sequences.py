"""Folding words, their factors, and two complete sequences.

Run: python3 demos/01_sequences.py
"""
from paperfold.sequences import (alternating_spec, complexity, folding_factors,
                                 positive_spec)
from paperfold.words import fold_strip, format_word, gen_n_folding, unfold

# a strip folded three times, always the same way
dirs = (1, 1, 1)
w = gen_n_folding(dirs)
print("3-folding word", format_word(w))
print("same word from a simulated strip:", fold_strip(dirs[::-1]) == w)
print("unfolded once more:", format_word(unfold(w, -1)))

pos, alt = positive_spec(), alternating_spec()
print("\nletters -15..15 of the positive sequence")
print(" ", format_word(pos.letters(-15, 15).tolist()))
print("letters -15..15 of the alternating one")
print(" ", format_word(alt.letters(-15, 15).tolist()))

print("\nfactor counts for t = 1..12")
for t in range(1, 13):
    print(f"  t={t:2d}  positive {complexity(pos, t):3d}  "
          f"alternating {complexity(alt, t):3d}")

print("\n4-folding factors of each:",
      len(folding_factors(pos, 4)), len(folding_factors(alt, 4)))
