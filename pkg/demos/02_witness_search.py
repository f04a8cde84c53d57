"""
Witness search: finding a pattern inside a fixed coloring
=========================================================

Color the integers 1..N with r colors, then ask whether some instance
of a pattern family is monochromatic.  The search enumerates variable
assignments in lexicographic order with range pruning, so the first
witness reported is always the same one.
"""

from ramseykit import (
    Coloring,
    count_witnesses,
    find_witness,
    iter_witnesses,
    preset_family,
    verify_witness,
)

schur = preset_family("schur")

# Color 1..20 by residue mod 2 (parity).  Sums of two odds are even, so
# a monochromatic sum triple needs the even class.
parity = Coloring.modular(20, 2)
w = find_witness(schur, parity)
print("first witness in the parity coloring:")
print("  assignment", w.assignment, "-> values", w.term_values, "color", w.color)

# Every witness can be re-checked against the family definition and the
# coloring by an independent evaluator.
print("verifies:", bool(verify_witness(schur, parity, w)))

# Witnesses stream lazily; here are the first five.
print("\nfirst five witnesses:")
for i, w in enumerate(iter_witnesses(schur, parity)):
    if i == 5:
        break
    print("  values", w.term_values, "color", w.color)

# Demanding pairwise-distinct term values filters out the degenerate
# x = y cases.
w = find_witness(schur, parity, distinct=True)
print("\nfirst all-distinct witness: values", w.term_values)

# Counting is vectorized and comfortable at millions of cells.  The
# pair {x, x+1} can never be monochromatic under parity -- neighbors
# always differ -- and the count confirms it at N = 10^6.
pair = preset_family("x_xp1")
big_parity = Coloring.modular(10**6, 2)
print("\n{x, x+1} witnesses under parity, N = 10^6:",
      count_witnesses(pair, big_parity))

# The same count explodes once a third color class merges neighbors.
blocks = Coloring.from_sequence([1 + (v // 3) % 3 for v in range(10**6)])
print("{x, x+1} witnesses under 3-blocks, N = 10^6:",
      count_witnesses(pair, blocks))
