"""Classifying symmetry ranks against the threshold function.

Given an odd prime p, a dimension-like parameter n, and a rank r, the
classifier places (p, n, r) into one of five regimes by comparing r to the
hard cap floor(n/2), the baseline floor(3n/8) + O(1), and the threshold
F(n, p).  The strongest conclusion applies.
"""

from qbounds.geometry import classify_rank

cases = [
    (3, 2000, 1001),   # above the hard cap: impossible
    (3, 2000, 1000),   # exactly the cap
    (3, 50, 20),       # meets the baseline
    (3, 2000, 600),    # clears the threshold without the baseline
    (3, 50, 3),        # too small for any conclusion
]

for p, n, r in cases:
    rep = classify_rank(p, n, r)
    print(f"p={p}, n={n:4d}, r={r:4d}: {rep.classification.value}")
    print(f"    F(n,p) = {rep.F_value:.2f}, baseline = {rep.baseline}, "
          f"max rank = {rep.max_rank}")
