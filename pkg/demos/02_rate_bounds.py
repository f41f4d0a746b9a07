"""Finite-length rate upper bounds and their term breakdown.

For a q-ary code of length n and minimum distance d, the rate is bounded
above by 1 - H_q(e/n) plus explicit lower-order corrections, where
e = ceil(n * J_q(d/n)) - 1 is the guaranteed decoding radius.  The
continuous form replaces the integer e by the radius itself and is always
at least as large, converging to the same asymptotic limit.
"""

from qbounds import (BoundParams, eb_rate_bound, eb_rate_bound_continuous,
                     entropy, johnson_radius)

params = BoundParams(q=3, n=100, d=25)
res = eb_rate_bound(params)
print(f"q=3, n=100, d=25: decoding radius e = {res.e}")
print(f"rate upper bound = {res.rate_upper:.6f}")
print("term breakdown:")
for label, value in res.terms:
    print(f"  {label:28s} {value:+.6f}")

cont = eb_rate_bound_continuous(params)
print(f"\ncontinuous relaxation  = {cont.rate_upper:.6f} "
      f"(>= finite form, gap {cont.rate_upper - res.rate_upper:.6f})")

print("\nconvergence to the asymptotic limit 1 - H_q(J_q(delta)):")
limit = 1 - entropy(3, johnson_radius(3, 0.25))
print(f"{'n':>8}  {'bound':>10}  {'excess over limit':>18}")
for n in (100, 1000, 10000, 100000):
    b = eb_rate_bound_continuous(BoundParams(q=3, n=n, delta=0.25))
    print(f"{n:8d}  {b.rate_upper:10.6f}  {b.rate_upper - limit:18.2e}")
print(f"{'limit':>8}  {limit:10.6f}")
