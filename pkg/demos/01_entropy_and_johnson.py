"""q-ary entropy and the Johnson radius.

The entropy function H_q measures, per symbol, how many q-ary digits it
takes to describe a sphere of a given relative radius; the Johnson radius
J_q(delta) is the largest relative decoding radius at which Hamming balls
around codewords of relative distance delta are guaranteed to hold few
codewords.  This script walks their basic shape and the sandwich
delta/2 <= J_q(delta) <= delta that makes list-decoding arguments work.
"""

import numpy as np

from qbounds import entropy, entropy_d1, johnson_radius, johnson_radius_d1

q = 3
print(f"alphabet size q = {q}; entropy peaks at x = (q-1)/q = {(q-1)/q:.4f}")
d1_header = "H_q'(x)"
print(f"{'x':>6}  {'H_q(x)':>10}  {d1_header:>10}")
for x in (0.05, 0.15, 0.3, 0.5, 0.6, 2 / 3):
    print(f"{x:6.3f}  {entropy(q, x):10.6f}  {entropy_d1(q, x):10.4f}")

print()
print("Johnson radius and the sandwich delta/2 <= J <= delta:")
print(f"{'delta':>6}  {'J_q':>9}  {'delta/2':>9}  {'slope':>7}")
for delta in np.linspace(0.05, 0.6, 6):
    J = johnson_radius(q, delta)
    assert delta / 2 <= J <= delta
    print(f"{delta:6.3f}  {J:9.5f}  {delta / 2:9.5f}  "
          f"{johnson_radius_d1(q, delta):7.4f}")

print()
print("The slope starts at 1/2 (J ~ delta/2 for small delta) and blows up")
print("as delta approaches (q-1)/q, where the radicand hits zero.")
