"""Growth of the Borromean rings at q = exp(2 pi i / n), and decay at small angles.

Run: python3 demos/borromean_and_small_angles.py
"""

from __future__ import annotations

import math

import numpy as np

from qvol.closedforms import borromean_ev, borromean_ev_direct, borromean_growth, morton_ev
from qvol.cyclotomic import ev_from_cyclotomic
from qvol.lobachevsky import V8

print(f"ev_2 = {math.exp(borromean_ev(2)):.6f} (the determinant is 16)")
for n in (10, 101, 512):
    print(f"n={n}: tau sum vs alternating sum differ by {abs(borromean_ev(n) - borromean_ev_direct(n)):.2e} in log")

# g(n) approaches 2 v8 from above, so the sequence decreases
print(f"\n   n      g(n)      g(n)/(2 v8)")
for n, g in borromean_growth([2**j for j in range(6, 13)]):
    print(f"{n:5d}  {g:.6f}  {g / (2 * V8):.5f}")

# At alpha = 0.05 the figure-eight (all cyclotomic coefficients 1) and the trefoil stay bounded.
print("\n   n   figure-8          trefoil")
for n in (500, 1000, 2000, 4000):
    f8 = math.log(abs(ev_from_cyclotomic(np.ones(n), "0.05", n))) / n
    t = math.log(abs(morton_ev(2, 3, n, "0.05"))) / n
    print(f"{n:5d}  {f8: .3e}  {t: .3e}")
