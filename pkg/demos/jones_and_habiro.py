"""Colored Jones polynomials from the state sum, and their cyclotomic coefficients.

Run: python3 demos/jones_and_habiro.py
"""

from __future__ import annotations

from qvol.closedforms import morton_torus_jones
from qvol.corpus import CORPUS
from qvol.cyclotomic import cyclotomic_seq, reconstruct_jones
from qvol.qpoly import ONE
from qvol.statesum import FROZEN_CONVENTIONS, colored_jones

print("conventions:", FROZEN_CONVENTIONS.describe())

# The trefoil as the closure of sigma_1^3.  n is the dimension of the color.
for n in range(1, 5):
    j = colored_jones(CORPUS["3_1"], n)
    print(f"J_3_1({n}) = {j.pretty()}")
    assert j == morton_torus_jones(2, 3, n)
print("state sum agrees with the torus knot closed form")

# Cyclotomic coefficients: exact division certifies they are Laurent polynomials.
for name in ("3_1", "4_1", "6_3"):
    js = [ONE] + [colored_jones(CORPUS[name], n) for n in range(1, 6)]
    c = cyclotomic_seq(js, label=name)
    print(f"\n{name}:")
    for k, ck in enumerate(c.coeffs):
        text = ck.pretty()
        print(f"  C({k}) = {text if len(text) < 70 else text[:67] + '...'}")
    assert all(reconstruct_jones(c, n) == js[n] for n in range(1, 6))
