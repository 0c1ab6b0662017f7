"""Where the R-matrix grows fastest: the octahedral point (3/4, 1/4, 1/2).

Run: python3 demos/octahedral_growth.py
"""

from __future__ import annotations

import math

from qvol.lobachevsky import V8, critical_residuals, facet_max, maximize_f, scan_R_growth

p, value = maximize_f()
print(f"argmax f = {p.as_tuple()}, f = {value:.15f}, v8/2 = {V8 / 2:.15f}")
print("critical equation residuals:", critical_residuals(p))

for facet in ("kappa=0", "alpha=1", "beta=0"):
    q, v = facet_max(facet)
    print(f"max on {facet:>8}: {v:.6f} at {tuple(round(x, 4) for x in q.as_tuple())}")

# The discrete scan over all colors approaches v8/(2 pi) from below.
print(f"\n   n  {'(a, b, k)':<18} max/n   (limit {V8 / (2 * math.pi):.5f})")
for n in (50, 100, 200, 400, 800):
    s = scan_R_growth(n)
    abk = f"({s['a']}, {s['b']}, {s['k']})"
    print(f"{n:4d}  {abk:<18} {s['max_over_n']:.5f}")
