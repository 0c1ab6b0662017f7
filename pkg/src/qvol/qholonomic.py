"""Linear q-difference equations sum_j a_j(q^n, q) f(n+j) = 0.

Coefficients a_j(u, v) are bivariate Laurent polynomials with rational
coefficients, stored as {(deg_u, deg_v): Fraction}.  Sequences are
LaurentPoly values in q.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .qpoly import ZERO, LaurentPoly

__all__ = [
    "Recurrence",
    "NotIntegralError",
    "verify_recurrence",
    "degree_bound_report",
    "l1_growth_certificate",
    "solve_forward",
    "random_integral_recurrence",
]


class NotIntegralError(ValueError):
    pass


Bivar = Mapping[tuple[int, int], Fraction]


def _clean(poly) -> dict[tuple[int, int], Fraction]:
    out: dict[tuple[int, int], Fraction] = {}
    items = poly.items() if isinstance(poly, Mapping) else ((tuple(t[:2]), t[2]) for t in poly)
    for (du, dv), c in items:
        c = Fraction(c)
        if c:
            key = (int(du), int(dv))
            out[key] = out.get(key, Fraction(0)) + c
            if not out[key]:
                del out[key]
    return out


@dataclass(frozen=True)
class Recurrence:
    """Order-d q-difference operator with coefficients a_0, ..., a_d."""

    a: tuple[dict, ...]

    def __init__(self, a: Sequence):
        coeffs = tuple(_clean(p) for p in a)
        if len(coeffs) < 2:
            raise ValueError("a recurrence needs at least a_0 and a_1")
        if not coeffs[-1]:
            raise ValueError("leading coefficient a_d must be nonzero")
        object.__setattr__(self, "a", coeffs)

    @property
    def d(self) -> int:
        return len(self.a) - 1

    @property
    def integral(self) -> bool:
        if self.a[-1] != {(0, 0): Fraction(1)}:
            return False
        return all(c.denominator == 1 for p in self.a for c in p.values())

    def coeff_l1(self, j: int) -> Fraction:
        return sum((abs(c) for c in self.a[j].values()), Fraction(0))

    def _denominator(self) -> int:
        return lcm(1, *(c.denominator for p in self.a for c in p.values()))

    def evaluate(self, j: int, n: int, scale: int = 1) -> LaurentPoly:
        """scale * a_j(q^n, q) as a LaurentPoly; scale must clear the denominators."""
        terms: dict[int, int] = {}
        for (du, dv), c in self.a[j].items():
            v = c * scale
            if v.denominator != 1:
                raise ValueError("scale does not clear the coefficient denominators")
            e = 4 * (du * n + dv)
            terms[e] = terms.get(e, 0) + int(v)
        return LaurentPoly(terms)

    def scaled(self, factor: Bivar) -> "Recurrence":
        """Every a_j multiplied by the same bivariate polynomial."""
        factor = _clean(factor)
        out = []
        for p in self.a:
            prod: dict = {}
            for (u1, v1), c1 in p.items():
                for (u2, v2), c2 in factor.items():
                    key = (u1 + u2, v1 + v2)
                    prod[key] = prod.get(key, Fraction(0)) + c1 * c2
            out.append(prod)
        return Recurrence(out)

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "a": [[[du, dv, str(c)] for (du, dv), c in sorted(p.items())] for p in self.a],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Recurrence":
        rec = cls(obj["a"])
        if "d" in obj and int(obj["d"]) != rec.d:
            raise ValueError(f"declared order {obj['d']} does not match {len(obj['a'])} coefficients")
        return rec

    @classmethod
    def from_json(cls, text: str) -> "Recurrence":
        return cls.from_json_obj(json.loads(text))


def verify_recurrence(rec: Recurrence, seq: Sequence[LaurentPoly]) -> dict:
    """Check sum_j a_j(q^n, q) f(n+j) = 0 exactly for every n with f(n+d) available."""
    if len(seq) < rec.d + 1:
        raise ValueError(f"need at least d+1 = {rec.d + 1} terms")
    scale = rec._denominator()
    for n in range(len(seq) - rec.d):
        total = ZERO
        for j in range(rec.d + 1):
            total = total + rec.evaluate(j, n, scale) * seq[n + j]
        if total:
            return {"ok": False, "first_violation": n}
    return {"ok": True, "first_violation": None}


def solve_forward(rec: Recurrence, initial: Sequence[LaurentPoly], n_max: int) -> list[LaurentPoly]:
    """f(0..n_max) from f(0..d-1) for an integral recurrence (a_d = 1)."""
    if not rec.integral:
        raise NotIntegralError("forward solving needs an integral recurrence")
    d = rec.d
    if len(initial) != d:
        raise ValueError(f"need exactly d = {d} initial values")
    f = list(initial)
    for n in range(0, n_max + 1 - d):
        nxt = ZERO
        for j in range(d):
            nxt = nxt - rec.evaluate(j, n) * f[n + j]
        f.append(nxt)
    return f[: n_max + 1]


def degree_bound_report(seq: Sequence[LaurentPoly], bound: float | None = None, offset: int = 0) -> dict:
    """Quadratic degree growth of f(n), n = offset, offset+1, ...

    Records maxdeg(f(n))/(n+1)^2 and -mindeg(f(n))/(n+1)^2 in q-units, a
    least-squares fit of both degrees to A n^2 + B n + C, and the second
    differences of the degree envelope max(maxdeg, -mindeg), which settle to
    2A for quadratic growth.  With ``bound`` the test is sup ratio <= bound.
    Otherwise it passes when the largest second difference over the last half
    of the range exceeds the one over the first half by less than 10%; ratios
    to (n+1)^2 themselves creep up towards their limit and make a poor test.
    """
    if any(not f for f in seq):
        raise ValueError("degree report needs nonzero entries")
    ns = np.arange(offset, offset + len(seq), dtype=float)
    top = np.array([f.maxdeg / 4 for f in seq])
    bot = np.array([-f.mindeg / 4 for f in seq])
    env = np.maximum(np.maximum(top, bot), 0.0)
    ratio = env / (ns + 1) ** 2
    sup = float(ratio.max())
    if len(seq) >= 3:
        fit_top = np.polyfit(ns, top, 2)
        fit_bot = np.polyfit(ns, bot, 2)
        d2 = np.diff(env, 2)
        half = len(d2) // 2
        first = float(d2[: max(half, 1)].max())
        last = float(d2[half:].max())
    else:
        fit_top = fit_bot = np.array([math.nan] * 3)
        first = last = 0.0
    if bound is not None:
        ok = sup <= bound
    else:
        ok = last <= 1.1 * first if first > 0 else last <= 0
    return {
        "sup_ratio": sup,
        "ratios": [float(x) for x in ratio],
        "fit_maxdeg": [float(x) for x in fit_top],
        "fit_neg_mindeg": [float(x) for x in fit_bot],
        "quadratic_constant": float(max(fit_top[0], fit_bot[0])),
        "first_half_d2": first,
        "last_half_d2": last,
        "pass": bool(ok),
    }


def _min_rational_at_least(x: float, ok) -> Fraction:
    # a simple rational near x with ok(C) true; grows upward until the exact test passes
    for den in (1, 10, 1000, 10**6, 10**9):
        c = Fraction(x).limit_denominator(den)
        if ok(c):
            return c
    c = Fraction(x)
    step = Fraction(1, 10**12)
    while not ok(c):
        c += step
        step *= 2
    return c


def l1_growth_certificate(rec: Recurrence, seq: Sequence[LaurentPoly]) -> dict:
    """Certify ||f(n)||_1 <= C^n for an integral recurrence.

    With c_j = ||a_j||_1 the induction step needs C^d >= sum_{j<d} c_j C^j,
    and the base needs ||f(n)||_1 <= C^n for n < d.  C is the smallest
    convenient rational satisfying both; the bound is then checked exactly on
    every supplied term.
    """
    if not rec.integral:
        raise NotIntegralError("the l1 certificate needs a_d = 1 and integer coefficients")
    check = verify_recurrence(rec, seq)
    if not check["ok"]:
        raise ValueError(f"sequence violates the recurrence at n = {check['first_violation']}")
    d = rec.d
    c = [rec.coeff_l1(j) for j in range(d)]

    def step_ok(C: Fraction) -> bool:
        return C >= 1 and C**d >= sum(cj * C**j for j, cj in enumerate(c))

    roots = np.roots([1.0] + [-float(cj) for cj in reversed(c)]) if d else np.array([])
    rho = max([1.0] + [float(r.real) for r in roots if abs(r.imag) < 1e-9 and r.real > 0])
    C = _min_rational_at_least(rho, step_ok)
    for n in range(1, min(d, len(seq))):
        l1 = seq[n].l1()
        if C**n < l1:
            C = _min_rational_at_least(l1 ** (1.0 / n), lambda x: x**n >= l1 and step_ok(x))
    rows = []
    ok = seq[0].l1() <= 1
    for n, f in enumerate(seq):
        good = f.l1() * C.denominator**n <= C.numerator**n
        rows.append((n, good))
        ok = ok and good
    return {"C": C, "c": c, "ok": ok, "first_failure": next((n for n, g in rows if not g), None)}


def random_integral_recurrence(rng: random.Random, d: int, deg: int, coeff: int = 2) -> Recurrence:
    """Random integral recurrence of order d whose coefficients have u- and v-degrees <= deg."""
    a = []
    for _ in range(d):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[(rng.randint(0, deg), rng.randint(0, deg))] = rng.choice([c for c in range(-coeff, coeff + 1) if c])
        a.append(terms)
    a.append({(0, 0): 1})
    return Recurrence(a)
