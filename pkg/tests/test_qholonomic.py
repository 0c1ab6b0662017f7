from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qvol.qholonomic import (
    NotIntegralError,
    Recurrence,
    degree_bound_report,
    l1_growth_certificate,
    random_integral_recurrence,
    solve_forward,
    verify_recurrence,
)
from qvol.qpoly import ONE, LaurentPoly

# f(n+1) - (1 - q u) f(n) = 0 with u = q^n
PRODUCT = Recurrence([{(0, 0): -1, (1, 1): 1}, {(0, 0): 1}])


def products(n_max):
    seq = [ONE]
    for k in range(1, n_max + 1):
        seq.append(seq[-1] * LaurentPoly.from_q({0: 1, k: -1}))
    return seq


def test_product_sequence():
    seq = products(12)
    assert verify_recurrence(PRODUCT, seq) == {"ok": True, "first_violation": None}
    assert solve_forward(PRODUCT, [ONE], 12) == seq
    cert = l1_growth_certificate(PRODUCT, seq)
    assert cert["C"] == 2 and cert["ok"] and cert["c"] == [2]


def test_first_violation():
    seq = products(6)
    seq[3] = seq[3] + ONE
    assert verify_recurrence(PRODUCT, seq) == {"ok": False, "first_violation": 2}
    with pytest.raises(ValueError):
        l1_growth_certificate(PRODUCT, seq)


def test_rational_coefficients_are_verified_exactly():
    rec = PRODUCT.scaled({(0, 0): Fraction(1, 3)})
    assert not rec.integral
    assert verify_recurrence(rec, products(5))["ok"]
    with pytest.raises(NotIntegralError):
        solve_forward(rec, [ONE], 4)
    with pytest.raises(NotIntegralError):
        l1_growth_certificate(rec, products(5))


def test_json_round_trip():
    rec = Recurrence([{(2, -1): Fraction(3, 4)}, {(0, 0): -2, (1, 0): 1}, {(0, 0): 1}])
    assert Recurrence.from_json(rec.to_json()) == rec
    with pytest.raises(ValueError):
        Recurrence.from_json_obj({"d": 3, "a": [[[0, 0, "1"]], [[0, 0, "1"]]]})
    with pytest.raises(ValueError):
        Recurrence([{(0, 0): 1}, {}])


def test_random_recurrences_certify():
    rng = random.Random(7)
    for _ in range(10):
        rec = random_integral_recurrence(rng, rng.randint(1, 3), rng.randint(1, 4))
        seq = solve_forward(rec, [ONE] * rec.d, 40)
        cert = l1_growth_certificate(rec, seq)
        assert cert["ok"], cert
        c = cert["C"]
        assert c**rec.d >= sum(cj * c**j for j, cj in enumerate(cert["c"]))


def test_degree_report_quadratic_and_cubic():
    quad = [LaurentPoly.from_q({n * n: 1, -n: 1}) for n in range(30)]
    rep = degree_bound_report(quad)
    assert rep["pass"] and rep["quadratic_constant"] == pytest.approx(1)
    cubic = [LaurentPoly.from_q({n**3: 1}) for n in range(30)]
    assert not degree_bound_report(cubic)["pass"]
    assert degree_bound_report(quad, bound=1.0)["pass"]
    with pytest.raises(ValueError):
        degree_bound_report([ONE, LaurentPoly()])
