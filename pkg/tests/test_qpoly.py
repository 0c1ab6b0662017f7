from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qvol.qpoly import (
    ONE,
    ZERO,
    DivisionError,
    LaurentPoly,
    LaurentRatio,
    PoleError,
    V,
    eval_exact,
    norms,
    pack,
    qbinom,
    qbracket,
    qfactorial,
    qfalling,
    qint,
    unpack,
)


def naive_mul(a: LaurentPoly, b: LaurentPoly) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def rand_poly(rng, terms, spread=40, coeff=10**6):
    return LaurentPoly({rng.randint(-spread, spread): rng.randint(-coeff, coeff) for _ in range(terms)})


def test_construction_drops_zeros():
    p = LaurentPoly([(4, 2), (4, -2), (0, 3)])
    assert p.terms == {0: 3}
    assert LaurentPoly({}) == ZERO
    assert not ZERO
    assert ONE == 1


@pytest.mark.parametrize("terms", [3, 30, 200])
def test_multiplication_matches_schoolbook(terms):
    # 200-term factors go through the packed big-integer product
    rng = random.Random(terms)
    for _ in range(5):
        a, b = rand_poly(rng, terms), rand_poly(rng, terms)
        assert (a * b).terms == naive_mul(a, b)


def test_ring_axioms():
    rng = random.Random(1)
    a, b, c = (rand_poly(rng, 12, coeff=50) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ZERO
    assert a**3 == a * a * a


def test_pack_round_trip_with_negative_coefficients():
    p = LaurentPoly({-8: -5, -4: 7, 0: -1, 12: 3})
    lo = p.mindeg
    assert unpack(pack(p, lo, 4, 8), lo, 4, 8) == p


def test_quantum_integers():
    assert qint(2) == LaurentPoly({4: 1, -4: -1})
    assert qint(0) == ZERO
    assert qbracket(3) == LaurentPoly({4: 1, 0: 1, -4: 1})
    for a in range(1, 8):
        assert qbracket(a) * qint(1) == qint(a)


def test_qbinom_is_gaussian_binomial():
    # [4,2] = q^-2 (1 + q + 2q^2 + q^3 + q^4)
    assert qbinom(4, 2) == LaurentPoly.from_q({-2: 1, -1: 1, 0: 2, 1: 1, 2: 1})
    for a in range(9):
        for b in range(a + 1):
            assert qbinom(a, b) * qfactorial(b) * qfactorial(a - b) == qfactorial(a)
            assert all(c > 0 for _, c in qbinom(a, b).items())


def test_qbinom_at_q_equal_one_is_binomial():
    from math import comb

    for a in range(10):
        for b in range(a + 1):
            assert eval_exact(qbinom(a, b), 1) == comb(a, b)


def test_qfalling():
    for a in range(8):
        for b in range(a + 1):
            assert qfalling(a, b) * qfactorial(a - b) == qfactorial(a)
    with pytest.raises(ValueError):
        qfalling(2, 3)


def test_exact_division():
    a, b = qint(6), qint(3)
    assert a.divexact(b) == LaurentPoly({6: 1, -6: 1})
    with pytest.raises(DivisionError):
        qint(5).divexact(qint(2))
    q, r = (qint(5) + ONE).divmod(qint(2))
    assert q * qint(2) + r == qint(5) + ONE


def test_division_random_products():
    rng = random.Random(3)
    for _ in range(20):
        a, b = rand_poly(rng, 8, 20, 9), rand_poly(rng, 5, 20, 9)
        if b:
            assert (a * b).divexact(b) == a


def test_ratio_equality():
    r = LaurentRatio(qint(4), qint(2))
    assert r == LaurentPoly({4: 1, -4: 1})
    assert r.to_poly() == qint(4).divexact(qint(2))
    with pytest.raises(ZeroDivisionError):
        LaurentRatio(ONE, ZERO)


def test_eval_exact():
    x = Fraction(3, 2)
    assert eval_exact(qint(1), x) == x**2 - x**-2
    assert eval_exact(LaurentRatio(qint(2), qint(1)), x) == x**2 + x**-2
    with pytest.raises(PoleError):
        eval_exact(ONE, 0)
    with pytest.raises(PoleError):
        eval_exact(LaurentRatio(ONE, qint(1)), 1)


def test_norms_and_mirror():
    p = LaurentPoly.from_q({-1: 2, 3: -3})
    n = norms(p)
    assert n["l1"] == 5 and n["l2sq"] == 13
    assert n["span"] == 4
    assert p.mirror() == LaurentPoly.from_q({1: 2, -3: -3})
    assert (V * V).in_q_lattice() and not V.in_q_lattice()


def test_json_round_trip():
    p = LaurentPoly({-3: 10**40, 5: -1})
    assert LaurentPoly.from_json(p.to_json()) == p
    with pytest.raises(ValueError):
        LaurentPoly.from_json_obj({"unit": "q", "terms": []})


def test_pretty():
    assert LaurentPoly.from_q({-1: 1, -3: 1, -4: -1}).pretty() == "q^(-1) + q^(-3) - q^(-4)"
    assert ZERO.pretty() == "0"
