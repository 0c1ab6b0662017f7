from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from qvol.evaluation import (
    EvalPoint,
    GrowthSeries,
    as_fraction,
    ev,
    growth_series,
    log_abs_ev,
    log_abs_ev_qfactorial,
    log_abs_ev_qint,
    mahler_measure,
)
from qvol.qpoly import ONE, ZERO, LaurentPoly, qfactorial, qint


def test_as_fraction():
    assert as_fraction("0.37") == Fraction(37, 100)
    assert as_fraction(0.5) == Fraction(1, 2)
    assert as_fraction(2) == 2


@pytest.mark.parametrize("alpha", ["1", "0.37", "1/3"])
def test_quantum_integer_is_a_sine(alpha):
    # {m} = v^m - v^-m = 2i sin(pi alpha m / n)
    a = float(Fraction(alpha))
    for n in (3, 7, 20):
        for m in range(1, 2 * n):
            want = 2j * math.sin(math.pi * a * m / n)
            assert abs(ev(qint(m), EvalPoint(alpha, n)) - want) < 1e-12


def test_ev_matches_cmath_on_random_poly():
    rng = random.Random(5)
    for _ in range(20):
        f = LaurentPoly({rng.randint(-30, 30): rng.randint(-9, 9) for _ in range(8)})
        alpha, n = Fraction(rng.randint(1, 9), rng.randint(1, 9)), rng.randint(2, 40)
        x = cmath.exp(1j * math.pi * float(alpha) / (2 * n))
        want = sum(c * x**e for e, c in f.items())
        assert abs(ev(f, EvalPoint(alpha, n)) - want) < 1e-9


def test_log_abs_ev_survives_overflow():
    # (1 + q)^3000 near q = 1 is about 2^3000
    f = (ONE + LaurentPoly({4: 1})) ** 3000
    p = EvalPoint("0.01", 1000)
    want = 3000 * math.log(abs(1 + cmath.exp(2j * math.pi * 0.01 / 1000)))
    assert log_abs_ev(f, p) == pytest.approx(want, rel=1e-10)
    assert log_abs_ev(ZERO, p) == -math.inf


def test_qfactorial_logs_agree_with_polynomials():
    for n in (5, 9):
        for m in range(n):
            direct = log_abs_ev(qfactorial(m), EvalPoint(1, n))
            assert log_abs_ev_qfactorial(n, m) == pytest.approx(direct, abs=1e-9)
    assert log_abs_ev_qfactorial(4, 4) == -math.inf
    js = np.arange(1, 6)
    assert np.allclose(log_abs_ev_qint(js, 11), np.log(2 * np.sin(np.pi * js / 11)))


def test_mahler_jensen_examples():
    assert mahler_measure(LaurentPoly.from_q({1: 2, 0: 1})) == pytest.approx(2, abs=1e-10)
    # a root on the circle makes log|f| singular; only the requested tolerance is promised
    assert mahler_measure(LaurentPoly.from_q({1: 1, 0: 1})) == pytest.approx(1, abs=1e-7)
    golden_sq = ((1 + 5**0.5) / 2) ** 2
    assert mahler_measure(LaurentPoly.from_q({2: 1, 1: -3, 0: 1})) == pytest.approx(golden_sq, rel=1e-9)


def test_mahler_against_roots():
    rng = random.Random(8)
    for _ in range(20):
        coeffs = [rng.randint(-5, 5) for _ in range(rng.randint(2, 9))]
        coeffs[0] = coeffs[0] or 1
        coeffs[-1] = coeffs[-1] or 2
        f = LaurentPoly.from_q({i: c for i, c in enumerate(coeffs)})
        roots = np.roots(coeffs[::-1])
        want = abs(coeffs[-1]) * np.prod(np.maximum(1, np.abs(roots)))
        assert mahler_measure(f) == pytest.approx(want, rel=1e-6)


def test_growth_series_csv_round_trip():
    fs = [(n, qint(1) * qint(2)) for n in (3, 4, 5)]
    g = growth_series(fs, "0.5")
    text = g.to_csv()
    assert text.splitlines()[0] == "n,value"
    back = GrowthSeries.from_csv("# provenance\n" + text, "0.5")
    assert back == g


def test_growth_series_validation():
    with pytest.raises(ValueError):
        GrowthSeries(Fraction(1), ((3, 0.1), (2, 0.2)))
    with pytest.raises(ValueError):
        growth_series([(2, ONE), (2, ONE)], 1)
    with pytest.raises(ValueError):
        GrowthSeries.from_csv("a,b\n1,2\n")
