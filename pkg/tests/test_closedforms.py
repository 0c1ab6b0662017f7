from __future__ import annotations

import math

import numpy as np
import pytest

from qvol.closedforms import (
    UnsupportedAngleError,
    borromean_ev,
    borromean_ev_direct,
    borromean_growth,
    morton_ev,
    morton_torus_jones,
    tau,
    tau_table,
    torus_growth,
)
from qvol.evaluation import EvalPoint, ev
from qvol.qpoly import ONE
from qvol.statesum import colored_jones


def direct_tau(n, p, l):
    return sum(math.log(4 * math.sin(j * math.pi / n) ** 2) for j in range(p, l + 1))


def test_tau_against_products():
    for n in (5, 12):
        for p in range(1, n):
            for l in range(p, n):
                assert tau(n, p, l) == pytest.approx(direct_tau(n, p, l), abs=1e-10)


def test_tau_identities():
    for n in (3, 7, 16, 31):
        # prod_{j<n} 4 sin^2(j pi/n) = n^2
        assert tau(n, 1, n - 1) == pytest.approx(2 * math.log(n), abs=1e-10)
        for p in range(1, n):
            for l in range(p, n):
                assert tau(n, p, l) == pytest.approx(tau(n, n - l, n - p), abs=1e-10)
                assert tau(n, p + n, l + n) == pytest.approx(tau(n, p, l), abs=1e-10)
    assert tau_table(6).log_tau(3, 2) == 0.0
    with pytest.raises(IndexError):
        tau(6, 5, 7)
    with pytest.raises(IndexError):
        tau(6, 0, 2)


def test_borromean_small_values():
    # n = 2 gives the determinant of the Borromean rings
    assert math.exp(borromean_ev(2)) == pytest.approx(16)
    assert math.exp(borromean_ev(3)) == pytest.approx(90)


def test_borromean_two_formulas_agree():
    for n in list(range(2, 40)) + [100, 257, 512]:
        assert borromean_ev(n) == pytest.approx(borromean_ev_direct(n), rel=1e-12)


def test_borromean_growth_target():
    (n, g), = borromean_growth([4096])
    assert n == 4096
    assert abs(g - 7.32772) / 7.32772 < 0.01


def test_morton_small_cases():
    for n in range(1, 8):
        assert morton_torus_jones(2, 3, n) == morton_torus_jones(3, 2, n)
    assert morton_torus_jones(3, 5, 1) == ONE
    with pytest.raises(ValueError):
        morton_torus_jones(2, 4, 2)


def test_morton_matches_state_sum_for_t25():
    for n in range(1, 7):
        assert morton_torus_jones(2, 5, n) == colored_jones("2: 1 1 1 1 1", n)


def test_morton_ev_matches_polynomial():
    for a, b in ((2, 3), (3, 5)):
        for n in (2, 5, 9):
            want = ev(morton_torus_jones(a, b, n), EvalPoint("0.37", n))
            assert morton_ev(a, b, n, "0.37") == pytest.approx(want, rel=1e-9)
    with pytest.raises(UnsupportedAngleError):
        morton_ev(2, 3, 5, 1)


def test_torus_growth_tends_to_zero():
    s = torus_growth(2, 3, "0.5", [100, 1000])
    assert abs(s.values[1]) < abs(s.values[0]) < 0.05
    assert np.all(np.isfinite(s.values))
