from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from qvol.closedforms import morton_torus_jones
from qvol.cyclotomic import (
    CyclotomicSeq,
    IntegralityError,
    boyd_bound,
    cyclo_kernel,
    cyclotomic_seq,
    ev_from_cyclotomic,
    inverse_kernel,
    inverse_transform_at,
    kernel_ev_bound_check,
    kernel_ev_values,
    partitions,
    reconstruct_jones,
    transform_at,
)
from qvol.evaluation import EvalPoint, ev
from qvol.qpoly import ONE, ZERO, LaurentPoly, LaurentRatio
from qvol.statesum import colored_jones


def jones_list(word: str, n_max: int):
    return [ONE] + [colored_jones(word, n) for n in range(1, n_max + 1)]


def test_kernel_forms_agree():
    for n in range(0, 9):
        for k in range(0, 9):
            p = cyclo_kernel(n, k)
            assert cyclo_kernel(n, k, "plus") == p
            if n > 0:
                assert cyclo_kernel(n, k, "ratio") == p


def test_kernel_vanishes_beyond_n():
    for n in range(1, 7):
        for k in range(n, n + 3):
            assert cyclo_kernel(n, k) == ZERO
    with pytest.raises(ValueError):
        cyclo_kernel(2, 1, "sum")


def test_inverse_kernel_small_values():
    assert inverse_kernel(0, 1) == ONE
    assert inverse_kernel(0, 0) == ZERO
    assert inverse_kernel(1, 0) == ZERO
    assert inverse_kernel(2, 5) == ZERO


def test_kernels_are_mutually_inverse():
    # sum_k R(n,k) C(k,j) = delta_{nj}
    for n in range(0, 6):
        for j in range(0, 6):
            acc = LaurentRatio(ZERO)
            for k in range(1, n + 2):
                acc = acc + inverse_kernel(n, k) * cyclo_kernel(k, j)
            assert acc == (ONE if n == j else ZERO)


def test_figure_eight_coefficients_are_one():
    c = cyclotomic_seq(jones_list("3: 1 -2 1 -2", 8))
    assert all(x == ONE for x in c.coeffs)


def test_trefoil_coefficients():
    # closed form (-1)^k q^(-k(k+3)/2) for this handedness
    c = cyclotomic_seq([ONE] + [morton_torus_jones(2, 3, n) for n in range(1, 11)])
    for k, x in enumerate(c.coeffs):
        assert x == LaurentPoly.from_q({-k * (k + 3) // 2: (-1) ** k})


def test_reconstruction():
    js = jones_list("2: 1 1 1 1 1", 7)
    c = cyclotomic_seq(js)
    for n in range(1, 7):
        assert reconstruct_jones(c, n) == js[n]
    with pytest.raises(IndexError):
        reconstruct_jones(c, 20)


def test_non_jones_sequence_is_not_integral():
    with pytest.raises(IntegralityError):
        cyclotomic_seq([ONE, ONE, LaurentPoly.from_q({1: 1})])
    with pytest.raises(ValueError):
        cyclotomic_seq([ONE, LaurentPoly.from_q({1: 1})])


def test_seq_validation_and_json():
    with pytest.raises(IntegralityError):
        CyclotomicSeq("x", (LaurentPoly.from_q({1: 1}),))
    with pytest.raises(IntegralityError):
        CyclotomicSeq("x", (ONE, LaurentPoly({1: 1})))
    obj = CyclotomicSeq("4_1", (ONE, ONE)).to_json_obj()
    assert obj["knot"] == "4_1" and obj["integrality"] == "certified" and len(obj["C"]) == 2


def test_rational_transforms_round_trip():
    rng = random.Random(4)
    x = Fraction(3, 2)
    for _ in range(10):
        c = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(6)]
        j = transform_at(c, x, 6)
        assert inverse_transform_at([None] + j, x, 5) == c


def test_kernel_evaluations():
    for n in (3, 8):
        vals = kernel_ev_values("0.1", n)
        for k in range(n):
            assert vals[k] == pytest.approx(ev(cyclo_kernel(n, k), EvalPoint("0.1", n)).real, abs=1e-12)
    js = jones_list("3: 1 -2 1 -2", 6)
    for n in range(1, 7):
        assert ev_from_cyclotomic([1.0] * n, "0.1", n) == pytest.approx(ev(js[n], EvalPoint("0.1", n)))


def test_kernel_bound_check():
    r = kernel_ev_bound_check(0.1, 200)
    assert r["pass"] and r["max_ratio"] <= 1 + 1e-12
    with pytest.raises(ValueError):
        kernel_ev_bound_check(0.2, 10)


def brute_partitions(k: int, largest: int | None = None) -> int:
    largest = k if largest is None else largest
    if k == 0:
        return 1
    return sum(brute_partitions(k - j, j) for j in range(1, min(k, largest) + 1))


def test_partitions():
    assert [partitions(k) for k in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert partitions(100) == 190569292
    for k in range(20):
        assert partitions(k) == brute_partitions(k)
    with pytest.raises(ValueError):
        partitions(-1)


@pytest.mark.parametrize("k", [1000, 2000, 5000, 10000])
def test_hardy_ramanujan(k):
    approx = math.exp(math.pi * math.sqrt(2 * k / 3)) / (4 * k * math.sqrt(3))
    assert 0.8 < partitions(k) / approx < 1.0


def test_boyd_bound():
    # f = 1 + q + q^2, g = f (1-q)(1-q^2)
    f = LaurentPoly.from_q({0: 1, 1: 1, 2: 1})
    g = f * LaurentPoly.from_q({0: 1, 1: -1}) * LaurentPoly.from_q({0: 1, 2: -1})
    assert f.l1() <= boyd_bound(g.l1(), 2)
    assert boyd_bound(1, 0) == 1
    assert boyd_bound(3, 2) == 3 * 3 * (1 + 1 + 2)
    with pytest.raises(ValueError):
        boyd_bound(-1, 2)
