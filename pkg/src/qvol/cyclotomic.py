"""Habiro's cyclotomic expansion of the colored Jones function.

Colors are dimensions throughout: J(1) = 1 for every knot and

    J(n) = sum_{k=0}^{n-1} C(n,k) C_K(k),   C(n,k) = prod_{j=1}^{k} {n+j}{n-j}.

Because J(n) involves C_K(0..n-1), the inverse needs J(1..n+1) to recover
C_K(n).  Writing D(n) = {2n+1}! [2n+2], it reads

    D(n) C_K(n) = sum_{k=1}^{n+1} (-1)^(n+1-k) {2k} [2n+2, n+1-k] [k] J(k),

and the division by D(n) is exact precisely when C_K(n) is a Laurent
polynomial.  That is how integrality is certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .evaluation import as_fraction
from .qpoly import (
    ONE,
    ZERO,
    DivisionError,
    LaurentPoly,
    LaurentRatio,
    eval_exact,
    qbinom,
    qbracket,
    qfactorial,
    qint,
)

__all__ = [
    "CyclotomicSeq",
    "IntegralityError",
    "cyclo_kernel",
    "inverse_kernel",
    "normalizer",
    "cyclotomic_numerator",
    "cyclotomic_seq",
    "reconstruct_jones",
    "transform_at",
    "inverse_transform_at",
    "kernel_ev_bound_check",
    "kernel_ev_values",
    "ev_from_cyclotomic",
    "partitions",
    "boyd_bound",
]


class IntegralityError(ArithmeticError):
    """A cyclotomic coefficient failed to be a Laurent polynomial in q."""


@lru_cache(maxsize=4096)
def cyclo_kernel(n: int, k: int, form: str = "product") -> LaurentPoly:
    """C(n,k) in one of three equivalent shapes.

    ``product``: prod_{j=1}^{k} ({n}^2 - {j}^2)
    ``ratio``:   prod_{j=n-k}^{n+k} {j} / {n}
    ``plus``:    prod_{j=1}^{k} ((v^n + v^-n)^2 - (v^j + v^-j)^2)
    """
    if n < 0 or k < 0:
        raise ValueError("cyclo_kernel needs natural arguments")
    if k == 0:
        return ONE
    if form == "product":
        qn2 = qint(n) * qint(n)
        out = ONE
        for j in range(1, k + 1):
            out = out * (qn2 - qint(j) * qint(j))
        return out
    if form == "ratio":
        if n == 0:
            # {0} = 0 makes the quotient 0/0; the product shape is the definition
            return cyclo_kernel(0, k)
        if k >= n:
            return ZERO
        out = ONE
        for j in range(n - k, n + k + 1):
            if j != n:
                out = out * qint(j)
        return out
    if form == "plus":
        def plus(a: int) -> LaurentPoly:
            return LaurentPoly({2 * a: 1, -2 * a: 1}) if a else LaurentPoly.constant(2)

        pn2 = plus(n) * plus(n)
        out = ONE
        for j in range(1, k + 1):
            out = out * (pn2 - plus(j) * plus(j))
        return out
    raise ValueError(f"unknown kernel form {form!r}")


@lru_cache(maxsize=256)
def normalizer(n: int) -> LaurentPoly:
    """D(n) = {2n+1}! [2n+2], the denominator of the inverse transform at level n."""
    return qfactorial(2 * n + 1) * qbracket(2 * n + 2)


@lru_cache(maxsize=4096)
def _inverse_numerator(n: int, k: int) -> LaurentPoly:
    # D(n) R(n,k): a Laurent polynomial, nonzero exactly for 1 <= k <= n+1
    if not 1 <= k <= n + 1:
        return ZERO
    t = qint(2 * k) * qbinom(2 * n + 2, n + 1 - k) * qbracket(k)
    return -t if (n + 1 - k) % 2 else t


def inverse_kernel(n: int, k: int) -> LaurentRatio:
    """R(n,k) with C_K(n) = sum_k R(n,k) J(k), J indexed by dimension.

    R(n,k) = (-1)^(n+1-k) {k}{2k} [2n+2, n+1-k] / {2n+2}!, supported on
    1 <= k <= n+1.  In particular R(0,1) = 1 and R(n,0) = 0.
    """
    if n < 0 or k < 0:
        raise ValueError("inverse_kernel needs natural arguments")
    num = _inverse_numerator(n, k)
    if not num:
        return LaurentRatio(ZERO)
    return LaurentRatio(num, normalizer(n))


def cyclotomic_numerator(jones: Sequence[LaurentPoly], n: int) -> LaurentPoly:
    """D(n) C_K(n) as a combination of J(1), ..., J(n+1)."""
    if len(jones) < n + 2:
        raise IndexError(f"C_K({n}) needs J(1..{n + 1}); only {len(jones) - 1} values given")
    out = ZERO
    for k in range(1, n + 2):
        out = out + _inverse_numerator(n, k) * jones[k]
    return out


@dataclass(frozen=True)
class CyclotomicSeq:
    """C_K(0), ..., C_K(N), each certified to lie in Z[q^(+-1)]."""

    label: str
    coeffs: tuple[LaurentPoly, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("empty cyclotomic sequence")
        if self.coeffs[0] != ONE:
            raise IntegralityError("C_K(0) must be 1")
        for k, c in enumerate(self.coeffs):
            if not c.in_q_lattice():
                raise IntegralityError(f"C_K({k}) has fractional q-exponents")

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.coeffs[k]

    def to_json_obj(self) -> dict:
        return {
            "knot": self.label,
            "C": [c.to_json_obj() for c in self.coeffs],
            "integrality": "certified",
        }


def cyclotomic_seq(jones: Sequence[LaurentPoly], label: str = "") -> CyclotomicSeq:
    """C_K(0..N-1) from jones = [J(0), J(1), ..., J(N)].

    J(0) is only a placeholder (taken as 1) so that list index equals color.
    Every coefficient is obtained by exact division by D(n); a nonzero
    remainder or a leftover fractional exponent raises IntegralityError.
    """
    jones = list(jones)
    if len(jones) < 2:
        raise ValueError("need at least J(0) and J(1)")
    if jones[0] != ONE or jones[1] != ONE:
        raise ValueError("knot normalization requires J(0) = J(1) = 1")
    coeffs = []
    for n in range(len(jones) - 1):
        num = cyclotomic_numerator(jones, n)
        try:
            c = num.divexact(normalizer(n))
        except DivisionError as exc:
            raise IntegralityError(f"C_K({n}): nonzero remainder after division by D({n})") from exc
        if not c.in_q_lattice():
            raise IntegralityError(f"C_K({n}) = {c.pretty()} has fractional q-exponents")
        coeffs.append(c)
    return CyclotomicSeq(label, tuple(coeffs))


def reconstruct_jones(c: CyclotomicSeq | Sequence[LaurentPoly], n: int) -> LaurentPoly:
    """J(n) = sum_{k<n} C(n,k) C_K(k)."""
    if n < 1:
        raise ValueError("colors start at 1")
    coeffs = c.coeffs if isinstance(c, CyclotomicSeq) else tuple(c)
    if len(coeffs) < n:
        raise IndexError(f"J({n}) needs C_K(0..{n - 1}); only {len(coeffs)} coefficients")
    out = ZERO
    for k in range(n):
        out = out + cyclo_kernel(n, k) * coeffs[k]
    return out


def transform_at(cvals: Sequence[Fraction], x, n_max: int) -> list[Fraction]:
    """Values J(1..n_max) of the forward transform, everything evaluated at q^(1/4) = x."""
    x = Fraction(x)
    return [
        sum((eval_exact(cyclo_kernel(n, k), x) * cvals[k] for k in range(n)), Fraction(0))
        for n in range(1, n_max + 1)
    ]


def inverse_transform_at(jvals: Sequence[Fraction], x, n_max: int) -> list[Fraction]:
    """Values C(0..n_max) of the inverse transform at q^(1/4) = x; jvals[k] = J(k), k >= 1."""
    x = Fraction(x)
    out = []
    for n in range(n_max + 1):
        s = sum((eval_exact(_inverse_numerator(n, k), x) * jvals[k] for k in range(1, n + 2)), Fraction(0))
        out.append(s / eval_exact(normalizer(n), x))
    return out


def kernel_ev_bound_check(alpha, n: int) -> dict:
    """Compare |ev_{alpha,n} C(n,k)| with |3 sin(pi alpha)|^(2k) for 0 <= k < n.

    |ev C(n,k)| = prod_{j<=k} |2 sin(pi alpha (n+j)/n)| |2 sin(pi alpha (n-j)/n)|
    is accumulated in log form, so nothing underflows for large k.
    """
    a = float(as_fraction(alpha))
    if not 0 < a < 1 / 6:
        raise ValueError("the kernel estimate is stated for 0 < alpha < 1/6")
    j = np.arange(1, n, dtype=float)
    logs = np.log(np.abs(2 * np.sin(np.pi * a * (n + j) / n))) + np.log(np.abs(2 * np.sin(np.pi * a * (n - j) / n)))
    log_ev = np.concatenate([[0.0], np.cumsum(logs)])
    k = np.arange(n, dtype=float)
    log_bound = 2 * k * math.log(abs(3 * math.sin(math.pi * a)))
    log_ratio = log_ev - log_bound
    worst = int(np.argmax(log_ratio))
    max_log = float(log_ratio[worst])
    return {
        "alpha": a,
        "n": n,
        "max_ratio": math.exp(max_log),
        "argmax_k": worst,
        "pass": max_log <= 1e-10,
    }


def kernel_ev_values(alpha, n: int) -> np.ndarray:
    """ev_{alpha,n} C(n,k) for k = 0..n-1 as real floats.

    At v = exp(i pi alpha / n) every factor {n+j}{n-j} = -4 sin(pi a (n+j)/n) sin(pi a (n-j)/n)
    is real, so the kernel row is a cumulative product of reals.
    """
    a = float(as_fraction(alpha))
    j = np.arange(1, n, dtype=float)
    fac = -4 * np.sin(np.pi * a * (n + j) / n) * np.sin(np.pi * a * (n - j) / n)
    return np.concatenate([[1.0], np.cumprod(fac)])


def ev_from_cyclotomic(cvals: Sequence[complex] | np.ndarray, alpha, n: int) -> complex:
    """ev_{alpha,n} J(n) = sum_k ev C(n,k) ev C_K(k), given the evaluated C_K(0..n-1)."""
    cvals = np.asarray(cvals, dtype=complex)
    if len(cvals) < n:
        raise IndexError(f"need C_K(0..{n - 1})")
    return complex(np.dot(kernel_ev_values(alpha, n), cvals[:n]))


_PARTITIONS = [1]


def partitions(k: int) -> int:
    """p(k) by Euler's pentagonal recurrence."""
    if k < 0:
        raise ValueError("partitions of a negative number")
    p = _PARTITIONS
    while len(p) <= k:
        m = len(p)
        total = 0
        i = 1
        while True:
            g1 = i * (3 * i - 1) // 2
            if g1 > m:
                break
            sign = 1 if i % 2 else -1
            total += sign * p[m - g1]
            g2 = i * (3 * i + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            i += 1
        p.append(total)
    return p[k]


def boyd_bound(g_l1: int, deg_f: int) -> int:
    """Rigorous ||f||_1 bound from ||f (1-q)...(1-q^m)||_1 and the span of f.

    Dividing by the product multiplies by sum_j p_j q^j (truncated at deg_f),
    so each coefficient of f is at most ||g||_1 sum_{j<=deg_f} p_j.
    """
    if g_l1 < 0 or deg_f < 0:
        raise ValueError("boyd_bound needs natural arguments")
    return g_l1 * (deg_f + 1) * sum(partitions(j) for j in range(deg_f + 1))
