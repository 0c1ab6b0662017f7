"""Closed formulas: the Borromean rings at roots of unity and Morton's torus knots.

Borromean values are only ever needed at v = exp(i pi / n), where they are
positive reals of size exp(O(n)); everything here therefore works with
natural logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .evaluation import EvalPoint, GrowthSeries, as_fraction
from .qpoly import DivisionError, LaurentPoly, qint

__all__ = [
    "TauTable",
    "tau_table",
    "tau",
    "borromean_ev",
    "borromean_ev_direct",
    "borromean_growth",
    "morton_torus_jones",
    "morton_ev",
    "torus_growth",
    "UnsupportedAngleError",
]


class UnsupportedAngleError(ValueError):
    pass


@dataclass(frozen=True)
class TauTable:
    """prefix[l] = sum_{j=1}^{l} log(4 sin^2(j pi / n)) for 0 <= l <= n-1."""

    n: int
    prefix: np.ndarray

    def log_tau(self, p: int, l: int) -> float:
        """log of tau_{p,l} = prod_{j=p}^{l} 4 sin^2(j pi / n); indices may exceed n.

        Empty products (l < p) give 0; a range containing a multiple of n gives -inf.
        """
        n = self.n
        if l < p:
            return 0.0
        if p < 1:
            raise IndexError("tau indices start at 1")
        block = (p - 1) // n if p % n else None
        if block is None or (l // n) * n >= p:
            return -math.inf
        off = block * n
        return float(self.prefix[l - off] - self.prefix[p - 1 - off])


@lru_cache(maxsize=64)
def tau_table(n: int) -> TauTable:
    if n < 2:
        raise ValueError("tau tables need n >= 2")
    j = np.arange(1, n)
    logs = np.log(4.0 * np.sin(j * np.pi / n) ** 2)
    prefix = np.concatenate([[0.0], np.cumsum(logs)])
    prefix.setflags(write=False)
    return TauTable(n, prefix)


def tau(n: int, p: int, l: int) -> float:
    """log tau_{p,l}; requires 1 <= p and that [p, l] avoids multiples of n."""
    if p < 1 or l < 0:
        raise IndexError(f"tau index out of range: p={p}, l={l}")
    val = tau_table(n).log_tau(p, l)
    if val == -math.inf:
        raise IndexError(f"tau_{{{p},{l}}} contains a vanishing factor for n={n}")
    return val


def _logsumexp(xs: np.ndarray) -> float:
    m = float(np.max(xs))
    return m + math.log(float(np.sum(np.exp(xs - m))))


def borromean_terms(n: int) -> np.ndarray:
    """log of each summand tau_{1,a}^2 / (tau_{1,b}^2 tau_{1,k}), k + n odd, a = (n+k-1)/2, b = (n-k-1)/2."""
    t = tau_table(n).prefix
    k = np.arange(1 - n % 2, n, 2)
    a = (n + k - 1) // 2
    b = (n - k - 1) // 2
    return 2 * t[a] - 2 * t[b] - t[k]


def borromean_ev(n: int) -> float:
    """Natural log of ev_n(J_B(n)) from the tau-product sum.

    ev_n(J_B(n)) = n^2 * sum_{0 <= k < n, k+n odd} tau_{1,a}^2 / (tau_{1,b}^2 tau_{1,k}),
    each summand being |ev_n R(n;a,b,k)|^2.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    return 2 * math.log(n) + _logsumexp(borromean_terms(n))


def borromean_ev_direct(n: int) -> float:
    """Natural log of ev_n(J_B(n)) from Habiro's alternating sum, restricted to n > l > n/2 - 1.

    Each {j} = 2i sin(j pi / n) is tracked as (log|.|, power of i, sign), so
    the sign bookkeeping is done exactly and only magnitudes are floating.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    j = np.arange(1, 2 * n)
    s = np.sin(j * np.pi / n)
    logabs = np.concatenate([[0.0], np.cumsum(np.log(2 * np.abs(s)))])
    negs = np.concatenate([[0], np.cumsum(s < 0)])

    def seg(p, q):
        # log|prod_{j=p}^{q} {j}|, number of factors, number of negative sines
        if q < p:
            return 0.0, 0, 0
        return logabs[q] - logabs[p - 1], q - p + 1, int(negs[q] - negs[p - 1])

    logs, signs = [], []
    for l in range(n):
        if not l > n / 2 - 1:
            continue
        up = seg(n + 1, n + l)
        down = seg(n - l, n - 1)
        d1 = seg(l + 1, n - 1)
        d2 = seg(n + 1, 2 * l + 1)
        lg = 3 * (up[0] + down[0]) - 2 * (d1[0] + d2[0])
        ipow = 3 * (up[1] + down[1]) - 2 * (d1[1] + d2[1])
        nneg = 3 * (up[2] + down[2]) - 2 * (d1[2] + d2[2]) + l
        if ipow % 2:
            raise ArithmeticError("Borromean summand is not real")
        sign = (-1) ** ((ipow // 2) % 2) * (-1) ** (nneg % 2)
        logs.append(lg)
        signs.append(sign)
    logs = np.array(logs)
    signs = np.array(signs)
    m = float(logs.max())
    total = float(np.sum(signs * np.exp(logs - m)))
    if total <= 0:
        raise ArithmeticError("Borromean evaluation is not positive")
    return m + math.log(total)


def borromean_growth(ns) -> list[tuple[int, float]]:
    """(n, (2 pi / n) log ev_n(J_B(n))) for each n."""
    return [(n, 2 * math.pi * borromean_ev(n) / n) for n in ns]


def _morton_exponents(a: int, b: int, n: int):
    """Quarter-unit exponents of the two monomials for each k in 1-n, 3-n, ..., n-1.

    The summation index enters the exponents as k/2, i.e. the sum is over the
    half-integers r = k/2 in [-(n-1)/2, (n-1)/2].
    """
    for k in range(1 - n, n, 2):
        yield a * b * k * k + 2 * k * (a + b) + 2, a * b * k * k + 2 * k * (a - b) - 2


def morton_torus_jones(a: int, b: int, n: int) -> LaurentPoly:
    """Colored Jones polynomial of the torus knot T(a,b) from Morton's formula."""
    if a < 2 or b < 2 or math.gcd(a, b) != 1:
        raise ValueError("T(a,b) needs coprime a, b >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    terms: dict[int, int] = {}
    for e1, e2 in _morton_exponents(a, b, n):
        terms[e1] = terms.get(e1, 0) + 1
        terms[e2] = terms.get(e2, 0) - 1
    num = LaurentPoly(terms).shift(-a * b * (n * n - 1))
    try:
        return num.divexact(qint(n))
    except DivisionError as exc:
        raise DivisionError(f"Morton sum for T({a},{b}), n={n} is not divisible by v^n - v^-n") from exc


def morton_ev(a: int, b: int, n: int, alpha) -> complex:
    """ev_{alpha,n}(J_{T(a,b)}(n)) straight from the closed formula (no polynomial expansion)."""
    alpha = as_fraction(alpha)
    if alpha.denominator == 1:
        raise UnsupportedAngleError("integer alpha is the classical volume conjecture case; not supported")
    p = EvalPoint(alpha, n)
    e1s, e2s = zip(*_morton_exponents(a, b, n))
    pre = -a * b * (n * n - 1)
    t1 = np.pi * np.array([float(t) for t in p.turns([e + pre for e in e1s])])
    t2 = np.pi * np.array([float(t) for t in p.turns([e + pre for e in e2s])])
    s = complex(np.sum(np.exp(1j * t1)) - np.sum(np.exp(1j * t2)))
    # v^n - v^-n = 2 i sin(pi alpha)
    den = 2j * math.sin(math.pi * float(alpha))
    return s / den


def torus_growth(a: int, b: int, alpha, ns) -> GrowthSeries:
    """Growth series of |ev_{alpha,n}(J_{T(a,b)}(n))| for non-integer alpha."""
    pairs = []
    for n in sorted(set(ns)):
        val = abs(morton_ev(a, b, n, alpha))
        pairs.append((n, math.log(val) if val > 0 else -math.inf))
    return GrowthSeries.from_logs(alpha, pairs)
