"""Evaluation at roots of unity, growth series, and the Mahler measure."""

from __future__ import annotations

import csv
import heapq
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .qpoly import LaurentPoly

__all__ = [
    "EvalPoint",
    "GrowthSeries",
    "as_fraction",
    "ev",
    "log_abs_ev",
    "log_abs_ev_qfactorial",
    "log_abs_ev_qint",
    "mahler_measure",
    "growth_series",
]


def as_fraction(alpha) -> Fraction:
    """Exact rational stand-in for an angle; floats go through limit_denominator."""
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, int):
        return Fraction(alpha)
    if isinstance(alpha, str):
        return Fraction(alpha)
    return Fraction(float(alpha)).limit_denominator(10**12)


@dataclass(frozen=True)
class EvalPoint:
    """q = exp(2 pi i alpha / n) with q^(1/4) = exp(pi i alpha / (2n))."""

    alpha: Fraction
    n: int

    def __init__(self, alpha, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "alpha", as_fraction(alpha))
        object.__setattr__(self, "n", int(n))

    def turns(self, exponents: Iterable[int]) -> list[Fraction]:
        """Angle of q^(e/4) divided by pi, reduced exactly into [0, 2)."""
        p, r = self.alpha.numerator, self.alpha.denominator
        mod = 4 * self.n * r
        den = 2 * self.n * r
        return [Fraction((p * e) % mod, den) for e in exponents]

    def _turns_float(self, exponents: Sequence[int]) -> np.ndarray:
        p, r = self.alpha.numerator, self.alpha.denominator
        mod = 4 * self.n * r
        den = 2 * self.n * r
        # int / int is correctly rounded in Python
        return np.array([((p * e) % mod) / den for e in exponents], dtype=float)


_EPS = 2.0**-52


def _scaled_float_terms(f: LaurentPoly) -> tuple[list[int], np.ndarray, int]:
    items = f.items()
    exps = [e for e, _ in items]
    coeffs = [c for _, c in items]
    top = max(abs(c) for c in coeffs).bit_length()
    shift = max(0, top - 1000)
    if shift:
        vals = np.array([float(c >> shift) if c >= 0 else -float((-c) >> shift) for c in coeffs])
    else:
        vals = np.array([float(c) for c in coeffs])
    return exps, vals, shift


def _ev_float(f: LaurentPoly, p: EvalPoint) -> tuple[complex, float, int]:
    """Value, absolute error bound, binary exponent: result = value * 2^exp."""
    exps, vals, shift = _scaled_float_terms(f)
    ang = np.pi * p._turns_float(exps)
    re = math.fsum(vals * np.cos(ang))
    im = math.fsum(vals * np.sin(ang))
    l1 = float(np.abs(vals).sum())
    err = 8 * _EPS * l1 + 2.0**-1000 * len(exps) * (1 if shift else 0) * l1
    return complex(re, im), err, shift


def _ev_mp(f: LaurentPoly, p: EvalPoint, prec: int) -> mpmath.mpc:
    with mpmath.workprec(prec):
        exps = [e for e, _ in f.items()]
        turns = p.turns(exps)
        total = mpmath.mpc(0)
        for (e, c), t in zip(f.items(), turns):
            ang = mpmath.pi * mpmath.mpf(t.numerator) / t.denominator
            total += c * mpmath.expj(ang)
        return total


def _ev_ext(f: LaurentPoly, p: EvalPoint) -> tuple[mpmath.mpc | complex, bool]:
    """Accurate value; second item is True when the value is an exact zero."""
    if not f:
        return 0j, True
    val, err, shift = _ev_float(f, p)
    if shift == 0 and abs(val) > 1e13 * err:
        return val, False
    # cancellation or huge coefficients: redo in enough working precision
    l1_bits = f.l1().bit_length()
    prec = l1_bits + 80
    for _ in range(4):
        mv = _ev_mp(f, p, prec)
        with mpmath.workprec(prec):
            mag = abs(mv)
            floor = mpmath.ldexp(1, l1_bits + 16 - prec)
            if mag > mpmath.ldexp(floor, 45):
                return mv, False
        prec *= 2
    # the value stays below resolution at every precision tried
    return 0j, True


def ev(f: LaurentPoly, p: EvalPoint) -> complex:
    """f evaluated at q = exp(2 pi i alpha / n) (square roots per EvalPoint)."""
    val, _ = _ev_ext(f, p)
    if isinstance(val, complex):
        return val
    return complex(val)


def log_abs_ev(f: LaurentPoly, p: EvalPoint) -> float:
    """log|ev(f, p)|, safe when the value overflows a double; -inf for zero."""
    val, zero = _ev_ext(f, p)
    if zero:
        return -math.inf
    if isinstance(val, complex):
        return math.log(abs(val))
    return float(mpmath.log(abs(val)))


def _sin_turns(m: int, n: int, alpha: Fraction) -> tuple[np.ndarray, bool]:
    """x_j = j*alpha/n mod 1 for j = 1..m, and whether some x_j is an integer."""
    p, r = alpha.numerator, alpha.denominator
    mod = n * r
    j = np.arange(1, m + 1, dtype=np.int64)
    if abs(p) * max(m, 1) < 2**62 and mod < 2**62:
        res = (j * p) % mod
        zero = bool(np.any(res == 0))
        return res / mod, zero
    res = [(int(jj) * p) % mod for jj in j]
    return np.array([x / mod for x in res]), any(x == 0 for x in res)


def log_abs_ev_qint(js: np.ndarray, n: int, alpha=1) -> np.ndarray:
    """log|{j}| = log|2 sin(pi j alpha / n)| for an array of indices."""
    alpha = as_fraction(alpha)
    p, r = alpha.numerator, alpha.denominator
    js = np.asarray(js, dtype=np.int64)
    res = (js * p) % (n * r)
    return np.log(np.abs(2 * np.sin(np.pi * res / (n * r))))


def log_abs_ev_qfactorial(n: int, m: int, alpha=1) -> float:
    """Sum of log|2 sin(j pi alpha / n)| over j = 1..m, i.e. log|ev({m}!)|.

    Returns -inf when one of the factors vanishes exactly.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 0.0
    x, zero = _sin_turns(m, n, as_fraction(alpha))
    if zero:
        return -math.inf
    return float(np.sum(np.log(2 * np.abs(np.sin(np.pi * x)))))


# Mahler measure by adaptive Gauss-Kronrod (7/15) quadrature of log|f| on the circle

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], [_WG[-1]], _WG[-2::-1]])


def _log_abs_on_circle(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    z = np.exp(2j * np.pi * t)
    vals = np.polynomial.polynomial.polyval(z, coeffs)
    return np.log(np.maximum(np.abs(vals), 1e-300))


def mahler_measure(f: LaurentPoly, tol: float = 1e-8, max_intervals: int = 200000) -> float:
    """exp of the mean of log|f| over the unit circle, to absolute log-error ~tol."""
    if not f:
        raise ValueError("Mahler measure of the zero polynomial")
    if f.is_monomial():
        return float(abs(next(iter(f.terms.values()))))
    items = f.items()
    lo = items[0][0]
    step = 0
    for e, _ in items:
        step = math.gcd(step, e - lo)
    top = max(abs(c) for _, c in items)
    scale_log = math.log(top)
    deg = (items[-1][0] - lo) // step
    coeffs = np.zeros(deg + 1)
    for e, c in items:
        coeffs[(e - lo) // step] = c / top
    # shift the period so cyclotomic zeros do not land on nodes
    t0 = 0.1234567891234

    def rule(a: float, b: float) -> tuple[float, float]:
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        y = _log_abs_on_circle(coeffs, t0 + mid + half * _NODES)
        k = half * float(_KW @ y)
        g = half * float(_GW @ y)
        return k, abs(k - g)

    k, e = rule(0.0, 1.0)
    heap = [(-e, 0.0, 1.0, k)]
    total, err = k, e
    while err > tol and len(heap) < max_intervals:
        ne, a, b, kv = heapq.heappop(heap)
        m = 0.5 * (a + b)
        k1, e1 = rule(a, m)
        k2, e2 = rule(m, b)
        total += k1 + k2 - kv
        err += e1 + e2 + ne
        heapq.heappush(heap, (-e1, a, m, k1))
        heapq.heappush(heap, (-e2, m, b, k2))
    return math.exp(total + scale_log)


@dataclass(frozen=True)
class GrowthSeries:
    """Pairs (n, log|ev_{alpha,n}(J(n))|/n), strictly increasing in n."""

    alpha: Fraction
    entries: tuple[tuple[int, float], ...] = field(default=())

    def __post_init__(self):
        ns = [n for n, _ in self.entries]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("growth series entries must be strictly increasing in n")
        if any(not math.isfinite(v) for _, v in self.entries):
            raise ValueError("growth series values must be finite")

    @property
    def ns(self) -> list[int]:
        return [n for n, _ in self.entries]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.entries]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value"])
        for n, v in self.entries:
            w.writerow([n, format(v, ".17g")])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, alpha=1) -> "GrowthSeries":
        # provenance lines start with '#'
        lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
        rows = list(csv.reader(lines))
        if not rows or rows[0] != ["n", "value"]:
            raise ValueError("growth CSV must start with header n,value")
        return cls(as_fraction(alpha), tuple((int(n), float(v)) for n, v in rows[1:]))

    @classmethod
    def from_logs(cls, alpha, pairs: Iterable[tuple[int, float]]) -> "GrowthSeries":
        """Build from (n, log|value|) pairs, dropping exact zeros (-inf)."""
        entries = tuple(sorted((n, lv / n) for n, lv in pairs if math.isfinite(lv)))
        return cls(as_fraction(alpha), entries)


def growth_series(values: Iterable[tuple[int, LaurentPoly]], alpha) -> GrowthSeries:
    """Growth series of a polynomial sequence; exact-zero evaluations are omitted."""
    values = list(values)
    ns = [n for n, _ in values]
    if len(set(ns)) != len(ns):
        raise ValueError("n values must be distinct")
    return GrowthSeries.from_logs(alpha, ((n, log_abs_ev(f, EvalPoint(alpha, n))) for n, f in values))
