"""The Lobachevsky function and the octahedral growth rate of the R-matrix.

At q = exp(2 pi i / n) the weight R+(n;a,b,k) has log-modulus

    L(b+k) - L(b) - L(k) + L(a) - L(a-k),   L(m) = sum_{j<=m} log|2 sin(j pi / n)|,

and since L(alpha n) = -(n/pi) Lambda(pi alpha) + O(log n) the rescaled growth
is f(alpha, beta, kappa)/pi with f the combination of five Lobachevsky values
below.  f is maximised at (3/4, 1/4, 1/2), where it equals half the volume of
the regular ideal octahedron.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .evaluation import as_fraction, log_abs_ev_qfactorial

__all__ = [
    "lobachevsky",
    "lobachevsky_quad",
    "V8",
    "V3",
    "OctaDomainPoint",
    "DomainError",
    "f_octa",
    "grad_f",
    "hess_f",
    "maximize_f",
    "facet_max",
    "critical_residuals",
    "log_R_growth",
    "scan_R_growth",
    "scan_R_grid",
    "qfactorial_asymptotic_check",
]

_N_SERIES = 40


@lru_cache(maxsize=1)
def _series_coeffs() -> np.ndarray:
    # Lambda(z) = z - z log(2z) + sum_k 2^(2k-1) |B_2k| z^(2k+1) / (k (2k)! (2k+1))
    out = []
    for k in range(1, _N_SERIES + 1):
        b = abs(mpmath.bernoulli(2 * k))
        out.append(float(mpmath.mpf(2) ** (2 * k - 1) * b / (k * mpmath.factorial(2 * k) * (2 * k + 1))))
    return np.array(out)


def _lob_half(z: np.ndarray) -> np.ndarray:
    # 0 <= z <= pi/2; the series converges like (z/pi)^(2k)
    c = _series_coeffs()
    z2 = z * z
    acc = np.zeros_like(z)
    for ck in c[::-1]:
        acc = acc * z2 + ck
    with np.errstate(divide="ignore", invalid="ignore"):
        head = np.where(z > 0, z - z * np.log(2 * z), 0.0)
    return head + acc * z**3


def lobachevsky(z):
    """Lambda(z) = -int_0^z log|2 sin x| dx for a float or an array."""
    arr = np.asarray(z, dtype=float)
    r = np.mod(arr, np.pi)
    flip = r > np.pi / 2
    w = np.where(flip, np.pi - r, r)
    val = _lob_half(w)
    val = np.where(flip, -val, val)
    if np.ndim(z) == 0:
        return float(val)
    return val


def lobachevsky_quad(z: float, dps: int = 30) -> float:
    """Independent value of Lambda(z) by adaptive quadrature of the defining integral."""
    if z < 0:
        return -lobachevsky_quad(-z, dps)
    with mpmath.workdps(dps):
        f = lambda x: -mpmath.log(abs(2 * mpmath.sin(x)))
        # split at the logarithmic singularities j*pi
        pts = [mpmath.mpf(0)] + [j * mpmath.pi for j in range(1, int(z // math.pi) + 1)]
        if pts[-1] < z:
            pts.append(mpmath.mpf(z))
        return float(mpmath.quad(f, pts)) if len(pts) > 1 else 0.0


V8 = 8 * lobachevsky(math.pi / 4)
# regular ideal tetrahedron: 3 Lambda(pi/3) = 2 Lambda(pi/6)
V3 = 3 * lobachevsky(math.pi / 3)


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class OctaDomainPoint:
    """(alpha, beta, kappa) with 0 <= beta+kappa <= 1 and 0 <= alpha-kappa <= 1."""

    alpha: float
    beta: float
    kappa: float

    def __post_init__(self):
        a, b, k = self.alpha, self.beta, self.kappa
        tol = 1e-15
        if not all(-tol <= x <= 1 + tol for x in (a, b, k)):
            raise DomainError(f"coordinates must lie in [0,1]: {self}")
        if not (-tol <= b + k <= 1 + tol and -tol <= a - k <= 1 + tol):
            raise DomainError(f"need 0 <= beta+kappa <= 1 and 0 <= alpha-kappa <= 1: {self}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.kappa)

    def z(self) -> tuple[complex, complex, complex]:
        return tuple(complex(math.cos(2 * math.pi * x), math.sin(2 * math.pi * x)) for x in self.as_tuple())


def _f(a, b, k):
    L = lobachevsky
    pi = np.pi
    return -L(pi * (b + k)) + L(pi * b) + L(pi * k) - L(pi * a) + L(pi * (a - k))


def f_octa(p: OctaDomainPoint) -> float:
    return float(_f(p.alpha, p.beta, p.kappa))


def _g(x: float) -> float:
    # Lambda'(x)
    return -math.log(abs(2 * math.sin(x)))


def _h(x: float) -> float:
    # Lambda''(x)
    return -1.0 / math.tan(x)


def grad_f(a: float, b: float, k: float) -> np.ndarray:
    pi = math.pi
    return pi * np.array([
        -_g(pi * a) + _g(pi * (a - k)),
        -_g(pi * (b + k)) + _g(pi * b),
        -_g(pi * (b + k)) + _g(pi * k) - _g(pi * (a - k)),
    ])


def hess_f(a: float, b: float, k: float) -> np.ndarray:
    pi = math.pi
    hak, hbk = _h(pi * (a - k)), _h(pi * (b + k))
    return pi * pi * np.array([
        [-_h(pi * a) + hak, 0.0, -hak],
        [0.0, -hbk + _h(pi * b), -hbk],
        [-hak, -hbk, -hbk + _h(pi * k) + hak],
    ])


def _interior(x: np.ndarray) -> bool:
    a, b, k = x
    return 0 < a < 1 and 0 < b < 1 and 0 < k < 1 and 0 < b + k < 1 and 0 < a - k < 1


def _grid(step: float):
    m = int(round(1 / step))
    t = np.arange(m + 1) / m
    A, B, K = np.meshgrid(t, t, t, indexing="ij")
    ok = (B + K <= 1) & (A - K >= 0)
    return A[ok], B[ok], K[ok]


def _refine(x: np.ndarray, iters: int = 100) -> np.ndarray:
    """Damped Newton ascent from an interior point, falling back to gradient steps."""
    fx = float(_f(*x))
    for _ in range(iters):
        g = grad_f(*x)
        if np.max(np.abs(g)) < 1e-14:
            break
        H = hess_f(*x)
        try:
            step = -np.linalg.solve(H, g)
            if g @ step <= 0:
                raise np.linalg.LinAlgError
        except np.linalg.LinAlgError:
            step = g / max(1.0, float(np.linalg.norm(g)))
        t = 1.0
        while t > 1e-12:
            y = x + t * step
            if _interior(y):
                fy = float(_f(*y))
                if fy >= fx - 1e-15:
                    break
            t *= 0.5
        else:
            break
        if np.allclose(y, x, rtol=0, atol=1e-16):
            break
        x, fx = y, fy
    return x


def maximize_f(step: float = 1 / 64) -> tuple[OctaDomainPoint, float]:
    """Global maximum of f over the closed domain: grid seeding, then Newton refinement."""
    A, B, K = _grid(step)
    vals = _f(A, B, K)
    i = int(np.argmax(vals))
    x = np.array([A[i], B[i], K[i]])
    if _interior(x):
        x = _refine(x)
    p = OctaDomainPoint(*map(float, x))
    return p, f_octa(p)


_FACETS = {
    "alpha=0": lambda s, t: (0.0, s, 0.0),
    "alpha=1": lambda s, t: (1.0, s, t),
    "beta=0": lambda s, t: (s, 0.0, t),
    "beta=1": lambda s, t: (s, 1.0, 0.0),
    "kappa=0": lambda s, t: (s, t, 0.0),
    "kappa=1": lambda s, t: (1.0, 0.0, 1.0),
    "beta+kappa=1": lambda s, t: (s, 1.0 - t, t),
    "alpha-kappa=0": lambda s, t: (t, s, t),
}


def facet_max(facet: str, m: int = 256) -> tuple[OctaDomainPoint, float]:
    """Max of f on one boundary facet of the domain, by a dense (m+1)^2 grid."""
    if facet not in _FACETS:
        raise ValueError(f"unknown facet {facet!r}; choose from {sorted(_FACETS)}")
    t = np.arange(m + 1) / m
    S, T = np.meshgrid(t, t, indexing="ij")
    A, B, K = (np.broadcast_to(np.asarray(c, dtype=float), S.shape) for c in _FACETS[facet](S, T))
    ok = (B + K <= 1 + 1e-15) & (A - K >= -1e-15)
    vals = np.where(ok, _f(A, B, K), -np.inf)
    i = np.unravel_index(int(np.argmax(vals)), vals.shape)
    p = OctaDomainPoint(float(A[i]), float(B[i]), float(min(K[i], 1.0)))
    return p, float(vals[i])


def critical_residuals(p: OctaDomainPoint) -> tuple[float, float, float]:
    """Log-modulus residuals of the three critical-point equations.

    |z_a - 1| = |z_a/z_k - 1|,  |z_b z_k - 1| = |z_b - 1|,
    |z_b z_k - 1| |z_a/z_k - 1| = |z_k - 1|.
    """
    za, zb, zk = p.z()
    lg = lambda w: math.log(abs(w))
    return (
        lg(za - 1) - lg(za / zk - 1),
        lg(zb * zk - 1) - lg(zb - 1),
        lg(zb * zk - 1) + lg(za / zk - 1) - lg(zk - 1),
    )


@lru_cache(maxsize=16)
def _L_table(n: int) -> np.ndarray:
    # L[m] = log|ev_n({m}!)| for 0 <= m <= n-1
    j = np.arange(1, n)
    return np.concatenate([[0.0], np.cumsum(np.log(2 * np.sin(j * np.pi / n)))])


def log_R_growth(n: int, p: OctaDomainPoint | tuple, sign: int = 1) -> float:
    """log|ev_n R(n;a,b,k)| at a = floor(alpha n), b = floor(beta n), k = floor(kappa n)."""
    if not isinstance(p, OctaDomainPoint):
        p = OctaDomainPoint(*p)
    a, b, k = (math.floor(float(as_fraction(x)) * n) for x in p.as_tuple())
    return log_R_entry(n, a, b, k, sign)


def log_R_entry(n: int, a: int, b: int, k: int, sign: int = 1) -> float:
    """log|ev_n R(n;a,b,k)| from five quantum factorials; -inf if the weight vanishes."""
    if sign < 0:
        a, b = b, a
    if not (0 <= k and 0 <= a < n and 0 <= b < n and b + k <= n - 1 and a - k >= 0):
        raise DomainError(f"colors (a,b,k)=({a},{b},{k}) are not admissible for n={n}")
    L = lambda m: log_abs_ev_qfactorial(n, m)
    return L(b + k) - L(b) - L(k) + L(a) - L(a - k)


def scan_R_growth(n: int, sign: int = 1) -> dict:
    """Exhaustive max of log|ev_n R(n;a,b,k)| over all admissible colors.

    The log-modulus splits as [L(b+k) - L(b)] + [L(a) - L(a-k)] - L(k), so for
    each k the two brackets are maximised separately: O(n^2) work.
    """
    L = _L_table(n)
    best = (-math.inf, 0, 0, 0)
    for k in range(n):
        bs = np.arange(0, n - k)
        left = L[bs + k] - L[bs]
        as_ = np.arange(k, n)
        right = L[as_] - L[as_ - k]
        ib, ia = int(np.argmax(left)), int(np.argmax(right))
        v = float(left[ib] + right[ia] - L[k])
        if v > best[0]:
            best = (v, int(as_[ia]), int(bs[ib]), k)
    v, a, b, k = best
    if sign < 0:
        a, b = b, a
    return {"n": n, "sign": sign, "max": v, "a": a, "b": b, "k": k, "max_over_n": v / n}


def scan_R_grid(n: int, sign: int = 1):
    """Every admissible (a, b, k, log|ev_n R|), in lexicographic order."""
    L = _L_table(n)
    for a in range(n):
        for k in range(a + 1):
            for b in range(n - k):
                v = L[b + k] - L[b] - L[k] + L[a] - L[a - k]
                yield (b, a, k, float(v)) if sign < 0 else (a, b, k, float(v))


def qfactorial_asymptotic_check(alpha, ns, bound: float = 5.0) -> dict:
    """Residuals rho(n) = log|ev_n({floor(alpha n)}!)| + (n/pi) Lambda(pi alpha), scaled by log n."""
    a = as_fraction(alpha)
    if not 0 < a < 1:
        raise ValueError("alpha must lie in (0, 1)")
    lam = lobachevsky(math.pi * float(a))
    rows = []
    for n in sorted(ns):
        m = (a.numerator * n) // a.denominator
        rho = log_abs_ev_qfactorial(n, m) + n / math.pi * lam
        rows.append({"n": n, "rho": rho, "ratio": abs(rho) / math.log(n)})
    ratios = [r["ratio"] for r in rows]
    worst = max(ratios)
    # no upward divergence: the last ratio may not exceed the earlier ones by more than 10%
    diverging = len(ratios) > 1 and ratios[-1] > 1.1 * max(ratios[:-1])
    return {
        "alpha": float(a),
        "rows": rows,
        "max_ratio": worst,
        "diverging": diverging,
        "pass": worst <= bound and not diverging,
    }
