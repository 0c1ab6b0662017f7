"""Falsifiable checks of bounds and identities, shared by ``qvol verify`` and the tests.

Every check returns a plain dict with at least ``name``, ``pass`` and
``seconds``; the remaining keys are details worth putting in a report.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from typing import Callable

import numpy as np

from .braid import parse_braid
from .closedforms import borromean_ev, borromean_ev_direct, morton_ev, morton_torus_jones, torus_growth
from .corpus import CORPUS, UNKNOTS
from .cyclotomic import (
    boyd_bound,
    cyclotomic_seq,
    ev_from_cyclotomic,
    inverse_transform_at,
    kernel_ev_bound_check,
    normalizer,
    reconstruct_jones,
    transform_at,
)
from .evaluation import EvalPoint, log_abs_ev, mahler_measure
from .lobachevsky import V8, lobachevsky, maximize_f, qfactorial_asymptotic_check, scan_R_growth
from .qholonomic import (
    Recurrence,
    degree_bound_report,
    l1_growth_certificate,
    random_integral_recurrence,
    solve_forward,
    verify_recurrence,
)
from .qpoly import ONE, LaurentPoly
from .statesum import colored_jones

Check = Callable[..., dict]


def _timed(name: str, fn: Callable[[], dict]) -> dict:
    t0 = time.perf_counter()
    out = fn()
    return {"name": name, "pass": bool(out.pop("pass")), "seconds": time.perf_counter() - t0, **out}


def _jones_list(braid: str, n_max: int) -> list[LaurentPoly]:
    b = parse_braid(braid)
    return [ONE] + [colored_jones(b, n) for n in range(1, n_max + 1)]


def _increasing(xs) -> bool:
    return all(b > a for a, b in zip(xs, xs[1:]))


def _decreasing(xs) -> bool:
    return all(b < a for a, b in zip(xs, xs[1:]))


# exact checks on the state sum ---------------------------------------------


def check_calibration(unknot_nmax: int = 50, morton_nmax: int = 12, unknot_strands: int = 2) -> dict:
    """Unknot presentations give 1, every corpus knot has J(1) = 1, trefoil matches Morton."""

    def run():
        bad_unknot = [
            (u, n)
            for u in UNKNOTS
            if parse_braid(u).strands <= unknot_strands
            for n in range(1, unknot_nmax + 1)
            if colored_jones(u, n) != ONE
        ]
        bad_j1 = [k for k, w in CORPUS.items() if colored_jones(w, 1) != ONE]
        bad_morton = [n for n in range(1, morton_nmax + 1) if colored_jones(CORPUS["3_1"], n) != morton_torus_jones(2, 3, n)]
        return {
            "unknot_failures": [f"{u} n={n}" for u, n in bad_unknot],
            "j1_failures": bad_j1,
            "morton_failures": bad_morton,
            "pass": not (bad_unknot or bad_j1 or bad_morton),
        }

    return _timed("calibration", run)


def check_integrality(n_max: int = 10, figure8_kmax: int = 8) -> dict:
    """C_K(0..n_max) are Laurent polynomials for each corpus knot; figure-8 has C_K = 1."""

    def run():
        from .cyclotomic import IntegralityError

        failures = []
        fig8_ok = True
        for name, w in CORPUS.items():
            try:
                cs = cyclotomic_seq(_jones_list(w, n_max + 1), label=name)
            except IntegralityError as exc:
                failures.append(f"{name}: {exc}")
                continue
            if name == "4_1":
                fig8_ok = all(cs[k] == ONE for k in range(min(figure8_kmax, n_max) + 1))
        return {"failures": failures, "figure8_constant": fig8_ok, "pass": not failures and fig8_ok}

    return _timed("integrality", run)


def check_round_trip(n_max: int = 8, samples: int = 100, x: Fraction = Fraction(3, 2), length: int = 8,
                     seed: int = 2024) -> dict:
    """Forward and inverse cyclotomic transforms undo each other."""

    def run():
        knot_failures = []
        for name, w in CORPUS.items():
            js = _jones_list(w, n_max + 1)
            cs = cyclotomic_seq(js)
            knot_failures += [f"{name} n={n}" for n in range(1, n_max + 1) if reconstruct_jones(cs, n) != js[n]]
        rng = random.Random(seed)
        random_failures = 0
        for _ in range(samples):
            c = [Fraction(1)] + [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(length - 1)]
            j = transform_at(c, x, length)
            back = inverse_transform_at([None] + j, x, length - 1)
            jj = [Fraction(1)] + [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(length - 1)]
            cc = inverse_transform_at([None] + jj, x, length - 1)
            if back != c or transform_at(cc, x, length) != jj:
                random_failures += 1
        return {
            "knot_failures": knot_failures,
            "random_failures": random_failures,
            "samples": samples,
            "pass": not knot_failures and not random_failures,
        }

    return _timed("round_trip", run)


def check_l1_bound(n_max: int = 12, alphas=("0.3", "0.7", "1"), growth_nmin: int = 4) -> dict:
    """||J(n)||_1 <= n^c 4^(cn), and log|ev J(n)|/n <= c log 4 + 0.1."""

    def run():
        failures = []
        worst_gap = -math.inf
        for name, w in CORPUS.items():
            b = parse_braid(w)
            c = b.c
            for n in range(2, n_max + 1):
                f = colored_jones(b, n)
                if f.l1() > n**c * 4 ** (c * n):
                    failures.append(f"{name} l1 n={n}")
                if n < growth_nmin:
                    continue
                for a in alphas:
                    g = log_abs_ev(f, EvalPoint(a, n)) / n
                    worst_gap = max(worst_gap, g - c * math.log(4))
                    if g > c * math.log(4) + 0.1:
                        failures.append(f"{name} growth n={n} alpha={a}")
        return {"failures": failures, "max_growth_minus_c_log4": worst_gap, "pass": not failures}

    return _timed("l1_bound", run)


def check_cyclotomic_l1(n_max: int = 10) -> dict:
    """||D(n) C_K(n)||_1 <= n^c 4^((c+1)n) for 1 <= n <= n_max."""

    def run():
        failures = []
        for name, w in CORPUS.items():
            c = parse_braid(w).c
            cs = cyclotomic_seq(_jones_list(w, n_max + 1))
            for n in range(1, n_max + 1):
                if (normalizer(n) * cs[n]).l1() > n**c * 4 ** ((c + 1) * n):
                    failures.append(f"{name} n={n}")
        return {"failures": failures, "pass": not failures}

    return _timed("cyclotomic_l1", run)


# floating checks -------------------------------------------------------------


def check_kernel_bound(n_max: int = 500, alphas=(0.02, 0.05, 0.10, 0.15)) -> dict:
    """|ev C(n,k)| <= |3 sin(pi alpha)|^(2k) for 0 <= k < n <= n_max."""

    def run():
        worst = 0.0
        failures = []
        for a in alphas:
            for n in range(1, n_max + 1):
                r = kernel_ev_bound_check(a, n)
                worst = max(worst, r["max_ratio"])
                if not r["pass"]:
                    failures.append(f"alpha={a} n={n} k={r['argmax_k']}")
        return {"max_ratio": worst, "failures": failures[:20], "pass": not failures}

    return _timed("kernel_bound", run)


def check_qfactorial(alphas=("0.25", "0.5", "0.75"), ns=(10**2, 10**3, 10**4, 10**5), bound: float = 5.0) -> dict:
    """|log|ev_n {floor(alpha n)}!| + (n/pi) Lambda(pi alpha)| / log n stays below a constant."""

    def run():
        rows = [qfactorial_asymptotic_check(a, ns, bound) for a in alphas]
        return {
            "max_ratio": max(r["max_ratio"] for r in rows),
            "diverging": [r["alpha"] for r in rows if r["diverging"]],
            "pass": all(r["pass"] for r in rows),
        }

    return _timed("qfactorial_asymptotics", run)


def check_octahedral(scan_n: int = 500) -> dict:
    """The interior maximum of f and the discrete R-matrix scan."""

    def run():
        p, v = maximize_f()
        target = 4 * lobachevsky(math.pi / 4)
        point_err = max(abs(x - y) for x, y in zip(p.as_tuple(), (0.75, 0.25, 0.5)))
        scans = [scan_R_growth(scan_n, s) for s in (1, -1)]
        dist = []
        for s in scans:
            a, b = (s["a"], s["b"]) if s["sign"] > 0 else (s["b"], s["a"])
            dist.append(max(abs(a - 3 * scan_n / 4), abs(b - scan_n / 4), abs(s["k"] - scan_n / 2)))
        ratio = scans[0]["max_over_n"]
        ok = (
            point_err <= 1e-6
            and abs(v - target) <= 1e-9
            and all(d <= 2 for d in dist)
            and all(0.55 <= s["max_over_n"] <= 0.5832 for s in scans)
        )
        return {
            "argmax": list(p.as_tuple()),
            "value": v,
            "target": target,
            "scan_argmax": [scans[0]["a"], scans[0]["b"], scans[0]["k"]],
            "scan_distance": max(dist),
            "scan_max_over_n": ratio,
            "pass": ok,
        }

    return _timed("octahedral_maximum", run)


def check_borromean(ns=tuple(2**j for j in range(6, 13)), cross_nmax: int = 512, rel: float = 0.05) -> dict:
    """g(n) = (2 pi/n) log ev_n J_B(n): monotone trend, closeness to 2 v8, direct sum cross-check."""

    def run():
        g = [2 * math.pi * borromean_ev(n) / n for n in ns]
        target = 2 * V8
        err = abs(g[-1] - target) / target
        cross = [n for n in range(2, cross_nmax + 1)]
        worst = max(abs(math.expm1(borromean_ev(n) - borromean_ev_direct(n))) for n in cross)
        increasing = _increasing(g)
        return {
            "ns": list(ns),
            "g": g,
            "target": target,
            "relative_error": err,
            "increasing": increasing,
            "cross_check_max_rel": worst,
            "pass": increasing and err <= rel and worst <= 1e-8,
        }

    return _timed("borromean_growth", run)


def check_small_angle(alpha: str = "0.05", ns=(500, 1000, 2000, 4000), tol: float = 1e-3) -> dict:
    """|log|ev J(n)||/n decays at a small angle: figure-8 from C_K = 1, trefoil from the closed form."""

    def run():
        fig8 = [abs(math.log(abs(ev_from_cyclotomic(np.ones(n), alpha, n)))) / n for n in ns]
        tref = [abs(math.log(abs(morton_ev(2, 3, n, alpha)))) / n for n in ns]
        ok = all(s[-1] <= tol and _decreasing(s) for s in (fig8, tref))
        return {"ns": list(ns), "figure8": fig8, "trefoil": tref, "pass": ok}

    return _timed("small_angle_decay", run)


def check_torus(knots=((2, 3), (3, 5)), alphas=("0.37", "0.5"), ns=(250, 500, 1000, 1500, 2000), tol: float = 0.01) -> dict:
    """Torus knot growth at non-integer angles tends to 0 from a decreasing tail."""

    def run():
        rows = []
        for a, b in knots:
            for al in alphas:
                vals = [abs(v) for v in torus_growth(a, b, al, ns).values]
                rows.append({"knot": f"T({a},{b})", "alpha": al, "values": vals,
                             "pass": vals[-1] < tol and _decreasing(vals)})
        return {"rows": rows, "pass": all(r["pass"] for r in rows)}

    return _timed("torus_decay", run)


def _random_poly(rng: random.Random, deg: int, coeff: int = 5) -> LaurentPoly:
    lo = rng.randint(-3, 3)
    terms = {4 * (lo + i): rng.randint(-coeff, coeff) for i in range(deg + 1)}
    terms[4 * lo] = terms[4 * lo] or 1
    return LaurentPoly(terms)


def check_mahler_boyd(samples: int = 200, boyd_samples: int = 50, seed: int = 11, tol: float = 1e-6) -> dict:
    """M(f) <= ||f||_2 <= ||f||_1 and the partition bound for ||f||_1."""

    def run():
        rng = random.Random(seed)
        chain_fail = 0
        for _ in range(samples):
            f = _random_poly(rng, rng.randint(1, 12))
            m = mahler_measure(f, tol=tol * 1e-2)
            l2 = math.sqrt(sum(c * c for _, c in f.items()))
            if not (m <= l2 * (1 + tol) and l2 <= f.l1()):
                chain_fail += 1
        boyd_fail = 0
        for _ in range(boyd_samples):
            f = _random_poly(rng, rng.randint(0, 10))
            f = f.shift(-f.mindeg)
            span = f.maxdeg // 4
            g = f
            for k in range(1, span + 1):
                g = g * LaurentPoly({0: 1, 4 * k: -1})
            if f.l1() > boyd_bound(g.l1(), span):
                boyd_fail += 1
        return {"chain_failures": chain_fail, "boyd_failures": boyd_fail, "pass": not chain_fail and not boyd_fail}

    return _timed("mahler_boyd", run)


def synthetic_recurrences(count: int = 10, seed: int = 7, max_order: int = 3, max_deg: int = 4) -> list[Recurrence]:
    rng = random.Random(seed)
    return [random_integral_recurrence(rng, rng.randint(1, max_order), rng.randint(1, max_deg)) for _ in range(count)]


def check_holonomic(n_max: int = 60, cyclo_nmax: int = 10) -> dict:
    """Exact l1 certificates and quadratic degree growth for integral recurrences."""

    def run():
        rows = []
        for i, rec in enumerate(synthetic_recurrences()):
            seq = solve_forward(rec, [ONE] * rec.d, n_max)
            cert = l1_growth_certificate(rec, seq)
            deg = degree_bound_report(seq)
            rows.append({"rec": i, "d": rec.d, "C": str(cert["C"]), "certificate": cert["ok"],
                         "quadratic_constant": deg["quadratic_constant"], "degree": deg["pass"]})
        cyclo = []
        for name, w in CORPUS.items():
            cs = cyclotomic_seq(_jones_list(w, cyclo_nmax + 1))
            rep = degree_bound_report(list(cs.coeffs))
            cyclo.append({"knot": name, "quadratic_constant": rep["quadratic_constant"], "degree": rep["pass"]})
        ok = all(r["certificate"] and r["degree"] for r in rows) and all(r["degree"] for r in cyclo)
        return {"synthetic": rows, "cyclotomic": cyclo, "pass": ok}

    return _timed("holonomic", run)


def check_product_recurrence(n_max: int = 30) -> dict:
    """f(n) = prod_{k<=n} (1 - q^k) satisfies f(n+1) = (1 - q u) f(n) and ||f(n)||_1 <= 2^n."""

    def run():
        rec = Recurrence([{(0, 0): -1, (1, 1): 1}, {(0, 0): 1}])
        seq = [ONE]
        for k in range(1, n_max + 1):
            seq.append(seq[-1] * LaurentPoly({0: 1, 4 * k: -1}))
        v = verify_recurrence(rec, seq)
        cert = l1_growth_certificate(rec, seq)
        return {"C": str(cert["C"]), "pass": v["ok"] and cert["ok"] and cert["C"] == 2}

    return _timed("product_recurrence", run)


def suite(nmax: int = 10) -> dict[str, Callable[[], dict]]:
    """The named checks run by ``qvol verify``; ``nmax`` caps the state-sum colors."""
    return {
        "calibration": lambda: check_calibration(unknot_nmax=nmax, morton_nmax=nmax),
        "integrality": lambda: check_integrality(n_max=nmax - 1, figure8_kmax=nmax - 1),
        "round_trip": lambda: check_round_trip(n_max=min(nmax, 8), samples=20),
        "l1_bound": lambda: check_l1_bound(n_max=nmax),
        "cyclotomic_l1": lambda: check_cyclotomic_l1(n_max=nmax - 1),
        "kernel_bound": lambda: check_kernel_bound(n_max=50 * nmax),
        "qfactorial_asymptotics": check_qfactorial,
        "octahedral_maximum": check_octahedral,
        "borromean_growth": check_borromean,
        "small_angle_decay": check_small_angle,
        "torus_decay": check_torus,
        "mahler_boyd": check_mahler_boyd,
        "holonomic": lambda: check_holonomic(cyclo_nmax=nmax - 1),
        "product_recurrence": check_product_recurrence,
    }


def run_suite(names: str = "all", nmax: int = 10) -> list[dict]:
    """Run checks by comma-separated name, or every check for "all"; "" runs nothing."""
    if nmax < 2:
        raise ValueError("nmax must be at least 2")
    table = suite(nmax)
    if names == "all":
        chosen = list(table)
    else:
        chosen = [s.strip() for s in names.split(",") if s.strip()]
        unknown = [s for s in chosen if s not in table]
        if unknown:
            raise KeyError(f"unknown check(s) {unknown}; available: {', '.join(table)}")
    return [table[s]() for s in chosen]
