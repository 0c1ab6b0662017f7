"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The lines are also collected into an "acceptance criteria" section of the
pytest terminal summary.
"""

from __future__ import annotations

from qvol import checks


def report(log: list[str], number: int, result: dict, limit: float | None = None) -> None:
    ok = result["pass"] and (limit is None or result["seconds"] < limit)
    extra = {k: v for k, v in result.items() if k not in ("name", "pass", "seconds", "rows", "synthetic", "cyclotomic")}
    timing = f"{result['seconds']:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'} {result['name']} {timing} {extra}"
    log.append(line)
    print("\n" + line)
    assert result["pass"], result
    if limit is not None:
        assert result["seconds"] < limit


def test_criterion_01_calibration(acceptance_log):
    report(acceptance_log, 1, checks.check_calibration(unknot_nmax=50, morton_nmax=12), limit=30)


def test_criterion_02_integrality(acceptance_log):
    report(acceptance_log, 2, checks.check_integrality(n_max=10, figure8_kmax=8))


def test_criterion_03_round_trip(acceptance_log):
    report(acceptance_log, 3, checks.check_round_trip(n_max=8, samples=100))


def test_criterion_04_l1_bound_and_growth(acceptance_log):
    report(acceptance_log, 4, checks.check_l1_bound(n_max=12))


def test_criterion_05_cyclotomic_l1(acceptance_log):
    report(acceptance_log, 5, checks.check_cyclotomic_l1(n_max=10))


def test_criterion_06_kernel_bound(acceptance_log):
    report(acceptance_log, 6, checks.check_kernel_bound(n_max=500))


def test_criterion_07_qfactorial_asymptotics(acceptance_log):
    report(acceptance_log, 7, checks.check_qfactorial(), limit=20)


def test_criterion_08_octahedral_maximum(acceptance_log):
    report(acceptance_log, 8, checks.check_octahedral(scan_n=500), limit=60)


def test_criterion_09_borromean(acceptance_log):
    report(acceptance_log, 9, checks.check_borromean(), limit=10)


def test_criterion_10_small_angle(acceptance_log):
    report(acceptance_log, 10, checks.check_small_angle(), limit=30)


def test_criterion_11_torus(acceptance_log):
    report(acceptance_log, 11, checks.check_torus())


def test_criterion_12_mahler_boyd(acceptance_log):
    report(acceptance_log, 12, checks.check_mahler_boyd(samples=200, boyd_samples=50))


def test_criterion_13_holonomic(acceptance_log):
    report(acceptance_log, 13, checks.check_holonomic(n_max=60))
