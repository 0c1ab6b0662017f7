"""The ``qvol`` command line.

Exit status: 0 success, 1 a verification failed, 2 usage or resource error.
Every output starts with a provenance block: comment lines for CSV and text,
a "provenance" object for JSON.
"""

from __future__ import annotations

import argparse
import io
import math
import shlex
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .braid import BraidError, parse_braid
from .closedforms import UnsupportedAngleError, borromean_growth, torus_growth
from .cyclotomic import IntegralityError, cyclotomic_seq
from .evaluation import as_fraction, growth_series
from .lobachevsky import critical_residuals, maximize_f, scan_R_grid, scan_R_growth
from .qpoly import ONE
from .statesum import FROZEN_CONVENTIONS, ResourceError, colored_jones

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# output helpers ------------------------------------------------------------


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def to_json(obj: Any, indent: int = 0) -> str:
    """JSON with stable key order and every float at 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, Fraction):
        return to_json(str(obj))
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f"{pad}{to_json(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(x, (int, float, str)) and not isinstance(x, bool) for x in obj) and len(obj) <= 8:
            return "[" + ", ".join(to_json(x) for x in obj) + "]"
        body = ",\n".join(pad + to_json(v, indent + 1) for v in obj)
        return "[\n" + body + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def provenance(argv: list[str]) -> dict:
    return {
        "command": "qvol " + " ".join(shlex.quote(a) for a in argv),
        "version": __version__,
        "conventions": FROZEN_CONVENTIONS.describe(),
    }


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def emit(payload: dict, fmt: str, argv: list[str], path: str | None, rows: list | None = None,
         header: list[str] | None = None) -> None:
    prov = provenance(argv)
    if fmt == "json":
        text = to_json({"provenance": prov, **payload}) + "\n"
    elif fmt == "csv":
        if rows is None or header is None:
            raise UsageError("this command has no CSV form; use --out json")
        buf = io.StringIO()
        for k, v in prov.items():
            buf.write(f"# {k}: {v}\n")
        buf.write(",".join(header) + "\n")
        for r in rows:
            buf.write(",".join(fmt_float(x) if isinstance(x, float) else str(x) for x in r) + "\n")
        text = buf.getvalue()
    else:
        buf = io.StringIO()
        for k, v in prov.items():
            buf.write(f"# {k}: {v}\n")
        for k, v in payload.items():
            buf.write(f"{k}: {fmt_float(v) if isinstance(v, float) else v}\n")
        text = buf.getvalue()
    _write(text, path)


def _ns(args) -> list[int]:
    lo = getattr(args, "nmin", None) or 1
    if args.nmax < lo:
        raise UsageError("need nmax >= nmin")
    step = getattr(args, "step", 1) or 1
    if step < 1:
        raise UsageError("step must be positive")
    return list(range(lo, args.nmax + 1, step))


def _alpha(text: str) -> Fraction:
    try:
        a = as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad alpha {text!r}") from exc
    return a


# commands -------------------------------------------------------------------


def cmd_jones(args, argv) -> int:
    b = parse_braid(args.braid)
    p = colored_jones(b, args.n, broken_strand=args.broken)
    emit({"braid": str(b), "n": args.n, "J": p.to_json_obj(), "pretty": p.pretty()}, args.out, argv, args.output)
    return EXIT_OK


def cmd_cyclo(args, argv) -> int:
    b = parse_braid(args.braid)
    jones = [ONE] + [colored_jones(b, n) for n in range(1, args.N + 2)]
    try:
        c = cyclotomic_seq(jones, label=args.label or str(b))
    except IntegralityError as exc:
        emit({"knot": args.label or str(b), "integrality": f"violated: {exc}"}, "json", argv, args.output)
        return EXIT_FAIL
    emit(c.to_json_obj(), "json", argv, args.output)
    return EXIT_OK


def cmd_growth(args, argv) -> int:
    b = parse_braid(args.braid)
    alpha = _alpha(args.alpha)
    ns = _ns(args)
    series = growth_series(((n, colored_jones(b, n)) for n in ns), alpha)
    emit(
        {"braid": str(b), "alpha": float(alpha), "series": [[n, v] for n, v in series.entries]},
        args.out, argv, args.output, rows=list(series.entries), header=["n", "value"],
    )
    return EXIT_OK


def cmd_borromean(args, argv) -> int:
    if args.every:
        ns = list(range(max(2, args.nmin or 2), args.nmax + 1))
    else:
        ns = [n for n in (2**j for j in range(1, 40)) if (args.nmin or 2) <= n <= args.nmax]
    if not ns:
        raise UsageError("empty n range")
    rows = borromean_growth(ns)
    emit({"series": [list(r) for r in rows]}, args.out, argv, args.output, rows=rows, header=["n", "value"])
    return EXIT_OK


def cmd_torus(args, argv) -> int:
    alpha = _alpha(args.alpha)
    series = torus_growth(args.a, args.b, alpha, _ns(args))
    emit(
        {"a": args.a, "b": args.b, "alpha": float(alpha), "series": [[n, v] for n, v in series.entries]},
        args.out, argv, args.output, rows=list(series.entries), header=["n", "value"],
    )
    return EXIT_OK


def cmd_lob(args, argv) -> int:
    if args.max:
        p, v = maximize_f()
        emit(
            {"alpha": p.alpha, "beta": p.beta, "kappa": p.kappa, "value": v,
             "residuals": list(critical_residuals(p))},
            "text" if args.out == "csv" else args.out, argv, args.output,
        )
        return EXIT_OK
    if args.scan:
        n = args.scan
        if args.out == "json":
            emit(scan_R_growth(n, args.sign), "json", argv, args.output)
        else:
            emit({}, "csv", argv, args.output, rows=list(scan_R_grid(n, args.sign)), header=["a", "b", "k", "log_growth"])
        return EXIT_OK
    raise UsageError("lob needs --max or --scan N")


def cmd_verify(args, argv) -> int:
    from .checks import run_suite

    report = run_suite(args.suite, args.nmax)
    ok = all(c["pass"] for c in report)
    emit({"suite": args.suite, "nmax": args.nmax, "pass": ok, "checks": report}, "json", argv, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qvol", description="Colored Jones polynomials and their growth.")
    p.add_argument("--version", action="version", version=f"qvol {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "csv", "text"), default="json"):
        sp.add_argument("--out", choices=formats, default=default, help="output format")
        sp.add_argument("-o", "--output", help="output file (default stdout)")

    s = sub.add_parser("jones", help="colored Jones polynomial J(n) of a braid closure")
    s.add_argument("--braid", required=True, help='braid word, e.g. "3: 1 -2 1 -2"')
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--broken", type=int, default=1, help="strand cut open (1-based)")
    common(s, ("json", "text"))
    s.set_defaults(func=cmd_jones)

    s = sub.add_parser("cyclo", help="cyclotomic coefficients C_K(0..N), integrality certified")
    s.add_argument("--braid", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--label")
    common(s, ("json",))
    s.set_defaults(func=cmd_cyclo)

    s = sub.add_parser("growth", help="log|ev_{alpha,n} J(n)|/n from the state sum")
    s.add_argument("--braid", required=True)
    s.add_argument("--alpha", default="1")
    s.add_argument("--nmin", type=int, default=1)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--step", type=int, default=1)
    common(s, ("csv", "json"), "csv")
    s.set_defaults(func=cmd_growth)

    s = sub.add_parser("borromean", help="(2 pi/n) log ev_n J_B(n) for the Borromean rings")
    s.add_argument("--nmin", type=int, default=2)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--every", action="store_true", help="every n instead of powers of two")
    common(s, ("csv", "json"), "csv")
    s.set_defaults(func=cmd_borromean)

    s = sub.add_parser("torus", help="growth series of a torus knot at a non-integer angle")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--nmin", type=int, default=1)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--step", type=int, default=1)
    common(s, ("csv", "json"), "csv")
    s.set_defaults(func=cmd_torus)

    s = sub.add_parser("lob", help="octahedral maximum and R-matrix growth scans")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--max", action="store_true")
    g.add_argument("--scan", type=int, metavar="N")
    s.add_argument("--sign", type=int, choices=(1, -1), default=1)
    common(s, ("text", "json", "csv"), "text")
    s.set_defaults(func=cmd_lob)

    s = sub.add_parser("verify", help="run a batch of bound and identity checks")
    s.add_argument("--suite", default="all")
    s.add_argument("--nmax", type=int, default=10)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except (UsageError, BraidError, ResourceError, UnsupportedAngleError, ValueError, KeyError) as exc:
        print(f"qvol: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
