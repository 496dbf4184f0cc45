"""Command-line interface: ``iwasawa <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 precision or search exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import artin, cubicfield, invariants, lambda_algebra, quadfield, survey
from .errors import PrecisionExhausted, SearchExhausted

EXIT_OK, EXIT_INPUT, EXIT_EXHAUSTED = 0, 2, 3


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1, default=str))


def cmd_classgroup(a):
    D = a.disc
    h = quadfield.class_number(D)
    forms = quadfield.reduced_forms(D)
    quadfield.CLASS_NUMBERS.save()
    _emit({"D": D, "h": h, "w": quadfield.unit_count(D), "forms": [[f.a, f.b, f.c] for f in forms]})


def cmd_gold(a):
    g = invariants.gold_test(a.disc, a.p)
    _emit({"D": a.disc, "p": a.p, "r": g.r, "alpha": str(g.alpha), "trace_power_mod_p2": g.value, "outcome": g.outcome.value})


def cmd_lambda_scan(a):
    rep = survey.scan_lambda(a.disc, a.pmax, workers=a.workers)
    quadfield.CLASS_NUMBERS.save()
    _write(rep, a.out, a.format)


def _write(rep: survey.SurveyReport, out, fmt):
    text = rep.to_csv() if fmt == "csv" else rep.to_json() + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_prational(a):
    kind, _, arg = a.field.partition(":")
    if kind == "quad":
        v = cubicfield.p_rational_imquad(int(arg), a.p)
    elif kind == "cubic":
        v = cubicfield.p_rational_cubic(cubicfield.CubicField(arg), a.p)
    else:
        raise ValueError("field must be quad:D or cubic:POLY")
    _emit({"field": a.field, "p": a.p, "p_rational": v.value})


def cmd_artin_scan(a):
    rep = survey.scan_T(a.cubic, a.pmax, assume_h=a.assume_h, workers=a.workers)
    _write(rep, a.out, a.format)


def cmd_icosahedral(a):
    group = artin.build_icosahedral_group()
    report = artin.icosahedral_checklist(a.p, group)
    report["traces"] = {f"{t:.12g}": n for t, n in artin.trace_multiset(group).items()}
    _emit(report)


def cmd_heuristics(a):
    hv = survey.heuristic_values(a.p, a.r, a.k, a.n, a.tmax, a.x)
    _emit(
        {
            "p": hv.p,
            "r": hv.r,
            "ejv": hv.ejv,
            "ejv_truncation_error": hv.ejv_error,
            "cohen_lenstra": hv.cl,
            "rank_failure": str(hv.rank_failure),
            "rank_failure_float": float(hv.rank_failure),
            "split_sum": hv.split_sum,
        }
    )


def cmd_charseries(a):
    f = lambda_algebra.CharSeries.from_json(Path(a.file).read_text())
    mu, g, u = lambda_algebra.weierstrass_prepare(f)
    chi = lambda_algebra.euler_characteristic(f)
    _emit(
        {
            "p": f.p,
            "mu": mu,
            "lambda": len(g) - 1,
            "distinguished": g,
            "known_mod_p_power": u.ring.N,
            "euler_characteristic": None if chi is lambda_algebra.Undefined else chi,
        }
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iwasawa", description="Iwasawa invariants and Artin-representation prime scans.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classgroup", help="class number and reduced forms")
    s.add_argument("--disc", type=int, required=True)
    s.set_defaults(func=cmd_classgroup)

    s = sub.add_parser("gold", help="Gold's congruence at a split prime")
    s.add_argument("--disc", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_gold)

    for name, func in (("lambda-scan", cmd_lambda_scan), ("artin-scan", cmd_artin_scan)):
        s = sub.add_parser(name)
        if name == "lambda-scan":
            s.add_argument("--disc", type=int, required=True)
        else:
            s.add_argument("--cubic", required=True)
            s.add_argument("--assume-h", action="store_true")
        s.add_argument("--pmax", type=int, required=True)
        s.add_argument("--out")
        s.add_argument("--format", choices=("csv", "json"), default="csv")
        s.add_argument("--workers", type=int, default=1)
        s.set_defaults(func=func)

    s = sub.add_parser("prational", help="p-rationality of quad:D or cubic:POLY")
    s.add_argument("--field", required=True)
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_prational)

    s = sub.add_parser("icosahedral-check")
    s.add_argument("--p", type=int, default=7)
    s.set_defaults(func=cmd_icosahedral)

    s = sub.add_parser("heuristics")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--r", type=int, default=0)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--tmax", type=int, default=60)
    s.add_argument("--x", type=int, default=1000, help="range for the split-prime partial sum")
    s.set_defaults(func=cmd_heuristics)

    s = sub.add_parser("charseries", help="Weierstrass and Euler data of a JSON series")
    s.add_argument("--file", required=True)
    s.set_defaults(func=cmd_charseries)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        a.func(a)
    except (PrecisionExhausted, SearchExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
