"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors
(including violated preconditions such as an invalid discriminant).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction

from . import arith
from .classgroup import class_number_negative, class_structure, theta
from .congruence import (
    check_class_term_congruence,
    check_inverse_pairing,
    check_mod16_4p,
    check_mod16_16p,
    check_unit_structure,
    kmz_cases,
    prime_pairs,
    verify_kmz,
)
from .dedekind import dedekind_sum
from .quadratic import QuadraticIrrational, cf_expand, fundamental_unit, hirzebruch_sum, make_discriminant, omega
from .records import SCAN_COLUMNS, TABLE_COLUMNS, RecordCache, cached_scan, record_to_dict, table_rows

DEFAULT_MAX_BOUND = 10**6
MODES = ("thm13", "thm14", "thm11", "thm12", "kmz", "lemmas", "all")


class UsageError(Exception):
    pass


def max_bound() -> int:
    raw = os.environ.get("QUADCONG_MAX_BOUND")
    if not raw:
        return DEFAULT_MAX_BOUND
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QUADCONG_MAX_BOUND must be an integer, got {raw!r}") from None


def _json_value(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(str(x) for x in v) + "]"
    return str(v)


def emit(rows: list[dict], fmt: str, columns: list[str] | None = None, out=None) -> None:
    """Write rows of flat key/value data in the chosen format."""
    out = out or sys.stdout
    if not rows and fmt != "csv":
        if fmt == "json":
            out.write("[]\n")
        return
    columns = columns or list(rows[0])
    if fmt == "json":
        json.dump([{k: _json_value(r[k]) for k in columns} for r in rows], out, indent=None)
        out.write("\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_text_value(r[k]) for k in columns])
        out.write(buf.getvalue())
    else:
        for r in rows:
            out.write(" ".join(f"{k}={_text_value(r[k])}" for k in columns) + "\n")


def _f_set(value: str) -> tuple[int, ...]:
    return {"1": (1,), "2": (2,), "both": (1, 2)}[value]


def _check_bound(bound: int, scale: int) -> None:
    cap = max_bound()
    if bound * scale > cap:
        raise UsageError(f"bound {bound} gives discriminants up to {bound * scale} > cap {cap} "
                         "(set QUADCONG_MAX_BOUND to raise it)")


def cmd_cf(args) -> int:
    disc = make_discriminant(args.delta)
    if disc.delta < 0:
        raise UsageError("continued fractions need a positive discriminant")
    if (args.a is None) != (args.b is None):
        raise UsageError("give both a and b, or neither")
    xi = omega(disc) if args.a is None else QuadraticIrrational(args.a, args.b, disc)
    cf = cf_expand(xi)
    row = {
        "delta": disc.delta, "a": xi.a, "b": xi.b,
        "preperiod": list(cf.preperiod), "period": list(cf.period),
        "k": cf.k, "l": cf.l, "psi": hirzebruch_sum(cf),
    }
    emit([row], args.format)
    return 0


def cmd_dedekind(args) -> int:
    s = dedekind_sum(args.h, args.k)
    emit([{"h": args.h, "k": args.k, "s": s, "six_k_s": 6 * args.k * s}], args.format)
    return 0


def cmd_unit(args) -> int:
    disc = make_discriminant(args.delta)
    if disc.delta < 0:
        raise UsageError("fundamental units are computed for positive discriminants")
    u = fundamental_unit(disc)
    norm = "+1" if u.norm == 1 else "-1"
    emit([{"delta": disc.delta, "t": u.t, "u": u.u, "norm": norm, "q": u.q, "r": u.r}], args.format)
    return 0


def cmd_classnum(args) -> int:
    disc = make_discriminant(args.delta)
    if disc.delta < 0:
        row = {"delta": disc.delta, "h": class_number_negative(disc.delta)}
    else:
        cs = class_structure(disc)
        row = {"delta": disc.delta, "h": cs.h, "h_plus": cs.h_plus}
    emit([row], args.format)
    return 0


def cmd_theta(args) -> int:
    emit([{"d1": args.d1, "d2": args.d2, "f": args.f, "theta": theta(args.d1, args.d2, args.f)}], args.format)
    return 0


def _kmz_row(rep) -> dict:
    return {
        "d1": rep.d1, "d2": rep.d2, "f": rep.f, "delta": rep.delta, "lhs": rep.lhs,
        "rhs_reduced": rep.rhs_reduced, "rhs_classes": rep.rhs_classes,
        "unit_norm": rep.unit_norm, "equal": rep.equal,
    }


def cmd_kmz(args) -> int:
    rep = verify_kmz(args.d1, args.d2, args.f)
    emit([_kmz_row(rep)], args.format)
    return 0 if rep.equal and rep.unit_norm == 1 else 1


def _open_cache(args) -> RecordCache | None:
    return RecordCache(args.cache) if args.cache else None


def cmd_scan(args) -> int:
    fs = _f_set(args.f)
    _check_bound(args.bound, 4 if 2 in fs else 1)
    recs = cached_scan(args.bound, fs, args.jobs, _open_cache(args))
    emit([record_to_dict(r) for r in recs], args.format, SCAN_COLUMNS)
    return 0


def cmd_table(args) -> int:
    rows = table_rows(args.which)
    if args.format == "text":
        for r in rows:
            print(r.text())
    else:
        emit([r.as_dict() for r in rows], args.format, TABLE_COLUMNS)
    return 0


def _run_mode(mode: str, args, fs, cache) -> tuple[str, int, list]:
    """Returns (unit word, number checked, failing items)."""
    bound = args.bound
    if mode in ("thm13", "thm14"):
        f = 1 if mode == "thm13" else 2
        try:
            recs = cached_scan(bound, (f,), args.jobs, cache)
        except ArithmeticError as exc:
            return "pairs", 0, [str(exc)]
        bad = [record_to_dict(r) for r in recs if not r.holds_mod8 or r.psi_omega % r.n]
        return "pairs", len(recs), bad
    if mode in ("thm11", "thm12"):
        if mode == "thm11":
            primes = [p for p in range(7, bound + 1, 4) if arith.is_prime(p)]
            check = check_mod16_4p
        else:
            primes = [p for p in range(5, bound + 1, 4) if arith.is_prime(p)]
            check = check_mod16_16p
        return "primes", len(primes), [{"p": p} for p in primes if not check(p)]
    if mode == "kmz":
        cases = kmz_cases(bound)
        bad = []
        for c in cases:
            rep = verify_kmz(*c)
            if not (rep.equal and rep.unit_norm == 1):
                bad.append(_kmz_row(rep))
        return "cases", len(cases), bad
    if mode == "lemmas":
        pairs = prime_pairs(bound)
        bad = []
        for p1, p2 in pairs:
            rep = check_unit_structure(p1, p2)
            for name, _, detail in rep.failures:
                bad.append({"p1": p1, "p2": p2, "clause": name, "detail": detail})
            for f in fs:
                if not check_class_term_congruence(p1, p2, f):
                    bad.append({"p1": p1, "p2": p2, "f": f, "clause": "class_term_congruence"})
                if not check_inverse_pairing(p1, p2, f):
                    bad.append({"p1": p1, "p2": p2, "f": f, "clause": "inverse_pairing"})
        return "pairs", len(pairs), bad
    raise UsageError(f"unknown mode {mode}")


def cmd_verify(args) -> int:
    fs = _f_set(args.f)
    modes = [args.mode] if args.mode != "all" else ["thm13", "thm14", "thm11", "thm12", "kmz", "lemmas"]
    if args.mode == "all":
        modes = [m for m in modes if not (m == "thm13" and 1 not in fs) and not (m == "thm14" and 2 not in fs)]
    scale = {"thm13": 1, "thm14": 4, "thm11": 4, "thm12": 16, "kmz": 1, "lemmas": 4 if 2 in fs else 1}
    for m in modes:
        _check_bound(args.bound, scale[m])
    cache = _open_cache(args)
    summary = []
    failed = False
    for m in modes:
        word, count, bad = _run_mode(m, args, fs, cache)
        summary.append({"mode": m, "checked": count, "unit": word, "failures": len(bad)})
        if bad:
            failed = True
            for item in bad:
                print(f"FAIL {m}: " + " ".join(f"{k}={_text_value(v)}" for k, v in item.items()), file=sys.stderr)
    if args.format == "text":
        for s in summary:
            print(f"{s['mode']}: {s['checked']} {s['unit']}, {s['failures']} failures")
    else:
        emit(summary, args.format, ["mode", "checked", "unit", "failures"])
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")

    scanning = argparse.ArgumentParser(add_help=False)
    scanning.add_argument("--bound", type=int, required=True)
    scanning.add_argument("--f", choices=("1", "2", "both"), default="both")
    scanning.add_argument("--cache", metavar="FILE")
    scanning.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="quadcong", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", parents=[common], help="continued fraction and Hirzebruch sum")
    p.add_argument("delta", type=int)
    p.add_argument("a", type=int, nargs="?")
    p.add_argument("b", type=int, nargs="?")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("dedekind", parents=[common], help="Dedekind sum s(h, k)")
    p.add_argument("h", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_dedekind)

    p = sub.add_parser("unit", parents=[common], help="fundamental unit of a real quadratic order")
    p.add_argument("delta", type=int)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("classnum", parents=[common], help="class number of a quadratic order")
    p.add_argument("delta", type=int)
    p.set_defaults(func=cmd_classnum)

    p = sub.add_parser("theta", parents=[common], help="conductor Euler factor theta(d1, d2, f)")
    for name in ("d1", "d2", "f"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("kmz", parents=[common], help="check the class number formula for d1 d2 f^2")
    for name in ("d1", "d2", "f"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_kmz)

    p = sub.add_parser("verify", parents=[common, scanning], help="verify congruences over a range")
    p.add_argument("--mode", choices=MODES, default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common, scanning], help="congruence records for all pairs")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("table", parents=[common], help="print a reference table of H factorizations")
    p.add_argument("which", choices=("a1", "a2", "a3"))
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
