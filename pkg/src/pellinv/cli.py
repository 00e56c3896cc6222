"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain error (square input,
infeasible key, ...).  JSON output is canonical (sorted keys, compact
separators); arbitrary-size integers are emitted as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import cf_engine, inverse, least_type, pell, survey
from .errors import PellError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 2, 3
SURVEY_COLUMNS = ["category", "count", "total", "ratio", "decimal"]
KV_COLUMNS = ["field", "value"]


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _flatten(obj: Any, prefix: str = "") -> list[dict[str, str]]:
    if isinstance(obj, dict):
        rows = []
        for k in sorted(obj):
            rows += _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return rows
    if isinstance(obj, list):
        rows = []
        for i, v in enumerate(obj):
            rows += _flatten(v, f"{prefix}[{i}]")
        return rows
    if obj is None:
        value = ""
    elif isinstance(obj, bool):
        value = "true" if obj else "false"
    else:
        value = str(obj)
    return [{"field": prefix, "value": value}]


def _csv(rows: list[dict[str, str]], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _ring_name(d: int, ring: int) -> str:
    return f"sqrt({d})" if ring == 0 else f"omega({d})"


# -- commands: each returns (payload, text, csv_rows or None) ---------------


def cmd_expand(args):
    exp = cf_engine.expand_omega(args.d, args.ring)
    payload = {"d": exp.d, "ring": exp.ring, "a0": exp.a0, "period": list(exp.period),
               "length": exp.length}
    return payload, str(exp), None


def cmd_unit(args):
    fu = pell.fundamental_unit(args.d, args.ring)
    log = str(fu.unit.log(digits=12))
    payload = {"d": args.d, "ring": args.ring, "unit": {"a": str(fu.unit.a), "b": str(fu.unit.b)},
               "norm": fu.norm, "period": fu.period, "log_unit": log}
    text = f"eps = {fu.unit}, norm {fu.norm:+d}, period {fu.period}, log(eps) = {log}"
    return payload, text, None


def cmd_pell(args):
    sols = pell.pell4_solutions(args.d, args.ring, args.count)
    payload = {"d": args.d, "ring": args.ring, "D": sols[0].D,
               "solutions": [{"X": str(s.X), "Y": str(s.Y)} for s in sols]}
    lines = [f"X^2 - {sols[0].D}*Y^2 = 4"] + [f"({s.X}, {s.Y})" for s in sols]
    return payload, "\n".join(lines), None


def _progression_payload(prog: inverse.Progression, count: int) -> dict:
    key = prog.key
    try:
        fam = least_type.reduced_family(key.y, key.x, key.ring, key.sign)
        discarded = fam.discarded_least
        palindrome = list(fam.palindrome.terms)
    except PellError:
        discarded, palindrome = None, None
    return {
        "sign": key.sign, "ring": key.ring, "case": prog.case_id,
        "frak_a": prog.frak_a, "y_tilde": prog.y_tilde, "palindrome": palindrome,
        "skipped": [{"a0": str(a), "d": str(d)} for a, d in prog.skipped()],
        "discarded_least": None if discarded is None else str(discarded),
        "elements": [{"a0": str(a), "d": str(d), "discarded": d == discarded}
                     for a, d in inverse.progression_elements(prog, count)],
    }


def cmd_inverse(args):
    progs = inverse.progressions_for_key(args.y, args.x)
    entries = [_progression_payload(p, args.count) for p in progs]
    payload = {"y": args.y, "x": args.x % args.y, "progressions": entries}
    lines = []
    for e in entries:
        elems = " ".join(f"({el['a0']},{el['d']})" + ("*" if el["discarded"] else "")
                         for el in e["elements"])
        lines.append(f"case ({e['case']}) ring {e['ring']} sign {e['sign']:+d} "
                     f"frak_a={e['frak_a']} y_tilde={e['y_tilde']}: {elems}")
    if any(e["discarded_least"] for e in entries):
        lines.append("* discarded least element (period shorter than n+1)")
    return payload, "\n".join(lines), None


def cmd_interval(args):
    minus, plus = inverse.attached_intervals(args.p, args.q, args.ring)
    payload = {"p": args.p, "q": args.q, "ring": args.ring}
    lines = []
    for iv in (minus, plus):
        hit = inverse.integer_in_interval(args.p, args.q, args.ring, iv.side)
        name = "minus" if iv.side == "-" else "plus"
        payload[name] = {"lo": _frac(iv.lo), "hi": _frac(iv.hi),
                         "d": None if hit is None else str(hit.d),
                         "norm": None if hit is None else hit.norm,
                         "case": None if hit is None else hit.case_id}
        found = "none" if hit is None else f"d = {hit.d} (case {hit.case_id}, N = {hit.norm:+d})"
        lines.append(f"I^({args.ring},{iv.side}) = ({float(iv.lo):.6f}, {float(iv.hi):.6f}): {found}")
    return payload, "\n".join(lines), None


def cmd_classify(args):
    ring = least_type.field_ring(args.d) if args.ring is None else args.ring
    c = least_type.classify(args.d, ring)
    payload = {"d": c.d, "ring": c.ring,
               "key": {"y": str(c.key.y), "x": str(c.key.x), "sign": c.key.sign},
               "palindrome": list(c.palindrome.terms), "is_least": c.is_least,
               "a0": str(c.a0), "minimum": str(c.family.minimum)}
    verdict = "least" if c.is_least else f"not least (minimum {c.family.minimum})"
    text = (f"{_ring_name(c.d, ring)}: key (y, x) = ({c.key.y}, {c.key.x}), sign {c.key.sign:+d}, "
            f"palindrome {list(c.palindrome.terms)}, {verdict}")
    return payload, text, None


def cmd_survey(args):
    if args.predecessor is not None:
        prefix = [int(t) for t in args.predecessor.split(",") if t.strip()]
        r = survey.predecessor_density(prefix, args.limit, args.ring)
        payload = {"prefix": list(r.prefix), "N": r.N, "ring": r.ring, "count": r.count,
                   "ratio": _frac(r.ratio), "ratio_decimal": survey.render(r.ratio),
                   "expected": _frac(r.expected), "expected_decimal": survey.render(r.expected)}
        rows = [{"category": f"predecessor_{'_'.join(map(str, prefix))}", "count": str(r.count),
                 "total": str(r.N), "ratio": _frac(r.ratio), "decimal": survey.render(r.ratio)},
                {"category": "expected_limit", "count": "", "total": "",
                 "ratio": _frac(r.expected), "decimal": survey.render(r.expected)}]
        text = (f"prefix {prefix}, N = {r.N}, ring {r.ring}: ratio {survey.render(r.ratio)} "
                f"vs limit {_frac(r.expected)} = {survey.render(r.expected)}")
        return payload, text, rows
    if args.zeta is not None:
        z = survey.zeta_partial_diagnostic(Fraction(args.zeta), args.limit)
        fields = ["sum_least", "sum_all_nonsquare", "difference", "complete_nonsquare", "residual"]
        payload = {"s": args.zeta, "N": z.N}
        payload.update({f: survey.render(getattr(z, f)) for f in fields})
        rows = [{"category": f, "count": "", "total": "", "ratio": "",
                 "decimal": survey.render(getattr(z, f))} for f in fields]
        text = "\n".join(f"{f} = {payload[f]}" for f in fields)
        return payload, text, rows
    rep = survey.least_type_density(args.limit, args.method, args.jobs)
    text = "\n".join(f"{r['category']}: {r['count']}" + (f"/{r['total']} = {r['decimal']}" if r["total"] else "")
                     for r in rep.rows())
    return rep.to_dict(), text, rep.rows()


def cmd_crosscheck(args):
    rep = inverse.cross_check_parameterizations(args.y, args.x, args.bound)
    entries = [{"sign": e.sign, "ring": e.ring, "palindrome": list(e.palindrome),
                "progression": [str(d) for d in e.progression],
                "halter_koch": [str(d) for d in e.halter_koch], "match": e.match}
               for e in rep.entries]
    payload = {"y": rep.y, "x": rep.x, "bound": rep.bound, "ok": rep.ok, "entries": entries}
    lines = [f"(y, x) = ({rep.y}, {rep.x}), bound {rep.bound}: {'equal' if rep.ok else 'MISMATCH'}"]
    for e in rep.entries:
        lines.append(f"  sign {e.sign:+d} ring {e.ring} palindrome {list(e.palindrome)}: "
                     f"{e.progression} {'==' if e.match else '!='} {e.halter_koch}")
    return payload, "\n".join(lines), None


# -- parser ----------------------------------------------------------------


def _ring(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError("ring must be 0 or 1")
    return int(text)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="pellinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="continued fraction of omega_d")
    p.add_argument("d", type=int)
    p.add_argument("--ring", type=_ring, default=0)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("unit", parents=[common], help="fundamental unit of Z[omega_d]")
    p.add_argument("d", type=int)
    p.add_argument("--ring", type=_ring, default=0)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("pell", parents=[common], help="solutions of X^2 - D Y^2 = 4")
    p.add_argument("d", type=int)
    p.add_argument("--ring", type=_ring, default=0)
    p.add_argument("--count", type=_positive, default=1)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("inverse", parents=[common], help="progressions of d for a key (y, x)")
    p.add_argument("--y", type=_positive, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--count", type=_positive, default=5)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("interval", parents=[common], help="attached intervals of p/q")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--ring", type=_ring, required=True)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("classify", parents=[common], help="family and least-type status of d")
    p.add_argument("d", type=int)
    p.add_argument("--ring", type=_ring, default=None,
                   help="default: 1 if d = 1 (mod 4) else 0")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("survey", parents=[common], help="density experiments up to --limit")
    p.add_argument("--limit", type=_positive, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--density", action="store_true", help="least-type density (default)")
    mode.add_argument("--predecessor", metavar="A1,A2,...")
    mode.add_argument("--zeta", metavar="S", help="rational s > 1, e.g. 2 or 3/2")
    p.add_argument("--ring", type=_ring, default=0, help="ring for --predecessor")
    p.add_argument("--method", choices=["families", "oracle"], default="families")
    p.add_argument("--jobs", type=_positive, default=survey.default_jobs(),
                   help="worker processes for --method oracle (env PELLINV_JOBS)")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("crosscheck", parents=[common], help="compare both parameterizations")
    p.add_argument("--y", type=_positive, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--bound", type=_positive, required=True)
    p.set_defaults(func=cmd_crosscheck)
    return parser


def _error_label(exc: Exception) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", " ", type(exc).__name__).lower()


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        payload, text, rows = args.func(args)
    except PellError as exc:
        print(f"error: {_error_label(exc)}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        out = dumps(payload) + "\n"
    elif args.format == "csv":
        out = _csv(rows, SURVEY_COLUMNS) if rows is not None else _csv(_flatten(payload), KV_COLUMNS)
    else:
        out = text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
