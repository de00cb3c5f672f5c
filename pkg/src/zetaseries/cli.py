"""Command-line interface.

Subcommands: ``constant`` (print a constant), ``sum`` (direct series
evaluation), ``closed-form`` (render a right-hand side), ``verify``
(single identity report), ``suite`` (full verification run with JSON
report) and ``table`` (reference tables with numeric confirmation).

Exit status: 0 on success/PASS, 1 on FAIL or CONTRADICTION, 2 on usage
errors.  z arguments are exact rationals written as ``p/q``; decimals
are rejected to avoid silent precision loss.  All configuration flows
through flags or the JSON config file, never environment variables.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import gmpy2

from . import families, verify
from .closedform import Atom, ClosedForm
from .numcore import PrecisionContext, constant
from .specfun import DomainError
from .tables import TABLE_SECTIONS, table_entries

__all__ = ["main"]

_SIMPLE_CONSTANTS = {
    "pi": "PI",
    "log2": "LOG2",
    "logpi": "LOG_PI",
    "log_pi": "LOG_PI",
    "gamma": "EULER_GAMMA",
    "euler_gamma": "EULER_GAMMA",
    "catalan": "CATALAN",
    "glaisher_log": "GLAISHER_LOG",
    "log_a": "GLAISHER_LOG",
}


class UsageError(Exception):
    pass


def _parse_fraction(text: str) -> Fraction:
    try:
        return families.frac_from_str(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc


def _truncate_digits(x, ndigits: int) -> str:
    """Decimal rendering truncated (not rounded) to ndigits digits.

    Truncation makes shorter outputs prefixes of longer ones for the
    same quantity, which the CLI guarantees.
    """
    if x == 0:
        return "0"
    digits, exp, _ = gmpy2.digits(x, 10, ndigits + 8)
    sign = ""
    if digits.startswith("-"):
        sign, digits = "-", digits[1:]
    digits = digits[:ndigits]
    return f"{sign}{digits[0]}.{digits[1:]}e{exp - 1:+03d}"


def _resolve_constant(name: str, ctx: PrecisionContext):
    """Resolve a constant spec like 'catalan', 'zeta:3', 'clausen:2:1/2'."""
    key = name.strip().lower()
    if key in _SIMPLE_CONSTANTS:
        return constant(_SIMPLE_CONSTANTS[key], ctx)
    parts = key.split(":")
    head, args = parts[0], parts[1:]
    try:
        if head == "zeta" and len(args) == 1:
            atom = Atom.zeta(int(args[0]))
        elif head == "beta" and len(args) == 1:
            atom = Atom.beta(int(args[0]))
        elif head in ("zeta_deriv", "zetaderiv") and len(args) in (1, 2):
            a = _parse_fraction(args[1]) if len(args) == 2 else Fraction(1)
            atom = Atom.zeta_deriv(int(args[0]), a)
        elif head in ("clausen", "cl") and len(args) == 2:
            atom = Atom.clausen(int(args[0]), _parse_fraction(args[1]))
        elif head in ("negapolygamma", "psi") and len(args) == 2:
            atom = Atom.negapolygamma(int(args[0]), _parse_fraction(args[1]))
        elif head == "log" and len(args) == 1:
            atom = Atom.log_of(_parse_fraction(args[0]), 0)
        else:
            raise UsageError(f"unknown constant {name!r}")
    except ValueError as exc:
        raise UsageError(f"bad constant {name!r}: {exc}") from exc
    return ClosedForm.single(1, [(atom, 1)]).evaluate(ctx)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--digits", type=int, default=50, help="target decimal digits (10..200)")
    parser.add_argument("--output", choices=["text", "json"], default="text")


def _add_instance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, choices=families.FAMILIES)
    parser.add_argument("--m", type=int, default=0)
    parser.add_argument("--p", type=int, default=0)
    parser.add_argument("--z", required=True, help="exact rational, e.g. 1/2")


def _context(args) -> PrecisionContext:
    if not (10 <= args.digits <= 200):
        raise UsageError("--digits must lie in [10, 200]")
    return PrecisionContext(args.digits)


def _cmd_constant(args) -> int:
    ctx = _context(args)
    value = _resolve_constant(args.name, ctx)
    text = _truncate_digits(value, args.digits)
    if args.output == "json":
        print(json.dumps({"name": args.name, "digits": args.digits, "value": text}, sort_keys=True))
    else:
        print(text)
    return 0


def _cmd_sum(args) -> int:
    ctx = _context(args)
    z = _parse_fraction(args.z)
    spec = families.lhs_spec(args.family, args.m, args.p, z)
    value = families.lhs_sum(spec, ctx)
    text = _truncate_digits(value, args.digits)
    if args.output == "json":
        payload = families.instance_to_json(families.make_instance(args.family, args.m, args.p, z))
        print(json.dumps({"lhs": payload["lhs"], "value": text}, sort_keys=True))
    else:
        print(text)
    return 0


def _cmd_closed_form(args) -> int:
    if not (10 <= args.digits <= 200):
        raise UsageError("--digits must lie in [10, 200]")
    z = _parse_fraction(args.z)
    cf = families.rhs_closed_form(args.family, args.m, args.p, z, args.reading)
    if args.format == "json":
        print(json.dumps(cf.to_json(), sort_keys=True))
    elif args.format == "latex":
        print(cf.render("LATEX"))
    else:
        print(cf.render("TEXT"))
    return 0


def _cmd_verify(args) -> int:
    ctx = _context(args)
    z = _parse_fraction(args.z)
    if args.reading == "both":
        record = verify.adjudicate_reading(args.family, args.m, args.p, z, ctx)
        if args.output == "json":
            print(json.dumps(record.to_json(), sort_keys=True))
        else:
            for rep in record.reports:
                _print_report(rep)
            print(f"outcome: {record.outcome}"
                  + (f" ({record.chosen})" if record.chosen else ""))
        return 0 if record.outcome != verify.CONTRADICTION else 1
    inst = families.make_instance(args.family, args.m, args.p, z, args.reading)
    rep = verify.verify_identity(inst, ctx)
    if args.output == "json":
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        _print_report(rep)
        print("rhs closed form:", inst.rhs.render("TEXT"))
    return 0 if rep.status == verify.PASS else 1


def _print_report(rep) -> None:
    d = rep.to_json()
    head = ", ".join(f"{k}={d[k]}" for k in ("family", "theorem", "m", "p", "z") if k in d)
    print(f"[{d['status']}] {head} reading={d['reading']} digits={d['digits']}")
    if d.get("lhs") is not None:
        print(f"  lhs = {d['lhs']}")
        print(f"  rhs = {d['rhs']}")
        print(f"  |diff| = {d['abs_diff']}")


def _cmd_suite(args) -> int:
    config = verify.default_suite_config()
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON in {args.config}: {exc}") from exc
    if args.digits is not None:
        if not (10 <= args.digits <= 200):
            raise UsageError("--digits must lie in [10, 200]")
        config["precision"] = args.digits
    if args.threads is not None:
        config["threads"] = args.threads if args.threads == "auto" else int(args.threads)
    result = verify.run_suite(config, out_path=args.out)
    summary = result.summary()
    print(
        f"suite: {summary['pass']} pass, {summary['fail']} fail, "
        f"{summary['skip']} skipped; worst agreement {summary['worst_digits']} digits"
    )
    adj = summary["adjudications"]
    print(
        f"adjudications: {adj['total']} "
        f"(confirmed {adj['confirmed']}, ambiguous {adj['ambiguous_identical'] + adj['ambiguous_distinct']}, "
        f"contradictions {len(summary['contradictions'])})"
    )
    if args.out:
        print(f"report written to {args.out}")
    return 0 if result.ok else 1


def _cmd_table(args) -> int:
    if args.section not in TABLE_SECTIONS:
        raise UsageError(f"--section must be one of {TABLE_SECTIONS}")
    ctx = PrecisionContext(args.digits)
    rows = [verify.verify_table_entry(e, ctx) for e in table_entries(args.section)]
    if args.output == "json":
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        print(f"table {args.section}  ({len(rows)} sums, target {args.digits} digits)")
        for row in rows:
            mark = row["status"]
            extra = f"  [{row['note']}]" if "note" in row else ""
            digits = row.get("corrected_digits", row["printed_digits"])
            print(f"[{mark}] {row['label']}")
            print(f"    value = {row['lhs']}   agreement {digits} digits{extra}")
    bad = [r for r in rows if r["status"] != verify.PASS]
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetaseries",
        description="Evaluate and verify rational zeta series identities at arbitrary precision.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constant", help="print a constant to the requested digits")
    p.add_argument("name", help="pi, log2, logpi, gamma, catalan, glaisher_log, "
                                "zeta:J, beta:J, zeta_deriv:S[:A], clausen:M:T, "
                                "negapolygamma:M:Z, log:Q")
    _add_common(p)
    p.set_defaults(func=_cmd_constant)

    p = sub.add_parser("sum", help="evaluate a series left-hand side")
    _add_instance_flags(p)
    _add_common(p)
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("closed-form", help="print the exact right-hand side")
    _add_instance_flags(p)
    p.add_argument("--reading", choices=families.READINGS, default="corrected")
    p.add_argument("--format", choices=["text", "latex", "json"], default="text")
    p.add_argument("--digits", type=int, default=50)
    p.set_defaults(func=_cmd_closed_form)

    p = sub.add_parser("verify", help="verify one identity")
    _add_instance_flags(p)
    p.add_argument("--reading", choices=list(families.READINGS) + ["both"], default="corrected")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("suite", help="run the verification suite")
    p.add_argument("--config", help="JSON config file (defaults to the desk-scale ranges)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--threads", default=None, help="worker threads or 'auto'")
    p.set_defaults(func=_cmd_suite)

    p = sub.add_parser("table", help="reproduce a reference table with confirmations")
    p.add_argument("--section", type=int, required=True)
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
