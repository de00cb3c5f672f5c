"""Verification engine: evaluates identities and integral checks,
adjudicates reading variants, and emits deterministic JSON reports.

A verification PASSes when the digits of agreement reach the target
minus 5.  Agreement counts the absolute difference when either side is
below 1 in magnitude (several right-hand sides sit near zero) and the
relative difference otherwise.  Suite reports are byte-stable across
runs once timing fields are stripped.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2
from gmpy2 import mpfr

from . import families
from .closedform import ClosedForm
from .integrals import THEOREM_IDS, IntegralCheck, integral_lhs_quadrature, integral_rhs
from .numcore import PrecisionContext
from .specfun import DomainError
from .tables import all_entries, table_entries

__all__ = [
    "VerificationReport",
    "AdjudicationRecord",
    "SuiteResult",
    "digits_agreement",
    "format_value",
    "verify_identity",
    "verify_integral",
    "adjudicate_reading",
    "run_suite",
    "default_suite_config",
    "strip_timing",
]

PASS = "PASS"
FAIL = "FAIL"
DOMAIN_SKIP = "DOMAIN_SKIP"


def format_value(x: mpfr, ndigits: int) -> str:
    """Deterministic scientific-notation rendering with ndigits digits."""
    if gmpy2.is_nan(x):
        return "nan"
    if x == 0:
        return "0"
    digits, exp, _ = gmpy2.digits(x, 10, ndigits)
    sign = ""
    if digits.startswith("-"):
        sign, digits = "-", digits[1:]
    mantissa = digits[0] + "." + digits[1:]
    return f"{sign}{mantissa}e{exp - 1:+03d}"


def digits_agreement(lhs: mpfr, rhs: mpfr, ctx: PrecisionContext) -> int:
    """Decimal digits on which the two sides agree.

    floor(-log10 d) with d the absolute difference when either side has
    magnitude below 1, the relative difference otherwise; capped at the
    working digits (a zero difference cannot certify more than that).
    """
    with ctx.activate():
        diff = abs(lhs - rhs)
        if diff == 0:
            return ctx.working_digits
        if abs(lhs) >= 1 and abs(rhs) >= 1:
            diff = diff / max(abs(lhs), abs(rhs))
        return min(int(gmpy2.floor(-gmpy2.log10(diff))), ctx.working_digits)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity or integral comparison."""

    kind: str  # "identity" or "integral"
    name: dict
    lhs_value: Optional[mpfr]
    rhs_value: Optional[mpfr]
    abs_diff: Optional[mpfr]
    digits: int
    reading_used: str
    status: str
    elapsed: float
    display_digits: int

    def to_json(self) -> dict:
        out = dict(self.name)
        nd = self.display_digits
        if self.status == DOMAIN_SKIP or self.lhs_value is None:
            out.update({"lhs": None, "rhs": None, "abs_diff": None})
        else:
            out.update(
                {
                    "lhs": format_value(self.lhs_value, nd),
                    "rhs": format_value(self.rhs_value, nd),
                    "abs_diff": format_value(self.abs_diff, 3),
                }
            )
        out.update(
            {
                "reading": self.reading_used,
                "digits": self.digits,
                "status": self.status,
                "elapsed_ms": round(self.elapsed * 1000, 3),
            }
        )
        return out


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def verify_identity(inst: families.IdentityInstance, ctx: PrecisionContext) -> VerificationReport:
    """Sum the series, evaluate the closed form, compare."""
    name = {
        "family": inst.family_id,
        "m": inst.m,
        "p": inst.p,
        "z": _frac_str(inst.z),
    }
    start = time.perf_counter()
    try:
        lhs = families.lhs_sum(inst.lhs, ctx)
        rhs = inst.rhs.evaluate(ctx)
    except DomainError:
        return VerificationReport(
            "identity", name, None, None, None, 0, inst.reading, DOMAIN_SKIP,
            time.perf_counter() - start, ctx.target_digits,
        )
    with ctx.activate():
        diff = abs(lhs - rhs)
    digits = digits_agreement(lhs, rhs, ctx)
    status = PASS if digits >= ctx.target_digits - 5 else FAIL
    return VerificationReport(
        "identity", name, lhs, rhs, diff, digits, inst.reading, status,
        time.perf_counter() - start, ctx.target_digits,
    )


def verify_integral(check: IntegralCheck, ctx: Optional[PrecisionContext] = None) -> VerificationReport:
    """Quadrature of the integral side against its closed form.

    Passes when the two sides agree to quadrature_digits - 2.
    """
    name = {
        "theorem": check.theorem_id,
        "m": check.m,
        "p": check.p,
        "z": _frac_str(Fraction(check.z)),
        "quadrature_digits": check.quadrature_digits,
    }
    if ctx is None:
        ctx = PrecisionContext(max(check.quadrature_digits + 6, 10), 20)
    start = time.perf_counter()
    try:
        lhs = integral_lhs_quadrature(check)
        rhs = integral_rhs(check).evaluate(ctx)
    except DomainError:
        return VerificationReport(
            "integral", name, None, None, None, 0, "corrected", DOMAIN_SKIP,
            time.perf_counter() - start, check.quadrature_digits,
        )
    with ctx.activate():
        lhs = mpfr(lhs)
        diff = abs(lhs - rhs)
        if abs(lhs) >= 1 and abs(rhs) >= 1:
            rel = diff / max(abs(lhs), abs(rhs))
        else:
            rel = diff
        digits = int(gmpy2.floor(-gmpy2.log10(rel))) if rel != 0 else ctx.working_digits
    status = PASS if digits >= check.quadrature_digits - 2 else FAIL
    return VerificationReport(
        "integral", name, lhs, rhs, diff, digits, "corrected", status,
        time.perf_counter() - start, check.quadrature_digits,
    )


# ---------------------------------------------------------------------------
# Reading adjudication
# ---------------------------------------------------------------------------

CONFIRMED = "CONFIRMED"
AMBIGUOUS = "AMBIGUOUS"
CONTRADICTION = "CONTRADICTION"


@dataclass(frozen=True)
class AdjudicationRecord:
    """Numeric adjudication between the reading variants of one identity."""

    family: str
    m: int
    p: int
    z: Fraction
    outcome: str  # CONFIRMED / AMBIGUOUS / CONTRADICTION
    chosen: Optional[str]
    passing: tuple[str, ...]
    identical_variants: bool
    reports: tuple[VerificationReport, ...]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "p": self.p,
            "z": _frac_str(self.z),
            "outcome": self.outcome,
            "chosen": self.chosen,
            "passing": list(self.passing),
            "identical_variants": self.identical_variants,
            "reports": [r.to_json() for r in self.reports],
        }


def adjudicate_reading(
    family: str, m: int, p: int, z: Fraction, ctx: PrecisionContext
) -> AdjudicationRecord:
    """Verify every available reading and report which one holds.

    Variants that build the same closed form count as one candidate; if
    every variant is identical there is nothing to decide (AMBIGUOUS).
    Otherwise exactly one passing distinct form confirms its reading
    (preferring the ``corrected`` tag), several passing forms are
    AMBIGUOUS, and none passing is a CONTRADICTION.
    """
    z = Fraction(z)
    variants = families.reading_variants(family, m, p, z)
    forms = {r: families.rhs_closed_form(family, m, p, z, r) for r in variants}
    identical = len({f._key() for f in forms.values()}) == 1
    reports = []
    passing = []
    passing_forms = set()
    for r in variants:
        rep = verify_identity(families.make_instance(family, m, p, z, r), ctx)
        reports.append(rep)
        if rep.status == PASS:
            passing.append(r)
            passing_forms.add(forms[r]._key())
    if not passing:
        outcome, chosen = CONTRADICTION, None
    elif identical or len(passing_forms) > 1:
        outcome, chosen = AMBIGUOUS, None
    else:
        outcome = CONFIRMED
        chosen = "corrected" if "corrected" in passing else passing[0]
    return AdjudicationRecord(
        family, m, p, z, outcome, chosen, tuple(passing), identical, tuple(reports)
    )


# ---------------------------------------------------------------------------
# Suite runner
# ---------------------------------------------------------------------------


def default_suite_config() -> dict:
    """The desk-scale default: every family plus the integral grid."""
    return {
        "precision": 50,
        "threads": 1,
        "families": {
            "A": {"p": [1, 6], "z": ["1/2", "1/4"]},
            "B": {"m": [1, 8], "p": [0, 4], "z": ["1/2", "1/4"]},
            "C": {"m": [0, 6], "p": [0, 4], "z": ["1/2", "1/4"]},
            "D": {"p": [1, 6], "z": ["1/2", "1/4"]},
            "E": {"m": [1, 8], "p": [0, 4], "z": ["1/2", "1/4"]},
            "F": {"m": [0, 6], "p": [0, 4], "z": ["1/2", "1/4"]},
            "X1": {"m": [1, 3], "p": [0, 1], "z": ["1/2", "1/4"]},
            "X2": {"m": [0, 2], "p": [0, 1], "z": ["1/2", "1/4"]},
        },
        "spot_checks": {
            "B": {"m": [1, 2], "p": [0, 1], "z": ["1/8", "3/16", "1/3"]},
            "E": {"m": [1, 2], "p": [0, 1], "z": ["1/8", "3/16", "1/3"]},
            # general-z F rows also adjudicate the Clausen-sum prefactor
            "F": {"m": [0, 1], "p": [1, 2], "z": ["1/8", "1/3"]},
        },
        "integrals": {
            "T1": {"p": [1, 4], "m": [0, 0], "z": ["1/4", "1/2"], "digits": 12},
            "T2": {"p": [1, 4], "m": [1, 3], "z": ["1/4", "1/2"], "digits": 12},
            "T3": {"p": [1, 4], "m": [0, 0], "z": ["1/4", "1/2"], "digits": 12},
            "T4": {"p": [1, 4], "m": [1, 3], "z": ["1/4", "1/2"], "digits": 12},
            "D1": {"p": [0, 2], "m": [0, 2], "z": ["1/4"], "digits": 10},
            "D2": {"p": [0, 2], "m": [0, 2], "z": ["1/4"], "digits": 10},
        },
    }


@dataclass
class SuiteResult:
    config: dict
    identity_reports: list[VerificationReport]
    integral_reports: list[VerificationReport]
    adjudications: list[AdjudicationRecord]
    skipped_enumeration: int
    elapsed: float

    @property
    def counts(self) -> dict:
        reports = self.identity_reports + self.integral_reports
        return {
            "pass": sum(1 for r in reports if r.status == PASS),
            "fail": sum(1 for r in reports if r.status == FAIL),
            "skip": sum(1 for r in reports if r.status == DOMAIN_SKIP)
            + self.skipped_enumeration,
        }

    @property
    def contradictions(self) -> list[AdjudicationRecord]:
        return [a for a in self.adjudications if a.outcome == CONTRADICTION]

    @property
    def ok(self) -> bool:
        return self.counts["fail"] == 0 and not self.contradictions

    def summary(self) -> dict:
        scored = [
            r for r in self.identity_reports + self.integral_reports if r.status != DOMAIN_SKIP
        ]
        worst = min((r.digits for r in scored), default=None)
        slowest = max(scored, key=lambda r: r.elapsed, default=None)
        out = dict(self.counts)
        out["worst_digits"] = worst
        out["contradictions"] = [a.to_json() for a in self.contradictions]
        out["adjudications"] = {
            "total": len(self.adjudications),
            "confirmed": sum(1 for a in self.adjudications if a.outcome == CONFIRMED),
            "ambiguous_identical": sum(
                1 for a in self.adjudications if a.outcome == AMBIGUOUS and a.identical_variants
            ),
            "ambiguous_distinct": sum(
                1 for a in self.adjudications if a.outcome == AMBIGUOUS and not a.identical_variants
            ),
        }
        out["slowest"] = slowest.to_json() if slowest is not None else None
        out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "identities": [r.to_json() for r in self.identity_reports],
            "integrals": [r.to_json() for r in self.integral_reports],
            "adjudications": [a.to_json() for a in self.adjudications],
            "summary": self.summary(),
        }


def strip_timing(obj):
    """Remove timing fields so reports can be compared byte-exactly."""
    if isinstance(obj, dict):
        return {
            k: strip_timing(v)
            for k, v in obj.items()
            if k not in ("elapsed_ms", "slowest")
        }
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def _integral_checks_from_config(config: dict) -> list[IntegralCheck]:
    checks: list[IntegralCheck] = []
    spec = config.get("integrals", {})
    for tid in THEOREM_IDS:
        if tid not in spec:
            continue
        grid = spec[tid]
        p_lo, p_hi = grid["p"]
        m_lo, m_hi = grid.get("m", (0, 0))
        digits = grid.get("digits", 12)
        for m in range(m_lo, m_hi + 1):
            for p in range(p_lo, p_hi + 1):
                for zs in grid["z"]:
                    try:
                        checks.append(
                            IntegralCheck(tid, p, m, families.frac_from_str(zs), digits)
                        )
                    except (DomainError, ValueError):
                        continue
    return checks


def run_suite(config: Optional[dict] = None, out_path: Optional[str] = None) -> SuiteResult:
    """Enumerate, verify, adjudicate and (optionally) write the report.

    Instance evaluation may run on a thread pool; reports are assembled
    in catalog order, so the output is deterministic regardless of the
    thread count.
    """
    if config is None:
        config = default_suite_config()
    ctx = PrecisionContext(int(config.get("precision", 50)))
    threads = config.get("threads", 1)
    if threads == "auto":
        import os

        threads = os.cpu_count() or 1
    threads = max(1, int(threads))

    start = time.perf_counter()
    instances, skipped = families.catalog_enumerate(config.get("families", {}))
    spot_instances, spot_skipped = families.catalog_enumerate(config.get("spot_checks", {}))
    instances = instances + spot_instances
    skipped += spot_skipped

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            identity_reports = list(pool.map(lambda i: verify_identity(i, ctx), instances))
    else:
        identity_reports = [verify_identity(inst, ctx) for inst in instances]

    # Adjudicate every instance whose reading variants build distinct forms.
    adjudications: list[AdjudicationRecord] = []
    seen: set[tuple] = set()
    for inst in instances:
        key = (inst.family_id, inst.m, inst.p, inst.z)
        if key in seen:
            continue
        seen.add(key)
        variants = families.reading_variants(inst.family_id, inst.m, inst.p, inst.z)
        forms = {
            r: families.rhs_closed_form(inst.family_id, inst.m, inst.p, inst.z, r)
            for r in variants
        }
        if len({f._key() for f in forms.values()}) > 1:
            adjudications.append(adjudicate_reading(inst.family_id, inst.m, inst.p, inst.z, ctx))

    integral_reports = [verify_integral(c) for c in _integral_checks_from_config(config)]

    result = SuiteResult(
        config=config,
        identity_reports=identity_reports,
        integral_reports=integral_reports,
        adjudications=adjudications,
        skipped_enumeration=skipped,
        elapsed=time.perf_counter() - start,
    )
    if out_path:
        try:
            with open(out_path, "w") as fh:
                json.dump(result.to_json(), fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            raise OSError(f"cannot write report to {out_path}: {exc}") from exc
    return result


def verify_table_entry(entry, ctx: PrecisionContext) -> dict:
    """Check one reference-table row; adjudicates printed-vs-corrected."""
    with ctx.activate():
        lhs = families.lhs_sum(entry.lhs, ctx)
        printed = entry.printed.evaluate(ctx)
        d_printed = digits_agreement(lhs, printed, ctx)
        row = {
            "section": entry.section,
            "label": entry.label,
            "lhs": format_value(lhs, ctx.target_digits),
            "printed_rhs": format_value(printed, ctx.target_digits),
            "printed_digits": d_printed,
        }
        threshold = ctx.target_digits - 5
        if entry.corrected is not None:
            corrected = entry.corrected.evaluate(ctx)
            row["corrected_rhs"] = format_value(corrected, ctx.target_digits)
            row["corrected_digits"] = digits_agreement(lhs, corrected, ctx)
            row["status"] = PASS if row["corrected_digits"] >= threshold else FAIL
            row["note"] = "printed form fails; corrected reading verified"
        else:
            row["status"] = PASS if d_printed >= threshold else FAIL
        return row


def run_tables(sections=None, ctx: Optional[PrecisionContext] = None) -> list[dict]:
    """Verify the reference tables (default: all sections at 30 digits)."""
    if ctx is None:
        ctx = PrecisionContext(30)
    entries = all_entries() if sections is None else [
        e for s in sections for e in table_entries(s)
    ]
    return [verify_table_entry(e, ctx) for e in entries]
