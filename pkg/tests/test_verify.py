"""Verification engine: reports, adjudication, suites, determinism."""

import json
import pathlib
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

import zetaseries.families as families
from zetaseries.closedform import Atom, ClosedForm
from zetaseries.families import HALF, QUARTER, IdentityInstance, lhs_spec, make_instance
from zetaseries.integrals import IntegralCheck
from zetaseries.numcore import PrecisionContext, constant
from zetaseries.verify import (
    AMBIGUOUS,
    CONFIRMED,
    CONTRADICTION,
    DOMAIN_SKIP,
    FAIL,
    PASS,
    adjudicate_reading,
    digits_agreement,
    format_value,
    run_suite,
    run_tables,
    strip_timing,
    verify_identity,
    verify_integral,
)

F = Fraction

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

TINY_CONFIG = {
    "precision": 30,
    "threads": 1,
    "families": {
        "A": {"p": [1, 2], "z": ["1/2", "1/4"]},
        "B": {"m": [1, 2], "p": [0, 1], "z": ["1/2"]},
        "C": {"m": [1, 1], "p": [0, 0], "z": ["1/2"]},
        "X1": {"m": [1, 1], "p": [0, 0], "z": ["1/2"]},
    },
    "integrals": {
        "T1": {"p": [1, 1], "m": [0, 0], "z": ["1/2"], "digits": 10},
        "D2": {"p": [0, 0], "m": [0, 0], "z": ["1/4"], "digits": 8},
    },
}


class TestDigitsAgreement:
    def test_zero_diff_caps_at_working(self, ctx30):
        with ctx30.activate():
            x = mpfr(3) / 7
        assert digits_agreement(x, x, ctx30) == ctx30.working_digits

    def test_absolute_when_small(self, ctx30):
        with ctx30.activate():
            a = mpfr(10) ** (-8)
            b = a + mpfr(10) ** (-20)
        # absolute difference 1e-20 -> 19..20 digits even though the
        # relative difference is huge
        assert digits_agreement(a, b, ctx30) in (19, 20)

    def test_relative_when_large(self, ctx30):
        with ctx30.activate():
            a = mpfr(10) ** 6
            b = a + mpfr(10) ** (-4)
        assert digits_agreement(a, b, ctx30) in (9, 10)


class TestVerifyIdentity:
    def test_pass(self, ctx30):
        rep = verify_identity(make_instance("B", 1, 0, HALF), ctx30)
        assert rep.status == PASS and rep.digits >= 25

    def test_synthetic_self_comparison(self, ctx30):
        # inject the summed value back as an exact unit coefficient
        inst = make_instance("B", 1, 0, HALF)
        lhs_val = families.lhs_sum(inst.lhs, ctx30)
        synthetic = IdentityInstance(
            "B", 1, 0, HALF, "corrected", inst.lhs,
            ClosedForm.unit(F(*lhs_val.as_integer_ratio())),
        )
        rep = verify_identity(synthetic, ctx30)
        assert rep.status == PASS and rep.abs_diff == 0
        assert rep.digits == ctx30.working_digits

    def test_domain_skip(self, ctx30):
        # Clausen atom beyond the series guard: skipped, not failed
        bad = IdentityInstance(
            "B", 1, 0, HALF, "corrected", lhs_spec("B", 1, 0, HALF),
            ClosedForm.single(1, [(Atom.clausen(2, F(7, 5)), 1)]),
        )
        rep = verify_identity(bad, ctx30)
        assert rep.status == DOMAIN_SKIP

    def test_json_fields(self, ctx30):
        rep = verify_identity(make_instance("A", 0, 1, HALF), ctx30)
        data = rep.to_json()
        for key in ("family", "m", "p", "z", "reading", "lhs", "rhs",
                    "abs_diff", "digits", "status", "elapsed_ms"):
            assert key in data
        assert data["z"] == "1/2" and data["status"] == "PASS"


class TestVerifyIntegral:
    def test_cotangent_moment_log2(self, ctx30):
        # p = 1, z = 1/2: the integral equals (pi/2) log 2
        check = IntegralCheck("T1", 1, 0, HALF, 12)
        rep = verify_integral(check)
        assert rep.status == PASS and rep.digits >= 10
        with ctx30.activate():
            expected = constant("PI", ctx30) / 2 * constant("LOG2", ctx30)
            assert abs(mpfr(rep.lhs_value) - expected) < mpfr(10) ** (-10)

    def test_vanishing_range(self):
        rep = verify_integral(IntegralCheck("T3", 1, 0, F(1, 64), 10))
        assert rep.status == PASS
        assert abs(rep.lhs_value) < mpfr("0.01")

    def test_clausen_moment(self):
        rep = verify_integral(IntegralCheck("T2", 2, 2, QUARTER, 12))
        assert rep.status == PASS and rep.digits >= 10

    def test_double_integrals(self):
        for tid in ("D1", "D2"):
            rep = verify_integral(IntegralCheck(tid, 1, 1, QUARTER, 10))
            assert rep.status == PASS and rep.digits >= 8, tid

    def test_guard(self):
        with pytest.raises(Exception):
            IntegralCheck("T1", 0, 0, HALF, 12)  # p >= 1
        with pytest.raises(Exception):
            IntegralCheck("T2", 1, 1, HALF, 20)  # digits cap


class TestAdjudication:
    def test_divergent_readings_confirmed(self, ctx30):
        rec = adjudicate_reading("C", 2, 0, HALF, ctx30)
        assert rec.outcome == CONFIRMED and rec.chosen == "corrected"
        assert not rec.identical_variants
        assert rec.passing == ("corrected",)

    def test_quarter_beta_typo_confirmed(self, ctx30):
        rec = adjudicate_reading("C", 1, 0, QUARTER, ctx30)
        assert rec.outcome == CONFIRMED and rec.chosen == "corrected"

    def test_scaled_prefactor_rejected(self, ctx30):
        # general-z F: the pi prefactor holds, the pi z variant fails
        rec = adjudicate_reading("F", 1, 1, F(1, 8), ctx30)
        assert rec.outcome == CONFIRMED and rec.chosen == "corrected"
        assert set(rec.passing) == {"corrected", "as_printed"}

    def test_identical_variants_ambiguous(self, ctx30):
        rec = adjudicate_reading("B", 1, 0, HALF, ctx30)
        assert rec.outcome == AMBIGUOUS and rec.identical_variants

    def test_corrupted_coefficient_contradiction(self, ctx30, monkeypatch):
        original = families.rhs_closed_form

        def corrupted(family, m, p, z, reading="corrected"):
            return original(family, m, p, z, reading).add(ClosedForm.unit(F(1, 1000)))

        monkeypatch.setattr(families, "rhs_closed_form", corrupted)
        rec = adjudicate_reading("C", 2, 0, HALF, ctx30)
        assert rec.outcome == CONTRADICTION and rec.chosen is None


class TestSuite:
    @pytest.fixture(scope="class")
    def tiny_result(self):
        return run_suite(json.loads(json.dumps(TINY_CONFIG)))

    def test_counts_and_status(self, tiny_result):
        assert tiny_result.ok
        counts = tiny_result.counts
        # A: 4, B: 4, C: 1, X1: 1 identities; 2 integrals
        assert counts["pass"] == 12 and counts["fail"] == 0

    def test_adjudications_recorded(self, tiny_result):
        assert len(tiny_result.adjudications) == 1
        rec = tiny_result.adjudications[0]
        assert rec.family == "C" and rec.outcome == CONFIRMED

    def test_empty_config(self):
        res = run_suite({"precision": 20, "families": {}, "integrals": {}})
        assert res.ok and res.counts["pass"] == 0

    def test_report_determinism(self, tiny_result):
        again = run_suite(json.loads(json.dumps(TINY_CONFIG)))
        a = json.dumps(strip_timing(tiny_result.to_json()), sort_keys=True)
        b = json.dumps(strip_timing(again.to_json()), sort_keys=True)
        assert a == b

    def test_thread_pool_matches_serial(self, tiny_result):
        cfg = json.loads(json.dumps(TINY_CONFIG))
        cfg["threads"] = 4
        threaded = run_suite(cfg)
        a = json.dumps(strip_timing(tiny_result.to_json())["identities"], sort_keys=True)
        b = json.dumps(strip_timing(threaded.to_json())["identities"], sort_keys=True)
        assert a == b

    def test_report_written(self, tmp_path):
        out = tmp_path / "report.json"
        run_suite(json.loads(json.dumps(TINY_CONFIG)), out_path=str(out))
        data = json.loads(out.read_text())
        for key in ("config", "identities", "integrals", "adjudications", "summary"):
            assert key in data
        for entry in data["identities"]:
            for key in ("family", "m", "p", "z", "reading", "lhs", "rhs",
                        "abs_diff", "digits", "status"):
                assert key in entry
        summary = data["summary"]
        for key in ("pass", "fail", "skip", "worst_digits", "contradictions"):
            assert key in summary

    def test_io_error_has_path_context(self):
        with pytest.raises(OSError, match="no/such/dir"):
            run_suite(json.loads(json.dumps(TINY_CONFIG)), out_path="/no/such/dir/report.json")

    def test_golden_fixture(self, tiny_result):
        """Byte-exact comparison after timing stripping."""
        golden_path = FIXTURES / "tiny_suite_report.json"
        rendered = json.dumps(strip_timing(tiny_result.to_json()), indent=2, sort_keys=True) + "\n"
        assert golden_path.exists(), (
            "golden fixture missing; regenerate with tests/make_golden.py"
        )
        assert rendered == golden_path.read_text()

    def test_monotone_precision(self):
        # raising the target never turns PASS into FAIL (corrected readings)
        for digits in (15, 30, 60):
            ctx = PrecisionContext(digits)
            for fam, m, p, z in [("B", 3, 0, HALF), ("F", 1, 1, QUARTER)]:
                rep = verify_identity(make_instance(fam, m, p, z), ctx)
                assert rep.status == PASS, (digits, fam)


class TestTablesRunner:
    def test_all_sections_pass(self):
        rows = run_tables()
        assert len(rows) == 49
        assert all(r["status"] == PASS for r in rows)
        flagged = [r for r in rows if "note" in r]
        assert len(flagged) == 2


class TestFormatValue:
    def test_basics(self, ctx30):
        with ctx30.activate():
            assert format_value(mpfr(0), 10) == "0"
            pi = constant("PI", ctx30)
            assert format_value(pi, 10) == "3.141592654e+00"
            assert format_value(-pi / 1000, 10) == "-3.141592654e-03"
