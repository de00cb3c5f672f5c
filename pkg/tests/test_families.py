"""Catalog tests: series specs, certified sums, closed forms, enumeration."""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

from zetaseries.closedform import Atom, ClosedForm, log_term
from zetaseries.families import (
    FAMILIES,
    HALF,
    QUARTER,
    SeriesSpec,
    catalog_enumerate,
    frac_from_str,
    general_rhs,
    instance_from_json,
    instance_to_json,
    lhs_spec,
    lhs_sum,
    make_instance,
    reading_variants,
    rhs_closed_form,
    rhs_general_p_form,
)
from zetaseries.numcore import PrecisionContext, constant
from zetaseries.specfun import DomainError, zeta_even, zeta_int

F = Fraction


class TestSeriesSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            SeriesSpec("ZETA_EVEN", 0, ((2, 0),), HALF, F(1))  # vanishes at n=0
        with pytest.raises(ValueError):
            SeriesSpec("ZETA_EVEN", 0, ((-1, 5),), HALF, F(1))
        with pytest.raises(ValueError):
            SeriesSpec("ZETA_EVEN", 0, ((2, 1),), F(3, 2), F(1))
        with pytest.raises(ValueError):
            SeriesSpec("ALT_ZETA", 0, ((1, 1),), HALF, F(1))
        with pytest.raises(ValueError):
            SeriesSpec("COSINE", 0, ((2, 1),), HALF, F(1))

    def test_denominator_product(self):
        spec = lhs_spec("B", 2, 1, HALF)
        # n (2n+1) (2n+3) at n = 2 -> 2 * 5 * 7
        assert spec.denominator_at(2) == 70

    def test_family_shapes(self):
        assert lhs_spec("A", 0, 3, HALF).denominator_factors == ((2, 3),)
        assert lhs_spec("B", 3, 1, HALF).denominator_factors == ((1, 0), (2, 1), (2, 2), (2, 4))
        assert lhs_spec("C", 1, 2, HALF).denominator_factors == ((2, 1), (2, 2), (2, 5))
        assert lhs_spec("D", 0, 2, HALF).denominator_factors == ((2, 3),)
        assert lhs_spec("E", 2, 1, HALF).denominator_factors == ((2, 1), (2, 2), (2, 4))
        assert lhs_spec("F", 1, 1, HALF).denominator_factors == ((2, 2), (2, 3), (2, 5))
        assert lhs_spec("X1", 2, 1, HALF).denominator_factors == ((1, 0), (1, 1), (1, 3))
        assert lhs_spec("X2", 1, 1, HALF).denominator_factors == ((1, 1), (1, 2), (1, 4))


class TestLhsSum:
    def test_log2_series(self, ctx50):
        # family A at p = 1, z = 1/2 sums to log 2
        value = lhs_sum(lhs_spec("A", 0, 1, HALF), ctx50)
        with ctx50.activate():
            assert abs(value - constant("LOG2", ctx50)) < mpfr(10) ** (-50)

    def test_log_pi_minus_one(self, ctx50):
        value = lhs_sum(lhs_spec("B", 1, 0, HALF), ctx50)
        with ctx50.activate():
            expected = gmpy2.log(constant("PI", ctx50)) - 1
            assert abs(value - expected) < mpfr(10) ** (-50)

    def test_first_term_sanity(self, ctx50):
        # leading term of the log 2 series: -2 zeta(0) / 1 = +1
        spec = lhs_spec("A", 0, 1, HALF)
        with ctx50.activate():
            term0 = spec.leading_coefficient * zeta_even(0, ctx50) / spec.denominator_at(0)
            assert term0 == 1

    def test_tail_bound_soundness(self, ctx30):
        # adding 25% more terms must not move the certified value
        for fam, m, p, z in [("A", 0, 2, HALF), ("B", 2, 1, QUARTER),
                             ("E", 1, 0, HALF), ("X1", 1, 0, HALF)]:
            spec = lhs_spec(fam, m, p, z)
            base = lhs_sum(spec, ctx30)
            with ctx30.activate():
                extra = _sum_n_terms(spec, ctx30, extra_fraction=0.25)
                assert abs(extra) < mpfr(10) ** (-30)


def _sum_n_terms(spec, ctx, extra_fraction):
    """Contribution of the 25% of terms after the certified cutoff."""
    z2 = zeta_int(2, ctx)
    eps = ctx.eps()
    q = gmpy2.mpq(spec.ratio.numerator, spec.ratio.denominator)
    step = q if spec.numerator == "ALT_ZETA" else q * q
    lead = abs(gmpy2.mpfr(spec.leading_coefficient.numerator) / spec.leading_coefficient.denominator)
    geom = 1 / (1 - gmpy2.mpfr(step))
    qpow = step**spec.start_index
    n = spec.start_index
    # replicate the certified stopping rule to find the cutoff
    while True:
        den = spec.denominator_at(n)
        n += 1
        qpow *= step
        if spec.numerator == "ALT_ZETA":
            bound = lead * z2 * qpow / spec.denominator_at(n)
        else:
            bound = lead * z2 * qpow / den * geom
        if bound < eps:
            break
    cutoff = n
    extra = gmpy2.mpfr(0)
    for k in range(cutoff, cutoff + max(2, int(extra_fraction * cutoff)) + 1):
        if spec.numerator == "ZETA_EVEN":
            zv = zeta_even(k, ctx)
        elif spec.numerator == "ZETA_ODD":
            zv = zeta_int(2 * k + 1, ctx)
        else:
            zv = zeta_int(k, ctx) * (1 if k % 2 == 0 else -1)
        extra += zv * qpow / spec.denominator_at(k)
        qpow *= step
    return spec.leading_coefficient * extra


class TestMakeInstance:
    def test_b_half_structural(self):
        inst = make_instance("B", 1, 0, HALF)
        expected = log_term(F(1), F(1), 1).add(ClosedForm.unit(F(-1)))
        assert inst.rhs == expected  # log(pi) - 1, exactly

    def test_b_quarter_value(self, ctx50):
        inst = make_instance("B", 1, 0, QUARTER)
        with ctx50.activate():
            g = constant("CATALAN", ctx50)
            pi = constant("PI", ctx50)
            expected = 2 * g / pi - 1 + gmpy2.log(pi / 2)
            assert abs(inst.rhs.evaluate(ctx50) - expected) < mpfr(10) ** (-50)

    def test_c_half_value(self, ctx50):
        # m = p = 0: the catalog instance sums zeta(2n)/((2n+1)(2n+2) 4^n),
        # half of the (n+1)-form worked example, so -7 zeta(3)/(4 pi^2)
        inst = make_instance("C", 0, 0, HALF)
        with ctx50.activate():
            expected = -7 * zeta_int(3, ctx50) / (4 * constant("PI", ctx50) ** 2)
            assert abs(inst.rhs.evaluate(ctx50) - expected) < mpfr(10) ** (-50)

    def test_domain_rejection(self):
        with pytest.raises(DomainError):
            make_instance("A", 0, 0, HALF)  # A needs p >= 1
        with pytest.raises(DomainError):
            make_instance("B", 0, 1, HALF)  # B needs m >= 1
        with pytest.raises(DomainError):
            make_instance("B", 1, 0, F(2, 3))  # beyond ratio guard
        with pytest.raises(DomainError):
            make_instance("B", 1, 0, F(31, 65))  # denominator > 64
        with pytest.raises(ValueError):
            make_instance("B", 1, 0, HALF, "upside_down")

    def test_reading_variants(self):
        assert reading_variants("B", 1, 0, HALF) == ("corrected", "as_printed")
        assert reading_variants("F", 1, 1, F(1, 8)) == ("corrected", "as_printed", "alt_scaled")
        with pytest.raises(DomainError):
            rhs_closed_form("B", 1, 0, HALF, "alt_scaled")


class TestCatalogEnumerate:
    def test_cardinality(self):
        instances, skipped = catalog_enumerate({"B": {"m": (1, 2), "p": (0, 1), "z": ["1/2"]}})
        assert len(instances) == 4 and skipped == 0

    def test_empty(self):
        instances, skipped = catalog_enumerate({})
        assert instances == [] and skipped == 0

    def test_atoms_for_log2_series(self):
        instances, _ = catalog_enumerate({"A": {"p": (1, 3), "z": ["1/2", "1/4"]}})
        assert len(instances) == 6
        by_key = {(i.p, i.z): i for i in instances}
        a_half = by_key[(1, HALF)].rhs.atoms()
        assert a_half == {Atom.log2()}
        a_quarter = by_key[(1, QUARTER)].rhs.atoms()
        assert a_quarter == {Atom.log2(), Atom.beta(2), Atom.pi()}

    def test_skip_counting(self):
        instances, skipped = catalog_enumerate({"A": {"p": (0, 2), "z": ["1/2"]}})
        assert len(instances) == 2 and skipped == 1  # p = 0 out of domain

    def test_deterministic_order(self):
        ranges = {
            "A": {"p": (1, 2), "z": ["1/2", "1/4"]},
            "B": {"m": (1, 1), "p": (0, 0), "z": ["1/2"]},
        }
        a, _ = catalog_enumerate(ranges)
        b, _ = catalog_enumerate(ranges)
        assert [instance_to_json(i) for i in a] == [instance_to_json(i) for i in b]
        assert a[0].z == QUARTER and a[1].z == HALF  # z ascending


class TestSpecializationConsistency:
    @pytest.mark.parametrize("fam,m_values", [("B", (1, 2, 3)), ("C", (0, 1, 2)),
                                              ("E", (1, 2, 3)), ("F", (0, 1, 2))])
    def test_general_matches_specialized(self, fam, m_values, ctx30):
        for m in m_values:
            for p in (0, 1, 2):
                for z in (HALF, QUARTER):
                    gen = general_rhs(fam, m, p, z).evaluate(ctx30)
                    spe = rhs_closed_form(fam, m, p, z).evaluate(ctx30)
                    with ctx30.activate():
                        assert abs(gen - spe) < mpfr(10) ** (-30), (fam, m, p, z)

    def test_a_and_d_general_forms(self, ctx30):
        for fam in ("A", "D"):
            for p in (1, 2, 3):
                for z in (HALF, QUARTER):
                    gen = general_rhs(fam, 0, p, z).evaluate(ctx30)
                    spe = rhs_closed_form(fam, 0, p, z).evaluate(ctx30)
                    with ctx30.activate():
                        assert abs(gen - spe) < mpfr(10) ** (-30)


class TestP0Reduction:
    @pytest.mark.parametrize("fam,ms", [("B", (1, 2, 4)), ("C", (0, 1, 3)),
                                        ("E", (1, 2, 4)), ("F", (0, 1, 3)), ("X1", (1, 2))])
    def test_general_p_path_at_zero(self, fam, ms, ctx30):
        for m in ms:
            for z in (HALF, QUARTER, F(1, 8)):
                gen = rhs_general_p_form(fam, m, 0, z).evaluate(ctx30)
                spe = rhs_closed_form(fam, m, 0, z).evaluate(ctx30)
                with ctx30.activate():
                    assert abs(gen - spe) < mpfr(10) ** (-30), (fam, m, z)


class TestSplittingIdentity:
    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("p", [0, 1])
    def test_x1_splits_into_even_and_odd_parts(self, m, p, ctx30):
        z = HALF
        x1 = lhs_sum(lhs_spec("X1", m, p, z), ctx30)
        even_part = SeriesSpec(
            "ZETA_EVEN", 1,
            ((2, 0),) + tuple((2, i) for i in range(1, m)) + ((2, m + p),),
            z, F(1),
        )
        odd_part = SeriesSpec(
            "ZETA_ODD", 1,
            tuple((2, i) for i in range(1, m + 1)) + ((2, m + 1 + p),),
            z, z,
        )
        with ctx30.activate():
            split = lhs_sum(even_part, ctx30) - lhs_sum(odd_part, ctx30)
            assert abs(x1 - split) < mpfr(10) ** (-30)

    def test_x2_splits(self, ctx30):
        m, p, z = 1, 0, QUARTER
        x2 = lhs_sum(lhs_spec("X2", m, p, z), ctx30)
        # even part is the C-family sum without its n = 0 term
        even_part = SeriesSpec(
            "ZETA_EVEN", 1,
            tuple((2, i) for i in range(1, m + 2)) + ((2, m + p + 2),),
            z, F(1),
        )
        odd_part = SeriesSpec(
            "ZETA_ODD", 1,
            tuple((2, i) for i in range(2, m + 3)) + ((2, m + p + 3),),
            z, z,
        )
        with ctx30.activate():
            split = lhs_sum(even_part, ctx30) - lhs_sum(odd_part, ctx30)
            assert abs(x2 - split) < mpfr(10) ** (-30)


class TestInstanceJson:
    def test_round_trip(self):
        for fam, m, p, z in [("A", 0, 2, QUARTER), ("C", 1, 0, HALF),
                             ("F", 1, 1, F(1, 8)), ("X2", 0, 1, HALF)]:
            inst = make_instance(fam, m, p, z)
            data = instance_to_json(inst)
            back = instance_from_json(data)
            assert back == inst
            assert instance_to_json(back) == data

    def test_frac_parsing(self):
        assert frac_from_str("3/16") == F(3, 16)
        with pytest.raises(ValueError):
            frac_from_str("0.5")
        with pytest.raises(ValueError):
            frac_from_str("1e-2")


class TestFullGridVerification:
    """Every catalog instance in a broad grid verifies numerically."""

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_family_grid(self, fam, ctx30):
        grids = {
            "A": [(0, p) for p in range(1, 7)],
            "B": [(m, p) for m in (1, 2, 5, 8) for p in (0, 1, 4)],
            "C": [(m, p) for m in (0, 1, 4, 6) for p in (0, 1, 4)],
            "D": [(0, p) for p in range(1, 7)],
            "E": [(m, p) for m in (1, 2, 5, 8) for p in (0, 1, 4)],
            "F": [(m, p) for m in (0, 1, 4, 6) for p in (0, 1, 4)],
            "X1": [(m, p) for m in (1, 3) for p in (0, 2)],
            "X2": [(m, p) for m in (0, 2) for p in (0, 2)],
        }
        for (m, p) in grids[fam]:
            for z in (HALF, QUARTER, F(1, 3)):
                inst = make_instance(fam, m, p, z)
                with ctx30.activate():
                    l = lhs_sum(inst.lhs, ctx30)
                    r = inst.rhs.evaluate(ctx30)
                    d = abs(l - r) / max(mpfr(1), abs(l))
                    assert d < mpfr(10) ** (-25), (fam, m, p, z, float(d))
