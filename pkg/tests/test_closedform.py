"""Closed-form algebra: canonicalization, evaluation, rendering, JSON."""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaseries.closedform import Atom, ClosedForm, Monomial, log_term
from zetaseries.numcore import PrecisionContext, constant

F = Fraction


class TestAtoms:
    def test_validation(self):
        with pytest.raises(ValueError):
            Atom.zeta(1)
        with pytest.raises(ValueError):
            Atom.beta(0)
        with pytest.raises(ValueError):
            Atom.clausen(0, F(1, 2))
        with pytest.raises(ValueError):
            Atom.clausen(2, F(5, 2))  # |theta| >= 2 pi
        with pytest.raises(ValueError):
            Atom.negapolygamma(2, F(3, 2))
        with pytest.raises(ValueError):
            Atom.log_of(F(-1, 2))
        with pytest.raises(ValueError):
            Atom("PI", (3,))
        with pytest.raises(ValueError):
            Atom("NOT_A_KIND")

    def test_catalan_and_beta2_are_distinct_atoms(self, ctx50):
        # no algebraic-relation discovery: separate atoms, equal values
        a, b = Atom.catalan(), Atom.beta(2)
        assert a != b
        va = ClosedForm.single(1, [(a, 1)]).evaluate(ctx50)
        vb = ClosedForm.single(1, [(b, 1)]).evaluate(ctx50)
        assert va == vb


class TestMonomial:
    def test_merge_and_drop(self):
        pi = Atom.pi()
        m = Monomial([(pi, 2), (pi, -2), (Atom.zeta(3), 1)])
        assert m.factors == ((Atom.zeta(3), 1),)

    def test_canonical_order_stable(self):
        m1 = Monomial([(Atom.zeta(3), 1), (Atom.pi(), -2)])
        m2 = Monomial([(Atom.pi(), -2), (Atom.zeta(3), 1)])
        assert m1 == m2 and hash(m1) == hash(m2)


class TestAlgebra:
    def setup_method(self):
        self.x = ClosedForm.from_terms(
            [(F(7, 2), [(Atom.zeta(3), 1), (Atom.pi(), -2)]), (F(-1), [])]
        )

    def test_add_identity(self):
        assert self.x.add(ClosedForm.zero()) == self.x

    def test_scale_annihilates(self):
        assert self.x.scale(0) == ClosedForm.zero()
        assert self.x.scale(0).is_zero

    def test_linearity(self):
        assert self.x.scale(F(1, 2)).add(self.x.scale(F(1, 2))) == self.x

    def test_cancellation(self):
        assert self.x.add(self.x.scale(-1)).is_zero


_small_coeffs = st.fractions(
    min_value=-4, max_value=4, max_denominator=8
).filter(lambda q: q != 0)
_atoms = st.sampled_from(
    [Atom.pi(), Atom.log2(), Atom.gamma(), Atom.zeta(3), Atom.beta(2), Atom.zeta(5)]
)
_monomials = st.lists(
    st.tuples(_atoms, st.integers(min_value=-2, max_value=2)), max_size=2
)
_forms = st.lists(st.tuples(_small_coeffs, _monomials), max_size=4).map(
    ClosedForm.from_terms
)


class TestProperties:
    @given(_forms, _forms)
    @settings(max_examples=40, deadline=None)
    def test_evaluation_homomorphism_add(self, a, b):
        ctx = PrecisionContext(30)
        with ctx.activate():
            lhs = a.add(b).evaluate(ctx)
            rhs = a.evaluate(ctx) + b.evaluate(ctx)
            assert abs(lhs - rhs) < mpfr(10) ** (-(ctx.working_digits - 5))

    @given(_forms, _small_coeffs)
    @settings(max_examples=40, deadline=None)
    def test_evaluation_homomorphism_scale(self, a, q):
        ctx = PrecisionContext(30)
        with ctx.activate():
            lhs = a.scale(q).evaluate(ctx)
            rhs = mpfr(gmpy2.mpq(q.numerator, q.denominator)) * a.evaluate(ctx)
            assert abs(lhs - rhs) < mpfr(10) ** (-(ctx.working_digits - 5))

    @given(_forms)
    @settings(max_examples=40, deadline=None)
    def test_json_round_trip(self, a):
        assert ClosedForm.from_json(a.to_json()) == a

    @given(_forms)
    @settings(max_examples=40, deadline=None)
    def test_canonicalization_idempotent(self, a):
        rebuilt = ClosedForm(dict(a.terms()))
        assert rebuilt == a and rebuilt._key() == a._key()

    @given(_forms)
    @settings(max_examples=20, deadline=None)
    def test_structural_equality_implies_numeric(self, a):
        ctx = PrecisionContext(20)
        b = ClosedForm.from_json(a.to_json())
        with ctx.activate():
            assert abs(a.evaluate(ctx) - b.evaluate(ctx)) < mpfr(10) ** (-20)


class TestEvaluate:
    def test_empty_is_zero(self, ctx30):
        assert ClosedForm.zero().evaluate(ctx30) == 0

    def test_log_pi_minus_one(self, ctx30):
        cf = ClosedForm.from_terms([(F(1), [(Atom.log_pi(), 1)]), (F(-1), [])])
        with ctx30.activate():
            expected = gmpy2.log(constant("PI", ctx30)) - 1
            assert abs(cf.evaluate(ctx30) - expected) < mpfr(10) ** (-30)

    def test_zeta_ratio_monomial(self, ctx30):
        from zetaseries.specfun import zeta_int

        cf = ClosedForm.single(F(-7, 2), [(Atom.zeta(3), 1), (Atom.pi(), -2)])
        with ctx30.activate():
            expected = -7 * zeta_int(3, ctx30) / (2 * constant("PI", ctx30) ** 2)
            assert abs(cf.evaluate(ctx30) - expected) < mpfr(10) ** (-30)


class TestRendering:
    def test_empty(self):
        assert ClosedForm.zero().render("TEXT") == "0"
        assert ClosedForm.zero().render("LATEX") == "0"

    def test_log_pi_minus_one(self):
        cf = ClosedForm.from_terms([(F(1), [(Atom.log_pi(), 1)]), (F(-1), [])])
        assert cf.render("TEXT") == "log(pi) - 1"
        assert cf.render("LATEX") == "\\log \\pi - 1"

    def test_glaisher_combination(self):
        # -12 log A + 2 - gamma + 7/3 log 2
        cf = ClosedForm.from_terms(
            [
                (F(-12), [(Atom.glaisher_log(), 1)]),
                (F(2), []),
                (F(-1), [(Atom.gamma(), 1)]),
                (F(7, 3), [(Atom.log2(), 1)]),
            ]
        )
        text = cf.render("TEXT")
        for piece in ("12*log(A)", "gamma", "7/3*log(2)", "+ 2"):
            assert piece in text

    def test_deterministic(self):
        cf = ClosedForm.from_terms(
            [(F(1, 3), [(Atom.zeta(3), 1), (Atom.pi(), -2)]), (F(5), [(Atom.beta(4), 1)])]
        )
        assert cf.render("TEXT") == cf.render("TEXT")
        assert cf.render("LATEX") == cf.render("LATEX")

    def test_parameterized_atoms(self):
        cf = ClosedForm.from_terms(
            [
                (F(1), [(Atom.clausen(3, F(1, 2)), 1)]),
                (F(-2), [(Atom.negapolygamma(2, F(1, 4)), 1)]),
                (F(1), [(Atom.zeta_deriv(-2, F(1, 4)), 1)]),
            ]
        )
        text = cf.render("TEXT")
        assert "Cl_3(pi/2)" in text
        assert "psi^(-2)(1/4)" in text
        assert "zeta'(-2,1/4)" in text

    def test_bad_format(self):
        with pytest.raises(ValueError):
            ClosedForm.zero().render("HTML")


class TestLogNormalization:
    def test_four_pi(self):
        cf = log_term(F(1), F(4), 1)  # log(4 pi)
        expected = ClosedForm.from_terms(
            [(F(2), [(Atom.log2(), 1)]), (F(1), [(Atom.log_pi(), 1)])]
        )
        assert cf == expected

    def test_pi_over_two(self):
        cf = log_term(F(1), F(1, 2), 1)
        expected = ClosedForm.from_terms(
            [(F(-1), [(Atom.log2(), 1)]), (F(1), [(Atom.log_pi(), 1)])]
        )
        assert cf == expected

    def test_odd_residue_kept(self):
        cf = log_term(F(1), F(3, 16), 0)  # log 3 - 4 log 2
        expected = ClosedForm.from_terms(
            [(F(-4), [(Atom.log2(), 1)]), (F(1), [(Atom.log_of(F(3), 0), 1)])]
        )
        assert cf == expected

    def test_six_pi(self, ctx30):
        cf = log_term(F(1), F(6), 1)
        with ctx30.activate():
            expected = gmpy2.log(6 * constant("PI", ctx30))
            assert abs(cf.evaluate(ctx30) - expected) < mpfr(10) ** (-30)

    def test_unit_argument(self):
        assert log_term(F(3), F(1), 0).is_zero
