"""Substrate tests: precision contexts, Bernoulli/harmonic numbers, constants."""

from fractions import Fraction

import gmpy2
import pytest

from zetaseries.numcore import (
    PrecisionContext,
    bernoulli,
    bernoulli_poly,
    constant,
    harmonic,
)

from conftest import bernoulli_akiyama_tanigawa, beta_alternating, harmonic_direct


class TestPrecisionContext:
    def test_working_precision_bound(self):
        ctx = PrecisionContext(50)
        assert ctx.guard_digits == 25  # 20 + 10%
        assert ctx.working_precision >= (50 + 25) * 3.32

    def test_guard_floor(self):
        with pytest.raises(ValueError):
            PrecisionContext(50, 10)
        with pytest.raises(ValueError):
            PrecisionContext(0)

    def test_doubled(self):
        ctx = PrecisionContext(30)
        assert PrecisionContext(30).doubled().working_digits == 2 * ctx.working_digits

    def test_determinism(self):
        ctx = PrecisionContext(40)
        with ctx.activate():
            a = gmpy2.exp(gmpy2.mpfr(1) / 3)
        with ctx.activate():
            b = gmpy2.exp(gmpy2.mpfr(1) / 3)
        assert a == b and gmpy2.get_context().precision == 53  # restored


class TestBernoulli:
    def test_first_values(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(-1, 2)

    def test_against_akiyama_tanigawa(self):
        # independent triangle recurrence, frozen oracle
        oracle = bernoulli_akiyama_tanigawa(12)
        assert bernoulli(12) == oracle[12] == Fraction(-691, 2730)
        for n in range(13):
            if n != 1:
                assert bernoulli(n) == oracle[n]

    def test_odd_vanish(self):
        for k in range(1, 16):
            assert bernoulli(2 * k + 1) == 0

    def test_even_sign_alternation(self):
        for k in range(1, 16):
            assert (-1) ** (k + 1) * bernoulli(2 * k) > 0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            bernoulli(-1)


class TestHarmonic:
    def test_values(self):
        assert harmonic(0) == 0
        assert harmonic(1) == 1
        assert harmonic(4) == harmonic_direct(4) == Fraction(25, 12)

    def test_difference_property(self):
        for n in range(1, 51):
            assert harmonic(n) - harmonic(n - 1) == Fraction(1, n)


class TestBernoulliPoly:
    def test_quadratic(self):
        # B_2(x) = x^2 - x + 1/6
        assert bernoulli_poly(2, Fraction(1, 3)) == Fraction(-1, 18)

    def test_at_zero_is_bernoulli(self):
        for n in range(8):
            assert bernoulli_poly(n, Fraction(0)) == bernoulli(n)


class TestConstants:
    def test_precision_consistency_pi(self):
        a = constant("PI", PrecisionContext(50))
        b = constant("PI", PrecisionContext(100))
        with PrecisionContext(100).activate():
            assert abs(gmpy2.mpfr(a) - b) < gmpy2.mpfr(10) ** (-50)

    def test_catalan_is_beta2(self, ctx50):
        from zetaseries.specfun import dirichlet_beta

        assert constant("CATALAN", ctx50) == dirichlet_beta(2, ctx50)

    def test_catalan_vs_alternating_oracle(self, ctx50):
        g = beta_alternating(2, 40)
        with ctx50.activate():
            assert abs(constant("CATALAN", ctx50) - g) < gmpy2.mpfr(10) ** (-38)

    def test_glaisher_log_definition(self, ctx50):
        from zetaseries.specfun import hurwitz_zeta_sderiv

        d = hurwitz_zeta_sderiv(-1, Fraction(1), ctx50)
        with ctx50.activate():
            expected = gmpy2.mpfr(1) / 12 - d
            assert constant("GLAISHER_LOG", ctx50) == expected

    @pytest.mark.parametrize(
        "symbol", ["PI", "LOG2", "LOG_PI", "EULER_GAMMA", "CATALAN", "GLAISHER_LOG"]
    )
    def test_doubled_precision_stability(self, symbol):
        ctx = PrecisionContext(40)
        lo = constant(symbol, ctx)
        hi = constant(symbol, ctx.doubled())
        with ctx.doubled().activate():
            assert abs(gmpy2.mpfr(lo) - hi) < gmpy2.mpfr(10) ** (-40)

    def test_unknown_symbol(self, ctx50):
        with pytest.raises(ValueError):
            constant("TAU", ctx50)
