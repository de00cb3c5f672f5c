"""Shared fixtures and independent oracle implementations.

The oracles here intentionally use different algorithms from the
package: brute-force partial sums with elementary tail bounds, the
binomial-sum route to zeta(3), Chebyshev acceleration for alternating
series, Akiyama-Tanigawa for Bernoulli numbers and direct quadrature of
the Gamma integral.  Expected values in the tests are computed with
these, never with the code under test.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

from zetaseries.numcore import PrecisionContext
from zetaseries.quadrature import integrate
from zetaseries.reference import alternating_sum


@pytest.fixture(scope="session")
def ctx30() -> PrecisionContext:
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def ctx50() -> PrecisionContext:
    return PrecisionContext(50)


def work(digits: int):
    """gmpy2 context manager at roughly `digits` decimal digits."""
    return gmpy2.context(precision=int(digits * 3.33) + 16)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def bernoulli_akiyama_tanigawa(n: int) -> list[Fraction]:
    """B_0..B_n by the Akiyama-Tanigawa triangle (B_1 = +1/2 convention);
    converted to the B_1 = -1/2 convention on return."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return out


def zeta3_binomial_sum(digits: int) -> mpfr:
    """zeta(3) = (5/2) sum (-1)^(n-1) / (n^3 C(2n, n)), summed until the
    term drops below the requested accuracy (terms shrink ~4x each)."""
    with work(digits + 5):
        acc = mpfr(0)
        eps = mpfr(10) ** (-(digits + 3))
        for n in range(1, 10000):
            term = mpfr((-1) ** (n - 1)) / (n**3 * math.comb(2 * n, n))
            acc += term
            if abs(term) < eps:
                break
        return mpfr(5) * acc / 2


def zeta_brute(s: int, digits: int, terms: int = 200000) -> mpfr:
    """Direct partial sum plus integral tail with midpoint correction:
    sum_{n>N} n^-s ~= N^(1-s)/(s-1) - N^-s/2, error below s/N^{s+1}."""
    with work(digits + 5):
        acc = mpfr(0)
        for n in range(1, terms + 1):
            acc += mpfr(n) ** (-s)
        nn = mpfr(terms)
        return acc + nn ** (1 - s) / (s - 1) - nn ** (-s) / 2


def hurwitz_brute(s: int, a: Fraction, digits: int, terms: int = 200000) -> mpfr:
    """Same construction for sum 1/(k+a)^s from k = 0."""
    with work(digits + 5):
        acc = mpfr(0)
        for k in range(terms):
            acc += (k + mpfr(a.numerator) / a.denominator) ** (-s)
        nn = terms + mpfr(a.numerator) / a.denominator
        return acc + nn ** (1 - s) / (s - 1) - nn ** (-s) / 2


def log_weighted_zeta_deriv(s: int, digits: int, terms: int = 4000) -> mpfr:
    """-zeta'(s) = sum log(n)/n^s via partial sum + integral tail.

    Tail: int_N^inf log(x) x^-s dx = N^(1-s)(log N/(s-1) + 1/(s-1)^2)
    with a -f(N)/2 midpoint correction.
    """
    with work(digits + 5):
        acc = mpfr(0)
        for n in range(2, terms + 1):
            acc += gmpy2.log(n) / mpfr(n) ** s
        nn = mpfr(terms)
        tail = nn ** (1 - s) * (gmpy2.log(nn) / (s - 1) + 1 / mpfr(s - 1) ** 2)
        return acc + tail - gmpy2.log(nn) * nn ** (-s) / 2


def beta_alternating(s: int, digits: int) -> mpfr:
    """Dirichlet beta by accelerated alternating summation."""
    with work(digits + 5):
        return alternating_sum(lambda k: mpfr(2 * k + 1) ** (-s), digits)


def gamma_quadrature(z: Fraction, digits: int = 13) -> mpfr:
    """Gamma(z) by tanh-sinh quadrature of the Euler integral.

    Split at t = 1: the head has the algebraic t^(z-1) endpoint
    singularity, the tail maps to (0, 1) via t = 1 - log u.
    """
    with work(digits + 8):
        e = mpfr(z.numerator) / z.denominator - 1

        def head(t: mpfr) -> mpfr:
            return t**e * gmpy2.exp(-t)

        def tail(u: mpfr) -> mpfr:
            return (1 - gmpy2.log(u)) ** e

        return integrate(head, 0, 1, digits) + integrate(tail, 0, 1, digits) / gmpy2.exp(mpfr(1))


def harmonic_direct(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))
