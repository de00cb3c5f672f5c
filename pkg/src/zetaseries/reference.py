"""Independent reference evaluations used by oracle paths.

These deliberately avoid the Taylor-series routes used by the primary
implementations: log-gamma and digamma use upward recurrence plus the
Stirling asymptotic series, and alternating sums use Chebyshev-based
series acceleration.  They are meant for modest precision (oracles run
at <= 15 digits) and exist to break circularity in verification.
"""

from __future__ import annotations

from typing import Callable

import gmpy2
from gmpy2 import mpfr

from .numcore import bernoulli

__all__ = ["ref_lgamma", "ref_digamma", "alternating_sum"]


def _stirling_threshold() -> int:
    # Larger shift for higher working precision keeps the asymptotic
    # series inside its useful range.
    prec = gmpy2.get_context().precision
    return max(10, prec // 6)


def ref_lgamma(x: mpfr) -> mpfr:
    """log Gamma(x) for real x > 0 by recurrence + Stirling series."""
    x = mpfr(x)
    if x <= 0:
        raise ValueError("ref_lgamma requires x > 0")
    n = _stirling_threshold()
    shift = mpfr(0)
    y = x
    while y < n:
        shift += gmpy2.log(y)
        y += 1
    half_log_2pi = gmpy2.log(2 * gmpy2.const_pi()) / 2
    acc = (y - mpfr(1) / 2) * gmpy2.log(y) - y + half_log_2pi
    ypow = y
    y2 = y * y
    eps = mpfr(2) ** (-gmpy2.get_context().precision)
    for j in range(1, 200):
        b = bernoulli(2 * j)
        term = mpfr(b.numerator) / (b.denominator * (2 * j) * (2 * j - 1)) / ypow
        acc += term
        if abs(term) < eps * abs(acc):
            break
        ypow *= y2
    return acc - shift


def ref_digamma(x: mpfr) -> mpfr:
    """psi(x) for real x > 0 by recurrence + Stirling series."""
    x = mpfr(x)
    if x <= 0:
        raise ValueError("ref_digamma requires x > 0")
    n = _stirling_threshold()
    shift = mpfr(0)
    y = x
    while y < n:
        shift += 1 / y
        y += 1
    acc = gmpy2.log(y) - 1 / (2 * y)
    y2 = y * y
    ypow = y2
    eps = mpfr(2) ** (-gmpy2.get_context().precision)
    for j in range(1, 200):
        b = bernoulli(2 * j)
        term = mpfr(b.numerator) / (b.denominator * (2 * j)) / ypow
        acc -= term
        if abs(term) < eps * max(abs(acc), mpfr(1)):
            break
        ypow *= y2
    return acc - shift


def alternating_sum(term: Callable[[int], mpfr], digits: int) -> mpfr:
    """Accelerated sum of sum((-1)^k a_k, k>=0) for totally monotone a_k.

    Chebyshev-polynomial acceleration: roughly 1.31 * digits terms give
    ``digits`` correct decimals.  ``term(k)`` must return a_k >= 0.
    """
    saved = gmpy2.get_context()
    prec = max(saved.precision, int((digits + 8) * 3.33) + 10)
    gmpy2.set_context(gmpy2.context(precision=prec))
    try:
        n = int(1.31 * digits) + 4
        # d = cosh(n * acosh(3)) built from the exact integer recurrence
        d = (mpfr(3 + 2 * gmpy2.sqrt(mpfr(2)))) ** n
        d = (d + 1 / d) / 2
        b = mpfr(-1)
        c = -d
        s = mpfr(0)
        for k in range(n):
            c = b - c
            s += c * term(k)
            b *= mpfr((k + n) * (k - n)) / ((k + mpfr(1) / 2) * (k + 1))
        return s / d
    finally:
        gmpy2.set_context(saved)
