"""Arbitrary-precision numeric substrate.

Precision contexts, exact rationals, Bernoulli and harmonic numbers,
factorial/binomial helpers and the fundamental constants that the rest
of the package consumes.  Real arithmetic is carried by MPFR (through
gmpy2) at a binary working precision derived from the requested decimal
target; exact arithmetic uses ``fractions.Fraction``.

All operations are deterministic for a fixed context: MPFR results are
correctly rounded, so identical inputs give bit-identical outputs.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import gmpy2
from gmpy2 import mpfr

__all__ = [
    "BigRational",
    "PrecisionContext",
    "bernoulli",
    "bernoulli_poly",
    "harmonic",
    "constant",
    "CONSTANT_SYMBOLS",
]

#: Exact rational carrier used across the package.
BigRational = Fraction

Rational = Union[int, Fraction]

_LOG2_10 = math.log2(10)


def _default_guard(target_digits: int) -> int:
    # 20 guard digits plus 10% of the target, against cancellation in
    # alternating closed forms.
    return 20 + target_digits // 10


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal precision request with a derived binary working precision.

    ``target_digits`` is the number of certified decimal digits the
    caller wants; ``guard_digits`` extra digits absorb rounding and
    cancellation.  Certification is by recompute-at-higher-precision,
    not interval arithmetic.
    """

    target_digits: int
    guard_digits: int = 0  # 0 selects the default policy

    def __post_init__(self) -> None:
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits == 0:
            object.__setattr__(self, "guard_digits", _default_guard(self.target_digits))
        if self.guard_digits < 20:
            raise ValueError("guard_digits must be at least 20")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def working_precision(self) -> int:
        """Binary working precision, >= ceil(working_digits * log2(10))."""
        return math.ceil(self.working_digits * _LOG2_10)

    def doubled(self) -> "PrecisionContext":
        """Context with twice the working digits and the same target."""
        return PrecisionContext(self.target_digits, self.working_digits * 2 - self.target_digits)

    @contextmanager
    def activate(self) -> Iterator[None]:
        """Make this context's precision the thread-local MPFR precision."""
        saved = gmpy2.get_context()
        gmpy2.set_context(gmpy2.context(precision=self.working_precision))
        try:
            yield
        finally:
            gmpy2.set_context(saved)

    def eps(self) -> mpfr:
        """10^-(target+guard), the internal truncation threshold."""
        with self.activate():
            return mpfr(10) ** (-self.working_digits)

    def tolerance(self) -> mpfr:
        """10^-target_digits, the certified-accuracy threshold."""
        with self.activate():
            return mpfr(10) ** (-self.target_digits)


def to_mpfr(q: Union[int, Fraction, float, mpfr]) -> mpfr:
    """Convert a number to mpfr under the active MPFR context."""
    if isinstance(q, Fraction):
        return mpfr(gmpy2.mpq(q.numerator, q.denominator))
    return mpfr(q)


# ---------------------------------------------------------------------------
# Bernoulli and harmonic numbers (exact, memoized per process)
# ---------------------------------------------------------------------------

_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()

_harmonic_cache: list[Fraction] = [Fraction(0)]
_harmonic_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2 convention), exact.

    Computed by the recurrence sum(C(n+1, j) * B_j, j=0..n) = 0 with
    B_0 = 1; the full prefix is memoized.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n >= len(_bernoulli_cache):
        with _bernoulli_lock:
            m = len(_bernoulli_cache)
            while m <= n:
                if m > 2 and m % 2 == 1:
                    _bernoulli_cache.append(Fraction(0))
                else:
                    acc = Fraction(0)
                    for j in range(m):
                        bj = _bernoulli_cache[j]
                        if bj:
                            acc += math.comb(m + 1, j) * bj
                    _bernoulli_cache.append(-acc / (m + 1))
                m += 1
    return _bernoulli_cache[n]


def harmonic(n: int) -> Fraction:
    """Harmonic number H_n = sum(1/k, k=1..n), with H_0 = 0, exact."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n >= len(_harmonic_cache):
        with _harmonic_lock:
            m = len(_harmonic_cache)
            while m <= n:
                _harmonic_cache.append(_harmonic_cache[m - 1] + Fraction(1, m))
                m += 1
    return _harmonic_cache[n]


def bernoulli_poly(n: int, x: Rational) -> Fraction:
    """Bernoulli polynomial B_n(x) at a rational point, exact."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = Fraction(x)
    acc = Fraction(0)
    xp = Fraction(1)  # x^(n-k), built from the top down
    # B_n(x) = sum(C(n,k) B_k x^(n-k)); iterate k descending so powers grow.
    for k in range(n, -1, -1):
        bk = bernoulli(k)
        if bk:
            acc += math.comb(n, k) * bk * xp
        xp *= x
    return acc


# ---------------------------------------------------------------------------
# Fundamental constants
# ---------------------------------------------------------------------------

CONSTANT_SYMBOLS = ("PI", "LOG2", "LOG_PI", "EULER_GAMMA", "CATALAN", "GLAISHER_LOG")

_constant_cache: dict[tuple[str, int], mpfr] = {}


def constant(symbol: str, ctx: PrecisionContext) -> mpfr:
    """A fundamental constant at the context's working precision.

    PI, LOG2 and EULER_GAMMA come from MPFR's correctly rounded
    implementations; CATALAN is beta(2) through the Dirichlet beta
    route and GLAISHER_LOG is 1/12 - zeta'(-1) with the derivative
    taken through the functional-equation evaluation.
    """
    symbol = symbol.upper()
    key = (symbol, ctx.working_precision)
    hit = _constant_cache.get(key)
    if hit is not None:
        return hit
    if symbol == "PI":
        with ctx.activate():
            value = gmpy2.const_pi()
    elif symbol == "LOG2":
        with ctx.activate():
            value = gmpy2.const_log2()
    elif symbol == "LOG_PI":
        with ctx.activate():
            value = gmpy2.log(gmpy2.const_pi())
    elif symbol == "EULER_GAMMA":
        with ctx.activate():
            value = gmpy2.const_euler()
    elif symbol == "CATALAN":
        from . import specfun

        value = specfun.dirichlet_beta(2, ctx)
    elif symbol == "GLAISHER_LOG":
        from . import specfun

        d = specfun.hurwitz_zeta_sderiv(-1, Fraction(1), ctx)
        with ctx.activate():
            value = to_mpfr(Fraction(1, 12)) - d
    else:
        raise ValueError(f"unknown constant symbol: {symbol!r}")
    _constant_cache[key] = value
    return value
