"""Special functions: zeta at integer points, Hurwitz zeta and its
s-derivative, Dirichlet beta, Clausen functions, log-gamma and the
negapolygammas.

Every function has a fast primary path (Euler-Maclaurin summation or a
power series with an explicit truncation bound) plus, for the Clausen
and negapolygamma families, an independent quadrature oracle used by
the verification suite to rule out circular checks.

Orders (Clausen m >= 1, negapolygamma m >= 1) are plain validated ints;
angles for the Clausen functions are exact rational multiples of pi.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpfr

from . import quadrature
from .numcore import PrecisionContext, bernoulli, bernoulli_poly, constant, harmonic, to_mpfr
from .reference import ref_lgamma

__all__ = [
    "DomainError",
    "zeta_even",
    "zeta_int",
    "hurwitz_zeta",
    "hurwitz_zeta_sderiv",
    "dirichlet_beta",
    "log_gamma",
    "clausen",
    "clausen_oracle",
    "negapolygamma",
    "negapolygamma_oracle",
]

Real = Union[int, float, Fraction, mpfr]


class DomainError(ValueError):
    """Argument outside the supported domain of a special function."""


_cache_lock = threading.Lock()
_zeta_cache: dict[tuple[int, int], mpfr] = {}
_beta_cache: dict[tuple[int, int], mpfr] = {}


def _neg1(k: int) -> int:
    return -1 if k & 1 else 1


# ---------------------------------------------------------------------------
# Euler-Maclaurin engine for zeta(s, a) and its s-derivative
# ---------------------------------------------------------------------------


def _pochhammer_pair(s: Real, r: int) -> tuple:
    """(P, P') for P(s) = s (s+1) ... (s+r-1), exact when s is an int.

    P' is the derivative in s.  With one vanishing factor P = 0 while
    P' is the product of the remaining factors; two vanishing factors
    cannot occur for distinct offsets.
    """
    if isinstance(s, int):
        zero_at = -s if 0 <= -s < r else None
        if zero_at is None:
            p = 1
            for i in range(r):
                p *= s + i
            dlog = sum(Fraction(1, s + i) for i in range(r))
            return p, p * dlog
        p_rest = 1
        for i in range(r):
            if i != zero_at:
                p_rest *= s + i
        return 0, p_rest
    p = mpfr(1)
    dlog = mpfr(0)
    for i in range(r):
        f = s + i
        p *= f
        dlog += 1 / f
    return p, p * dlog


def _em_hurwitz(s: Real, a: Fraction, ctx: PrecisionContext, deriv: bool) -> mpfr:
    """zeta(s, a) or d/ds zeta(s, a) by Euler-Maclaurin summation.

    Valid for real s != 1; at negative integers the expansion continues
    analytically (vanishing Pochhammer factors are taken exactly).  The
    cutoff N and the Bernoulli tail order follow the fixed policy: N is
    max(2 * working_digits, 50) and the tail grows until its next term
    drops below 10^-(target+guard) relative to the accumulated sum.
    """
    s_int = s if isinstance(s, int) else None
    with ctx.activate():
        prec = ctx.working_precision
        s_m = to_mpfr(s)
        n_cut = max(2 * ctx.working_digits, 50)
        rel = mpfr(2) ** (-(prec + 8))

        acc = mpfr(0)
        monotone = (s_int is not None and s_int > 1) or (s_int is None and s_m > 1)
        for k in range(n_cut):
            x = to_mpfr(k + a)
            if deriv:
                term = -gmpy2.log(x) * x ** (-s_m)
            else:
                term = x ** (-s_m)
            acc += term
            if monotone and k > 4 and abs(term) < rel * (abs(acc) + 1):
                break

        xn = to_mpfr(n_cut + a)
        log_xn = gmpy2.log(xn)
        if deriv:
            acc += xn ** (1 - s_m) * (-log_xn / (s_m - 1) - 1 / (s_m - 1) ** 2)
            acc += -log_xn * xn ** (-s_m) / 2
        else:
            acc += xn ** (1 - s_m) / (s_m - 1)
            acc += xn ** (-s_m) / 2

        threshold = ctx.eps() * (abs(acc) + 1)
        xn_pow = xn ** (-s_m + 1)  # (N+a)^(-s-2j+1) for the current j
        inv_xn2 = 1 / (xn * xn)
        small = 0
        for j in range(1, 400):
            xn_pow *= inv_xn2
            b = bernoulli(2 * j)
            coeff = to_mpfr(Fraction(b.numerator, b.denominator * math.factorial(2 * j)))
            sv = s_int if s_int is not None else s_m
            p, dp = _pochhammer_pair(sv, 2 * j - 1)
            if deriv:
                term = coeff * (to_mpfr(dp) - to_mpfr(p) * log_xn) * xn_pow
            else:
                if p == 0:
                    break  # expansion terminates exactly
                term = coeff * to_mpfr(p) * xn_pow
            acc += term
            small = small + 1 if abs(term) < threshold else 0
            if small >= 2:
                return acc
        if not deriv and s_int is not None and s_int <= 0:
            return acc
        if small >= 1:
            return acc
        raise ArithmeticError("Euler-Maclaurin tail failed to converge")


def _validate_a(a) -> Fraction:
    a = Fraction(a)
    if not (0 < a <= 1):
        raise DomainError("Hurwitz parameter a must lie in (0, 1]")
    return a


def hurwitz_zeta(s: Real, a, ctx: PrecisionContext) -> mpfr:
    """zeta(s, a) = sum 1/(k+a)^s for real s > 1 or integer s <= 0.

    Non-positive integer s uses the exact Bernoulli-polynomial value
    zeta(-n, a) = -B_{n+1}(a) / (n+1); otherwise Euler-Maclaurin.
    """
    a = _validate_a(a)
    if isinstance(s, Fraction) and s.denominator == 1:
        s = int(s)
    if isinstance(s, int):
        if s == 1:
            raise DomainError("zeta(s, a) has a pole at s = 1")
        if s <= 0:
            n = -s
            value = -Fraction(bernoulli_poly(n + 1, a), n + 1)
            with ctx.activate():
                return to_mpfr(value)
        return _em_hurwitz(s, a, ctx, deriv=False)
    s_m = mpfr(s)
    if not s_m > 1:
        raise DomainError("non-integer s must satisfy s > 1")
    return _em_hurwitz(s_m, a, ctx, deriv=False)


def _zeta_sderiv_negint_fe(n: int, ctx: PrecisionContext) -> mpfr:
    """zeta'(-n) for n >= 1 through the differentiated functional equation.

    zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s);
    at s = -n the product rule needs zeta(n+1), zeta'(n+1), gamma and
    H_n, with sin/cos at half-integer multiples of pi taken exactly.
    """
    zv = zeta_int(n + 1, ctx)
    zd = _em_hurwitz(n + 1, Fraction(1), ctx, deriv=True)
    with ctx.activate():
        pi = constant("PI", ctx)
        log_2pi = constant("LOG2", ctx) + constant("LOG_PI", ctx)
        gamma = constant("EULER_GAMMA", ctx)
        sv = {1: -1, 3: 1}.get(n % 4, 0)
        cv = {0: 1, 2: -1}.get(n % 4, 0)
        fn = math.factorial(n)
        total = mpfr(0)
        if sv:
            psi_n1 = to_mpfr(harmonic(n)) - gamma
            total += sv * fn * (log_2pi - psi_n1) * zv
            total -= sv * fn * zd
        if cv:
            total += cv * fn * (pi / 2) * zv
        return total * mpfr(2) ** (-n) * pi ** (-n - 1)


def hurwitz_zeta_sderiv(s: Real, a, ctx: PrecisionContext) -> mpfr:
    """d/ds zeta(s, a) for real s > 1 or integer s <= 0.

    For s > 1 (and for non-positive s with a != 1) the term-wise
    differentiated Euler-Maclaurin expansion is used directly; for
    integer s <= -1 with a = 1 the functional-equation route supplies
    zeta'(-n).
    """
    a = _validate_a(a)
    if isinstance(s, Fraction) and s.denominator == 1:
        s = int(s)
    if isinstance(s, int):
        if s == 1:
            raise DomainError("zeta(s, a) has a pole at s = 1")
        if s <= -1 and a == 1:
            return _zeta_sderiv_negint_fe(-s, ctx)
        return _em_hurwitz(s, a, ctx, deriv=True)
    s_m = mpfr(s)
    if not s_m > 1:
        raise DomainError("non-integer s must satisfy s > 1")
    return _em_hurwitz(s_m, a, ctx, deriv=True)


# ---------------------------------------------------------------------------
# Riemann zeta at integer points, Dirichlet beta
# ---------------------------------------------------------------------------


def zeta_even(k: int, ctx: PrecisionContext) -> mpfr:
    """zeta(2k) from the Euler formula with exact Bernoulli numbers.

    (-1)^(k+1) B_{2k} (2 pi)^(2k) / (2 (2k)!); k = 0 gives zeta(0) = -1/2.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    with ctx.activate():
        b = bernoulli(2 * k)
        coeff = Fraction(_neg1(k + 1) * b.numerator, b.denominator * 2 * math.factorial(2 * k))
        two_pi = 2 * constant("PI", ctx)
        return to_mpfr(coeff) * two_pi ** (2 * k)


def zeta_int(s: int, ctx: PrecisionContext) -> mpfr:
    """zeta(s) for integer s >= 2, via zeta(s, 1); memoized per precision."""
    if s < 2:
        raise DomainError("zeta_int requires s >= 2")
    key = (s, ctx.working_precision)
    hit = _zeta_cache.get(key)
    if hit is None:
        hit = _em_hurwitz(s, Fraction(1), ctx, deriv=False)
        _zeta_cache[key] = hit
    return hit


def _beta_one(ctx: PrecisionContext) -> mpfr:
    """beta(1) as the s -> 1 limit of the Hurwitz-difference formula.

    The pole terms of zeta(s, 1/4) and zeta(s, 3/4) cancel; what is left
    of the Euler-Maclaurin expansions is summed directly.
    """
    with ctx.activate():
        n_cut = max(2 * ctx.working_digits, 50)
        q1, q3 = Fraction(1, 4), Fraction(3, 4)
        acc = mpfr(0)
        for k in range(n_cut):
            acc += to_mpfr(Fraction(1, 2) / ((k + q1) * (k + q3)))
        x1 = to_mpfr(n_cut + q1)
        x3 = to_mpfr(n_cut + q3)
        acc += gmpy2.log(x3 / x1)
        acc += (1 / x1 - 1 / x3) / 2
        threshold = ctx.eps()
        p1 = mpfr(1)
        p3 = mpfr(1)
        i1 = 1 / (x1 * x1)
        i3 = 1 / (x3 * x3)
        for j in range(1, 400):
            p1 *= i1
            p3 *= i3
            b = bernoulli(2 * j)
            term = to_mpfr(Fraction(b.numerator, b.denominator * 2 * j)) * (p1 - p3)
            acc += term
            if abs(term) < threshold:
                break
        return acc / 4


def dirichlet_beta(s: int, ctx: PrecisionContext) -> mpfr:
    """beta(s) = 4^-s (zeta(s, 1/4) - zeta(s, 3/4)) for integer s >= 1."""
    if s < 1:
        raise DomainError("dirichlet_beta requires s >= 1")
    key = (s, ctx.working_precision)
    hit = _beta_cache.get(key)
    if hit is not None:
        return hit
    if s == 1:
        value = _beta_one(ctx)
    else:
        z1 = hurwitz_zeta(s, Fraction(1, 4), ctx)
        z3 = hurwitz_zeta(s, Fraction(3, 4), ctx)
        with ctx.activate():
            value = (z1 - z3) / mpfr(4) ** s
    _beta_cache[key] = value
    return value


# ---------------------------------------------------------------------------
# log Gamma and negapolygammas on (0, 1)
# ---------------------------------------------------------------------------


def _log_gamma_series(x: mpfr, ctx: PrecisionContext) -> mpfr:
    # log Gamma(x) = -log x - gamma x + sum_{k>=2} (-1)^k zeta(k) x^k / k
    gamma = constant("EULER_GAMMA", ctx)
    zeta2 = zeta_int(2, ctx)
    eps = ctx.eps()
    acc = -gmpy2.log(x) - gamma * x
    xp = x
    for k in range(2, 100000):
        xp *= x
        acc += _neg1(k) * zeta_int(k, ctx) * xp / k
        if zeta2 * xp * x / (k + 1) < eps:
            break
    return acc


def log_gamma(z, ctx: PrecisionContext) -> mpfr:
    """log Gamma(z) for rational z in (0, 1) by its Taylor series."""
    z = Fraction(z)
    if not (0 < z < 1):
        raise DomainError("log_gamma requires 0 < z < 1")
    with ctx.activate():
        return _log_gamma_series(to_mpfr(z), ctx)


def _negapolygamma_series(m: int, x: mpfr, ctx: PrecisionContext) -> mpfr:
    # psi^(-m)(x) = x^(m-1) (S - gamma x / m! - (log x - H_{m-1}) / (m-1)!)
    # with S = sum_{k>=2} (-1)^k zeta(k) x^k / (k (k+1) ... (k+m-1)).
    gamma = constant("EULER_GAMMA", ctx)
    zeta2 = zeta_int(2, ctx)
    eps = ctx.eps()
    s_acc = mpfr(0)
    xp = x
    den = math.prod(range(2, 2 + m))  # 2 * 3 * ... * (m+1)
    for k in range(2, 100000):
        xp *= x
        s_acc += _neg1(k) * zeta_int(k, ctx) * xp / den
        den = den * (k + m) // k
        if zeta2 * xp * x / mpfr((k + 1) ** m) < eps:
            break
    s_acc -= gamma * x / math.factorial(m)
    s_acc -= (gmpy2.log(x) - to_mpfr(harmonic(m - 1))) / math.factorial(m - 1)
    return x ** (m - 1) * s_acc


def negapolygamma(m: int, z, ctx: PrecisionContext) -> mpfr:
    """psi^(-m)(z), the m-fold antiderivative family of log Gamma.

    psi^(-1) = log Gamma; higher orders come from the log-gamma Taylor
    series integrated term by term, normalized so that the order m is
    the public psi order.
    """
    if m < 1:
        raise DomainError("negapolygamma requires m >= 1")
    z = Fraction(z)
    if not (0 < z < 1):
        raise DomainError("negapolygamma requires 0 < z < 1")
    if m == 1:
        return log_gamma(z, ctx)
    with ctx.activate():
        return _negapolygamma_series(m, to_mpfr(z), ctx)


def negapolygamma_real(m: int, x: mpfr, ctx: PrecisionContext) -> mpfr:
    """Internal real-argument variant used by quadrature integrands."""
    with ctx.activate():
        x = mpfr(x)
        if not (0 < x < 1):
            raise DomainError("negapolygamma requires 0 < x < 1")
        if m == 1:
            return _log_gamma_series(x, ctx)
        return _negapolygamma_series(m, x, ctx)


def negapolygamma_oracle(m: int, z, oracle_digits: int = 12) -> mpfr:
    """Independent value of psi^(-m)(z), m >= 2, by tanh-sinh quadrature.

    Integrates the repeated-antiderivative kernel
    (z-t)^(m-2) log Gamma(t) / (m-2)! over (0, z); the integrand's
    log-gamma factor is the Stirling-based reference implementation, so
    this path shares nothing with the series route.
    """
    if m < 2:
        raise DomainError("negapolygamma_oracle requires m >= 2")
    if oracle_digits > 15:
        raise DomainError("oracle precision is capped at 15 digits")
    z = Fraction(z)
    if not (0 < z < 1):
        raise DomainError("negapolygamma_oracle requires 0 < z < 1")
    saved = gmpy2.get_context()
    gmpy2.set_context(gmpy2.context(precision=int((oracle_digits + 12) * 3.33) + 10))
    try:
        zm = to_mpfr(z)
        e = m - 2

        def integrand(t: mpfr) -> mpfr:
            w = ref_lgamma(t)
            return w if e == 0 else (zm - t) ** e * w

        val = quadrature.integrate(integrand, 0, zm, oracle_digits + 2)
        return val / math.factorial(e)
    finally:
        gmpy2.set_context(saved)


# ---------------------------------------------------------------------------
# Clausen functions
# ---------------------------------------------------------------------------

#: Largest |theta| / (2 pi) the general power-series path accepts.
CLAUSEN_RATIO_GUARD = Fraction(3, 5)


def _clausen_series(m: int, theta: mpfr, ctx: PrecisionContext) -> mpfr:
    """Cl_m(theta) for 0 < theta <= 1.2 pi by the power-series routes."""
    if m == 1:
        return -gmpy2.log(2 * gmpy2.sin(theta / 2))
    eps = ctx.eps()
    zeta2 = zeta_int(2, ctx)
    two_pi = 2 * constant("PI", ctx)
    r = (theta / two_pi) ** 2
    if m == 2:
        acc = 1 - gmpy2.log(theta)
        rp = mpfr(1)
        for n in range(1, 100000):
            rp *= r
            acc += zeta_even(n, ctx) * rp / (n * (2 * n + 1))
            if zeta2 * rp * r / ((n + 1) * (2 * n + 3)) < eps:
                break
        return theta * acc
    sgn = _neg1((m - 1) // 2)
    acc = mpfr(0)
    for k in range(1, (m - 1) // 2 + 1):
        acc += (
            _neg1(k)
            * zeta_int(2 * k + 1, ctx)
            * theta ** (m - 2 * k - 1)
            / math.factorial(m - 2 * k - 1)
        )
    theta_m1 = theta ** (m - 1)
    acc += theta_m1 * (to_mpfr(harmonic(m - 1)) - gmpy2.log(theta)) / math.factorial(m - 1)
    rp = mpfr(1)
    den = math.prod(range(2, m + 2))  # 2 * 3 * ... * (m+1)
    for n in range(1, 100000):
        rp *= r
        acc += 2 * zeta_even(n, ctx) * theta_m1 * rp / den
        den = den * (2 * n + m) * (2 * n + m + 1) // ((2 * n) * (2 * n + 1))
        if 2 * zeta2 * theta_m1 * rp * r / mpfr((2 * n + 2) ** m) < eps:
            break
    return sgn * acc


def clausen(m: int, theta, ctx: PrecisionContext) -> mpfr:
    """Cl_m(t pi) for an exact rational multiple t of pi, |t| < 2.

    Exact special values at theta in {0, pi/2, pi} are dispatched
    directly; other angles go through the power-series path, which
    requires |theta| / (2 pi) <= 0.6.
    """
    if m < 1:
        raise DomainError("Clausen order must be >= 1")
    t = Fraction(theta)
    if abs(t) >= 2:
        raise DomainError("Clausen angle must satisfy |theta| < 2 pi")
    if t < 0:
        v = clausen(m, -t, ctx)
        return -v if m % 2 == 0 else v
    with ctx.activate():
        if t == 0:
            if m == 1:
                raise DomainError("Cl_1 diverges at theta = 0")
            return mpfr(0) if m % 2 == 0 else zeta_int(m, ctx)
        if t == 1:  # theta = pi
            if m == 1:
                return -constant("LOG2", ctx)
            if m % 2 == 0:
                return mpfr(0)
            q = (m - 1) // 2
            return -to_mpfr(Fraction(4**q - 1, 4**q)) * zeta_int(m, ctx)
        if t == Fraction(1, 2):  # theta = pi/2
            if m == 1:
                return -constant("LOG2", ctx) / 2
            if m % 2 == 0:
                return dirichlet_beta(m, ctx)
            q = (m - 1) // 2
            return -to_mpfr(Fraction(4**q - 1, 2 ** (4 * q + 1))) * zeta_int(m, ctx)
        if t / 2 > CLAUSEN_RATIO_GUARD:
            raise DomainError(
                f"theta = {t} pi is outside the series guard |theta|/(2 pi) <= 0.6"
            )
        theta_m = to_mpfr(t) * constant("PI", ctx)
        return _clausen_series(m, theta_m, ctx)


def clausen_real(m: int, theta: mpfr, ctx: PrecisionContext) -> mpfr:
    """Internal real-angle variant (series path only, no special values).

    Accepts any theta with |theta| <= 1.2 pi; used by quadrature
    integrands and the finite-difference derivative checks.
    """
    if m < 1:
        raise DomainError("Clausen order must be >= 1")
    with ctx.activate():
        theta = mpfr(theta)
        if theta < 0:
            v = clausen_real(m, -theta, ctx)
            return -v if m % 2 == 0 else v
        if theta == 0:
            if m == 1:
                raise DomainError("Cl_1 diverges at theta = 0")
            return mpfr(0) if m % 2 == 0 else zeta_int(m, ctx)
        if theta / constant("PI", ctx) > 2 * CLAUSEN_RATIO_GUARD:
            raise DomainError("theta outside the series guard")
        return _clausen_series(m, theta, ctx)


def clausen_oracle(m: int, theta, oracle_digits: int = 12) -> mpfr:
    """Independent value of Cl_m(theta) for real theta in (0, 2 pi).

    Cl_1 is the elementary closed form; Cl_2 is tanh-sinh quadrature of
    its log-sine integral; higher orders use the repeated-integration
    kernel: Cl_m = (odd-zeta polynomial) + integral of
    (theta-t)^(m-3) Cl_2(t) / (m-3)!, with the inner Cl_2 values again
    supplied by quadrature.  This collapses the order recursion into a
    single doubly nested quadrature of elementary integrands.
    """
    if m < 1:
        raise DomainError("Clausen order must be >= 1")
    if oracle_digits > 15:
        raise DomainError("oracle precision is capped at 15 digits")
    saved = gmpy2.get_context()
    gmpy2.set_context(gmpy2.context(precision=int((oracle_digits + 12) * 3.33) + 10))
    try:
        theta = mpfr(theta)
        pi = gmpy2.const_pi()
        if not (0 < theta < 2 * pi):
            raise DomainError("clausen_oracle requires 0 < theta < 2 pi")

        def cl1(x: mpfr) -> mpfr:
            return -gmpy2.log(2 * gmpy2.sin(x / 2))

        if m == 1:
            return cl1(theta)
        if m == 2:
            return quadrature.integrate(cl1, 0, theta, oracle_digits + 2)

        octx = PrecisionContext(oracle_digits, 20)
        sgn = _neg1((m - 1) // 2)
        acc = mpfr(0)
        for k in range(1, (m - 1) // 2 + 1):
            acc += (
                _neg1(k)
                * zeta_int(2 * k + 1, octx)
                * theta ** (m - 2 * k - 1)
                / math.factorial(m - 2 * k - 1)
            )

        inner_digits = oracle_digits + 4
        e = m - 3

        def cl2(t: mpfr) -> mpfr:
            return quadrature.integrate(cl1, 0, t, inner_digits, min_level=4)

        def kernel(t: mpfr) -> mpfr:
            w = cl2(t)
            return w if e == 0 else (theta - t) ** e * w

        integral = quadrature.integrate(kernel, 0, theta, oracle_digits + 2, min_level=4)
        return sgn * (acc + integral / math.factorial(e))
    finally:
        gmpy2.set_context(saved)
