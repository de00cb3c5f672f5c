"""Integral identities: closed forms and quadrature integrands.

Six checks are supported.  T1 integrates x^p cot x up to pi z, T2
integrates x^p Cl_m(x) up to 2 pi z, T3 and T4 integrate x^p times the
digamma function and the negapolygammas up to z, and D1/D2 are the
corresponding double integrals with an (x-t)^m kernel.  Each check
compares a tanh-sinh quadrature of the integrand against the exact
closed form; the double integrals use nested quadrature.

Quadrature integrands deliberately avoid the closed-form route: cot is
elementary, the digamma factor is the Stirling-based reference
implementation, and Clausen/negapolygamma factors use the series paths
whose own correctness is established by independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from . import quadrature
from .closedform import Atom, ClosedForm
from .numcore import PrecisionContext, to_mpfr
from .reference import ref_digamma
from .specfun import DomainError, clausen_real, negapolygamma_real

__all__ = ["THEOREM_IDS", "IntegralCheck", "integral_rhs", "integral_lhs_quadrature"]

THEOREM_IDS = ("T1", "T2", "T3", "T4", "D1", "D2")


@dataclass(frozen=True)
class IntegralCheck:
    """One integral identity instance at quadrature accuracy."""

    theorem_id: str
    p: int
    m: int
    z: Fraction
    quadrature_digits: int = 12

    def __post_init__(self) -> None:
        if self.theorem_id not in THEOREM_IDS:
            raise ValueError(f"unknown theorem id {self.theorem_id!r}")
        if self.quadrature_digits > 15:
            raise ValueError("quadrature precision is capped at 15 digits")
        z = Fraction(self.z)
        if not (0 < z < 1):
            raise DomainError("z must lie in (0, 1)")
        if self.theorem_id in ("T1", "T3") and self.p < 1:
            raise DomainError(f"{self.theorem_id} needs p >= 1")
        if self.theorem_id in ("T2", "T4") and (self.p < 0 or self.m < 1):
            raise DomainError(f"{self.theorem_id} needs p >= 0 and m >= 1")
        if self.theorem_id in ("D1", "D2") and (self.p < 0 or self.m < 0):
            raise DomainError(f"{self.theorem_id} needs p >= 0 and m >= 0")
        if self.theorem_id in ("T1", "T2", "D1") and 2 * z > Fraction(6, 5):
            raise DomainError("Clausen angle guard requires z <= 0.6")


def _neg1(k: int) -> int:
    return -1 if k & 1 else 1


def _even(x: int) -> bool:
    return x % 2 == 0


def _fact(n: int) -> int:
    return math.factorial(n)


# ---------------------------------------------------------------------------
# Closed-form sides
# ---------------------------------------------------------------------------


def _t1_rhs(p: int, z: Fraction) -> ClosedForm:
    inv2z = 1 / (2 * z)
    terms = []
    for k in range(0, p + 1):
        coeff = Fraction(_fact(p) * _neg1((k + 3) // 2), _fact(p - k)) * z**p * inv2z**k
        terms.append((coeff, [(Atom.clausen(k + 1, 2 * z), 1), (Atom.pi(), p - k)]))
    if _even(p):
        terms.append((Fraction(_fact(p) * _neg1(p // 2), 2**p), [(Atom.zeta(p + 1), 1)]))
    return ClosedForm.from_terms(terms)


def _t2_rhs(m: int, p: int, z: Fraction) -> ClosedForm:
    terms = []
    sm = _neg1(m // 2)
    for k in range(m + 1, m + p + 2):
        e = p + m + 1 - k
        coeff = -Fraction(_fact(p) * sm * _neg1(k // 2), _fact(e)) * (2 * z) ** e
        terms.append((coeff, [(Atom.clausen(k, 2 * z), 1), (Atom.pi(), e)]))
    if _even(p + m):
        terms.append((sm * _fact(p) * _neg1((p + m) // 2), [(Atom.zeta(p + m + 1), 1)]))
    return ClosedForm.from_terms(terms)


def _t3_rhs(p: int, z: Fraction) -> ClosedForm:
    terms = []
    for k in range(0, p + 1):
        coeff = Fraction(_fact(p) * _neg1(k), _fact(p - k)) * z ** (p - k)
        terms.append((coeff, [(Atom.negapolygamma(k + 1, z), 1)]))
    return ClosedForm.from_terms(terms)


def _t4_rhs(m: int, p: int, z: Fraction) -> ClosedForm:
    terms = []
    for k in range(0, p + 1):
        coeff = Fraction(_fact(p) * _neg1(k), _fact(p - k)) * z ** (p - k)
        terms.append((coeff, [(Atom.negapolygamma(k + m + 1, z), 1)]))
    return ClosedForm.from_terms(terms)


def _d1_rhs(m: int, p: int, z: Fraction) -> ClosedForm:
    inv2z = 1 / (2 * z)
    pref = p + m + 2
    terms = []
    for k in range(m + 3, p + m + 4):
        coeff = (
            pref
            * Fraction(2 * _neg1(m) * _fact(p) * _fact(m) * _neg1(k // 2), _fact(p + m + 3 - k))
            * z ** (m + p + 3)
            * inv2z**k
        )
        terms.append((coeff, [(Atom.clausen(k, 2 * z), 1), (Atom.pi(), m + p + 3 - k)]))
    if _even(p + m):
        coeff = pref * Fraction(
            _fact(p) * _neg1((p + m) // 2) * _neg1(m) * _fact(m), 2 ** (m + p + 2)
        )
        terms.append((coeff, [(Atom.zeta(p + m + 3), 1)]))
    cb = Fraction(-_neg1((m + 1) // 2) * _fact(m), 2 ** (m + 1)) * z ** (p + 1)
    terms.append((cb, [(Atom.clausen(m + 2, 2 * z), 1), (Atom.pi(), p + 1)]))
    for k in range(1, (m + 1) // 2 + 1):
        coeff = Fraction(
            2 * k * _neg1(k + 1) * _fact(m), 4**k * _fact(m + 1 - 2 * k) * (p + m + 2 - 2 * k)
        ) * z ** (p + m + 2 - 2 * k)
        terms.append((coeff, [(Atom.zeta(2 * k + 1), 1), (Atom.pi(), p + m + 2 - 2 * k)]))
    return ClosedForm.from_terms(terms)


def _d2_rhs(m: int, p: int, z: Fraction) -> ClosedForm:
    terms = [(Fraction(_fact(m)) * z ** (p + 1), [(Atom.negapolygamma(m + 2, z), 1)])]
    for k in range(0, p + 1):
        coeff = -_fact(m) * (m + p + 2) * Fraction(_fact(p) * _neg1(k), _fact(p - k)) * z ** (p - k)
        terms.append((coeff, [(Atom.negapolygamma(k + m + 3, z), 1)]))
    return ClosedForm.from_terms(terms)


def integral_rhs(check: IntegralCheck) -> ClosedForm:
    """The exact closed-form side of the integral identity."""
    z = Fraction(check.z)
    if check.theorem_id == "T1":
        return _t1_rhs(check.p, z)
    if check.theorem_id == "T2":
        return _t2_rhs(check.m, check.p, z)
    if check.theorem_id == "T3":
        return _t3_rhs(check.p, z)
    if check.theorem_id == "T4":
        return _t4_rhs(check.m, check.p, z)
    if check.theorem_id == "D1":
        return _d1_rhs(check.m, check.p, z)
    return _d2_rhs(check.m, check.p, z)


# ---------------------------------------------------------------------------
# Quadrature sides
# ---------------------------------------------------------------------------


def integral_lhs_quadrature(check: IntegralCheck) -> mpfr:
    """Tanh-sinh evaluation of the integral side (nested for D1/D2)."""
    digits = check.quadrature_digits
    prec = int((digits + 12) * 3.33) + 10
    saved = gmpy2.get_context()
    gmpy2.set_context(gmpy2.context(precision=prec))
    try:
        z = to_mpfr(Fraction(check.z))
        p, m = check.p, check.m
        pi = gmpy2.const_pi()
        qctx = PrecisionContext(digits + 6, 20)
        if check.theorem_id == "T1":

            def f(x: mpfr) -> mpfr:
                s, c = gmpy2.sin_cos(x)
                return x**p * c / s

            return quadrature.integrate(f, 0, pi * z, digits)
        if check.theorem_id == "T2":

            def f(x: mpfr) -> mpfr:
                return x**p * clausen_real(m, x, qctx)

            return quadrature.integrate(f, 0, 2 * pi * z, digits)
        if check.theorem_id == "T3":

            def f(x: mpfr) -> mpfr:
                return x**p * ref_digamma(x)

            return quadrature.integrate(f, 0, z, digits)
        if check.theorem_id == "T4":

            def f(x: mpfr) -> mpfr:
                return x**p * negapolygamma_real(m, x, qctx)

            return quadrature.integrate(f, 0, z, digits)
        if check.theorem_id == "D1":

            def inner_integrand(t: mpfr) -> mpfr:
                s, c = gmpy2.sin_cos(t)
                return t * c / s

            def outer(x: mpfr) -> mpfr:
                def g(t: mpfr) -> mpfr:
                    w = inner_integrand(t)
                    return w if m == 0 else (x - t) ** m * w

                return x**p * quadrature.integrate(g, 0, x, digits + 2, min_level=4)

            return quadrature.integrate(outer, 0, pi * z, digits, min_level=4)

        def outer(x: mpfr) -> mpfr:
            def g(t: mpfr) -> mpfr:
                w = t * ref_digamma(t)
                return w if m == 0 else (x - t) ** m * w

            return x**p * quadrature.integrate(g, 0, x, digits + 2, min_level=4)

        return quadrature.integrate(outer, 0, z, digits, min_level=4)
    finally:
        gmpy2.set_context(saved)
