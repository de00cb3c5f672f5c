"""Identity catalog: series left-hand sides and their exact closed forms.

Eight families of rational zeta series are supported.  A and D are the
plain one-factor-denominator series (even-zeta and odd-zeta numerators),
B/C and E/F carry products of consecutive linear factors, and X1/X2 are
the alternating (-1)^k zeta(k) forms from which the odd-zeta families
split off.  For each family and parameter choice (m, p, z) the catalog
produces a SeriesSpec describing the sum and a ClosedForm for the exact
right-hand side; z = 1/2 and z = 1/4 select the specialized constants
(odd zeta values, Dirichlet beta, log-gamma antiderivatives at 1/2 and
1/4), other z the general form with Clausen/negapolygamma atoms.

Where the published closed forms admit two readings, both are built and
tagged: ``corrected`` is the reading validated by re-deriving the
identity chain, ``as_printed`` the literal transcription, and, for the
general-z F family, ``alt_scaled`` an extra diagnostic variant that the
verifier adjudicates.  Coefficients are exact rationals throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpfr

from .closedform import Atom, ClosedForm, log_term
from .numcore import PrecisionContext, harmonic, to_mpfr
from .specfun import DomainError, zeta_even, zeta_int

__all__ = [
    "FAMILIES",
    "NUMERATORS",
    "READINGS",
    "SeriesSpec",
    "IdentityInstance",
    "lhs_sum",
    "lhs_spec",
    "rhs_closed_form",
    "general_rhs",
    "specialized_rhs",
    "make_instance",
    "reading_variants",
    "catalog_enumerate",
    "instance_to_json",
    "instance_from_json",
    "frac_from_str",
]

FAMILIES = ("A", "B", "C", "D", "E", "F", "X1", "X2")
NUMERATORS = ("ZETA_EVEN", "ZETA_ODD", "ALT_ZETA")
READINGS = ("corrected", "as_printed", "alt_scaled")

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

#: General-z instances keep the geometric ratio at or below this bound.
RATIO_GUARD = Fraction(3, 5)
#: ... and their denominators small, so Clausen angles stay exact.
MAX_Z_DENOMINATOR = 64


def frac_from_str(s) -> Fraction:
    """Parse an exact rational given as 'p/q' (decimals are rejected)."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    text = str(s).strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"z must be an exact rational 'p/q', got {s!r}")
    return Fraction(text)


# ---------------------------------------------------------------------------
# Series specifications and certified summation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesSpec:
    """Machine description of one rational zeta series.

    The summand at index n is

        leading_coefficient * N(n) * ratio^e(n) / prod(a*n + b)

    with N and e fixed by the numerator kind: zeta(2n) and 2n for
    ZETA_EVEN, zeta(2n+1) and 2n for ZETA_ODD, (-1)^n zeta(n) and n for
    ALT_ZETA (whose index runs from 2).
    """

    numerator: str
    start_index: int
    denominator_factors: tuple[tuple[int, int], ...]
    ratio: Fraction
    leading_coefficient: Fraction

    def __post_init__(self) -> None:
        if self.numerator not in NUMERATORS:
            raise ValueError(f"unknown numerator kind {self.numerator!r}")
        if not (0 < self.ratio < 1):
            raise ValueError("ratio must lie in (0, 1)")
        if self.leading_coefficient == 0:
            raise ValueError("leading coefficient must be nonzero")
        if self.numerator == "ALT_ZETA" and self.start_index < 2:
            raise ValueError("ALT_ZETA series start at index 2")
        for a, b in self.denominator_factors:
            if a < 0:
                raise ValueError("denominator factors need a >= 0")
            if a * self.start_index + b <= 0:
                raise ValueError(
                    f"denominator factor {a}*n+{b} is not positive from n = {self.start_index}"
                )

    def denominator_at(self, n: int) -> int:
        d = 1
        for a, b in self.denominator_factors:
            d *= a * n + b
        return d


def lhs_sum(spec: SeriesSpec, ctx: PrecisionContext) -> mpfr:
    """Direct summation of the series with a certified tail bound.

    Terms are added until the rigorous bound on the remainder (geometric
    bound with zeta factor <= zeta(2) and monotone denominators for the
    even/odd kinds, first omitted term for the alternating kind) drops
    below 10^-(target+guard).
    """
    with ctx.activate():
        eps = ctx.eps()
        z2 = zeta_int(2, ctx)
        lead = abs(to_mpfr(spec.leading_coefficient))
        q = gmpy2.mpq(spec.ratio.numerator, spec.ratio.denominator)
        step = q if spec.numerator == "ALT_ZETA" else q * q
        acc = mpfr(0)
        qpow = step**spec.start_index
        geom = 1 / (1 - to_mpfr(step))
        n = spec.start_index
        for _ in range(200000):
            den = spec.denominator_at(n)
            if spec.numerator == "ZETA_EVEN":
                zval = zeta_even(n, ctx)
            elif spec.numerator == "ZETA_ODD":
                zval = zeta_int(2 * n + 1, ctx)
            else:
                zval = zeta_int(n, ctx) if n % 2 == 0 else -zeta_int(n, ctx)
            acc += zval * qpow / den
            n += 1
            qpow *= step
            if spec.numerator == "ALT_ZETA":
                bound = lead * z2 * qpow / spec.denominator_at(n)
            else:
                bound = lead * z2 * qpow / den * geom
            if bound < eps:
                return to_mpfr(spec.leading_coefficient) * acc
        raise ArithmeticError("series failed to meet its tail bound")


@dataclass(frozen=True)
class IdentityInstance:
    """One verifiable identity: a series spec and its closed form."""

    family_id: str
    m: int
    p: int
    z: Fraction
    reading: str
    lhs: SeriesSpec
    rhs: ClosedForm


# ---------------------------------------------------------------------------
# Shared atom/term helpers
# ---------------------------------------------------------------------------

Term = tuple[Fraction, Sequence[tuple[Atom, int]]]


def _neg1(k: int) -> int:
    return -1 if k & 1 else 1


def _even(x: int) -> bool:
    return x % 2 == 0


def _fact(n: int) -> int:
    return math.factorial(n)


def _zeta_pi(coeff, j: int, pi_exp: int) -> Term:
    return Fraction(coeff), [(Atom.zeta(j), 1), (Atom.pi(), pi_exp)]


def _beta_pi(coeff, j: int, pi_exp: int) -> Term:
    return Fraction(coeff), [(Atom.beta(j), 1), (Atom.pi(), pi_exp)]


def _cl_pi(coeff, m: int, two_z: Fraction, pi_exp: int) -> Term:
    return Fraction(coeff), [(Atom.clausen(m, two_z), 1), (Atom.pi(), pi_exp)]


def _npg(coeff, m: int, z: Fraction) -> Term:
    return Fraction(coeff), [(Atom.negapolygamma(m, z), 1)]


def _gamma(coeff) -> Term:
    return Fraction(coeff), [(Atom.gamma(), 1)]


def _unit(coeff) -> Term:
    return Fraction(coeff), []


def _build(terms: Iterable[Term], *logs: ClosedForm) -> ClosedForm:
    cf = ClosedForm.from_terms(terms)
    for piece in logs:
        cf = cf.add(piece)
    return cf


# ---------------------------------------------------------------------------
# Family domains and left-hand sides
# ---------------------------------------------------------------------------


def family_domain_ok(family: str, m: int, p: int) -> bool:
    if family == "A" or family == "D":
        return p >= 1
    if family == "B" or family == "E" or family == "X1":
        return m >= 1 and p >= 0
    if family in ("C", "F", "X2"):
        return m >= 0 and p >= 0
    raise ValueError(f"unknown family {family!r}")


def _check_domain(family: str, m: int, p: int, z: Fraction) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if not family_domain_ok(family, m, p):
        raise DomainError(f"family {family} does not admit m={m}, p={p}")
    if not (0 < z < 1):
        raise DomainError("z must lie in (0, 1)")
    if z > RATIO_GUARD:
        raise DomainError(f"z = {z} is beyond the ratio guard {RATIO_GUARD}")
    if z.denominator > MAX_Z_DENOMINATOR:
        raise DomainError(f"z denominator exceeds {MAX_Z_DENOMINATOR}")


def lhs_spec(family: str, m: int, p: int, z: Fraction) -> SeriesSpec:
    """The series side of the identity for (family, m, p, z)."""
    z = Fraction(z)
    _check_domain(family, m, p, z)
    if family == "A":
        return SeriesSpec("ZETA_EVEN", 0, ((2, p),), z, Fraction(-2))
    if family == "B":
        factors = ((1, 0),) + tuple((2, i) for i in range(1, m)) + ((2, m + p),)
        return SeriesSpec("ZETA_EVEN", 1, factors, z, Fraction(1))
    if family == "C":
        factors = tuple((2, i) for i in range(1, m + 2)) + ((2, m + p + 2),)
        return SeriesSpec("ZETA_EVEN", 0, factors, z, Fraction(1))
    if family == "D":
        return SeriesSpec("ZETA_ODD", 1, ((2, p + 1),), z, Fraction(1))
    if family == "E":
        factors = tuple((2, i) for i in range(1, m + 1)) + ((2, m + 1 + p),)
        return SeriesSpec("ZETA_ODD", 1, factors, z, Fraction(1))
    if family == "F":
        factors = tuple((2, i) for i in range(2, m + 3)) + ((2, m + p + 3),)
        return SeriesSpec("ZETA_ODD", 1, factors, z, Fraction(1))
    if family == "X1":
        factors = tuple((1, i) for i in range(m)) + ((1, m + p),)
        return SeriesSpec("ALT_ZETA", 2, factors, z, Fraction(1))
    factors = tuple((1, i) for i in range(1, m + 2)) + ((1, m + p + 2),)
    return SeriesSpec("ALT_ZETA", 2, factors, z, Fraction(1))


# ---------------------------------------------------------------------------
# Right-hand sides: family A
# ---------------------------------------------------------------------------


def _a_half(p: int) -> ClosedForm:
    terms: list[Term] = [(Fraction(1), [(Atom.log2(), 1)])]
    for k in range(1, p // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(_fact(p) * _neg1(k) * (4**k - 1), _fact(p - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    if _even(p):
        terms.append(_zeta_pi(_fact(p) * _neg1(p // 2), p + 1, -p))
    return _build(terms)


def _a_quarter(p: int) -> ClosedForm:
    terms: list[Term] = [(Fraction(1, 2), [(Atom.log2(), 1)])]
    for k in range(1, p // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(_fact(p) * _neg1(k) * (4**k - 1), 2 * _fact(p - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    for k in range(1, (p + 1) // 2 + 1):
        terms.append(_beta_pi(Fraction(-_fact(p) * (-4) ** k, 2 * _fact(p + 1 - 2 * k)), 2 * k, 1 - 2 * k))
    if _even(p):
        terms.append(_zeta_pi(_fact(p) * _neg1(p // 2) * 2**p, p + 1, -p))
    return _build(terms)


def _a_general(p: int, z: Fraction) -> ClosedForm:
    inv2z = 1 / (2 * z)
    terms: list[Term] = []
    for k in range(0, p + 1):
        coeff = Fraction(_fact(p) * _neg1((k + 3) // 2), _fact(p - k)) * inv2z**k
        terms.append(_cl_pi(coeff, k + 1, 2 * z, -k))
    if _even(p):
        terms.append(_zeta_pi(_fact(p) * _neg1(p // 2) * inv2z**p, p + 1, -p))
    return _build(terms)


# ---------------------------------------------------------------------------
# Right-hand sides: family B
# ---------------------------------------------------------------------------


def _b_half(m: int, p: int, use_p0: bool = True) -> ClosedForm:
    if p == 0 and use_p0:
        terms: list[Term] = []
        if _even(m):
            terms.append(
                _zeta_pi(Fraction(_neg1((3 * m + 2) // 2) * (2 ** (m + 1) - 1), 2**m), m + 1, -m)
            )
        for k in range(1, (m - 1) // 2 + 1):
            terms.append(_zeta_pi(Fraction(-_neg1(k), _fact(m - 2 * k)), 2 * k + 1, -2 * k))
        terms.append(_unit(Fraction(-harmonic(m), _fact(m))))
        return _build(terms, log_term(Fraction(1, _fact(m)), 1, 1))
    terms = [
        _unit(-Fraction(harmonic(m - 1), _fact(m - 1) * (p + m)) - Fraction(1, _fact(m - 1) * (p + m) ** 2))
    ]
    pref = _neg1(m + 1) * _fact(p)
    if _even(p + m):
        terms.append(_zeta_pi(pref * _neg1((p + m) // 2), p + m + 1, -(p + m)))
    for k in range((m + 1) // 2, (p + m) // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(pref * _neg1(k) * (4**k - 1), _fact(p + m - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    for k in range(1, (m - 1) // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(-_neg1(k), _fact(m - 1 - 2 * k) * (m + p - 2 * k)), 2 * k + 1, -2 * k)
        )
    return _build(terms, log_term(Fraction(1, _fact(m - 1) * (p + m)), 1, 1))


def _b_quarter(m: int, p: int, use_p0: bool = True) -> ClosedForm:
    if p == 0 and use_p0:
        terms: list[Term] = []
        if not _even(m):
            terms.append(_beta_pi(_neg1((3 * m + 1) // 2) * 2**m, m + 1, -m))
        if _even(m):
            terms.append(
                _zeta_pi(
                    Fraction(-_neg1(3 * m // 2) * (2 ** (2 * m + 1) + 2**m - 1), 2 * 2**m), m + 1, -m
                )
            )
        for k in range(1, (m - 1) // 2 + 1):
            terms.append(_zeta_pi(Fraction(-((-4) ** k), _fact(m - 2 * k)), 2 * k + 1, -2 * k))
        terms.append(_unit(Fraction(-harmonic(m), _fact(m))))
        return _build(terms, log_term(Fraction(1, _fact(m)), HALF, 1))
    terms = [
        _unit(-Fraction(harmonic(m - 1), _fact(m - 1) * (p + m)) - Fraction(1, _fact(m - 1) * (p + m) ** 2))
    ]
    for k in range((m + 2) // 2, (p + m + 1) // 2 + 1):
        terms.append(
            _beta_pi(Fraction(_fact(p) * _neg1(m + k) * 4**k, 2 * _fact(p + m + 1 - 2 * k)), 2 * k, 1 - 2 * k)
        )
    if _even(p + m):
        terms.append(
            _zeta_pi(_neg1(m + 1) * _fact(p) * _neg1((p + m) // 2) * 2 ** (p + m), p + m + 1, -(p + m))
        )
    for k in range((m + 1) // 2, (p + m) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(-_fact(p) * _neg1(m) * _neg1(k) * (4**k - 1), 2 * _fact(p + m - 2 * k) * 4**k),
                2 * k + 1,
                -2 * k,
            )
        )
    for k in range(1, (m - 1) // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(-_neg1(k) * 4**k, _fact(m - 1 - 2 * k) * (m + p - 2 * k)), 2 * k + 1, -2 * k)
        )
    return _build(terms, log_term(Fraction(1, _fact(m - 1) * (p + m)), HALF, 1))


def _b_general(m: int, p: int, z: Fraction, use_p0: bool = True) -> ClosedForm:
    inv2z = 1 / (2 * z)
    if p == 0 and use_p0:
        terms: list[Term] = [
            _cl_pi(_neg1(m) * _neg1((m + 1) // 2) * inv2z**m, m + 1, 2 * z, -m),
        ]
        if _even(m):
            terms.append(_zeta_pi(-_neg1(3 * m // 2) * inv2z**m, m + 1, -m))
        for k in range(1, (m - 1) // 2 + 1):
            terms.append(_zeta_pi(Fraction(-_neg1(k), _fact(m - 2 * k)) * inv2z ** (2 * k), 2 * k + 1, -2 * k))
        terms.append(_unit(Fraction(-harmonic(m), _fact(m))))
        return _build(terms, log_term(Fraction(1, _fact(m)), 2 * z, 1))
    terms = [
        _unit(-Fraction(harmonic(m - 1), _fact(m - 1) * (p + m)) - Fraction(1, _fact(m - 1) * (p + m) ** 2))
    ]
    for k in range(m, m + p + 1):
        coeff = Fraction(_neg1(m) * _fact(p) * _neg1((k + 1) // 2), _fact(p + m - k)) * inv2z**k
        terms.append(_cl_pi(coeff, k + 1, 2 * z, -k))
    if _even(p + m):
        terms.append(
            _zeta_pi(_neg1(m + 1) * _fact(p) * _neg1((p + m) // 2) * inv2z ** (p + m), p + m + 1, -(p + m))
        )
    for k in range(1, (m - 1) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(-_neg1(k), _fact(m - 1 - 2 * k) * (m + p - 2 * k)) * inv2z ** (2 * k),
                2 * k + 1,
                -2 * k,
            )
        )
    return _build(terms, log_term(Fraction(1, _fact(m - 1) * (p + m)), 2 * z, 1))


# ---------------------------------------------------------------------------
# Right-hand sides: family C
# ---------------------------------------------------------------------------


def _c_half(m: int, p: int, reading: str, use_p0: bool = True) -> ClosedForm:
    if p == 0 and use_p0:
        terms: list[Term] = []
        if not _even(m):
            terms.append(
                _zeta_pi(
                    Fraction(-_neg1((m + 1) // 2) * (2 ** (m + 1) - 1), 2 * 2 ** (m + 1)), m + 2, -(m + 1)
                )
            )
        if _even(m):
            terms.append(
                _zeta_pi(
                    Fraction(-_neg1(m // 2) * (2 ** (m + 3) - 1) * (m + 2), 2 * 2 ** (m + 2)), m + 3, -(m + 2)
                )
            )
        # The printed k-sum keeps a 2 pi z power inside the z = 1/2 form;
        # "corrected" substitutes z (pi^2k), "as_printed" reads 2 pi (4^k pi^2k).
        for k in range(1, (m + 1) // 2 + 1):
            base = Fraction(k * _neg1(k), _fact(m + 2 - 2 * k))
            if reading == "as_printed":
                base /= 4**k
            terms.append(_zeta_pi(base, 2 * k + 1, -2 * k))
        return _build(terms)
    terms = []
    pref = Fraction(_neg1(m) * _fact(p) * (m + p + 2), 2)
    for k in range((m + 3) // 2, (p + m + 2) // 2 + 1):
        terms.append(
            _zeta_pi(pref * Fraction(_neg1(k) * (4**k - 1), _fact(p + m + 2 - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    if _even(p + m):
        terms.append(_zeta_pi(-pref * _neg1((p + m) // 2), p + m + 3, -(m + p + 2)))
    if not _even(m):
        terms.append(
            _zeta_pi(Fraction(-_neg1((m + 1) // 2) * (2 ** (m + 1) - 1), 2 * 2 ** (m + 1)), m + 2, -(m + 1))
        )
    for k in range(1, (m + 1) // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(k * _neg1(k), _fact(m + 1 - 2 * k) * (m + p + 2 - 2 * k)), 2 * k + 1, -2 * k)
        )
    return _build(terms)


def _c_quarter(m: int, p: int, reading: str = "corrected", use_p0: bool = True) -> ClosedForm:
    if p == 0 and use_p0:
        terms: list[Term] = []
        s1 = _neg1(m // 2) * (m + 2)
        if not _even(m):
            # The printed form carries beta(m+2) here; the value coming out
            # of the even-order Clausen at pi/2 is beta(m+3) (also what the
            # worked m = 1 example uses), so "corrected" reads beta(m+3).
            j = m + 2 if reading == "as_printed" else m + 3
            terms.append(_beta_pi(s1 * 2 ** (m + 1), j, -(m + 2)))
        if _even(m):
            terms.append(
                _zeta_pi(
                    Fraction(-s1 * (2 ** (2 * m + 5) + 2 ** (m + 2) - 1), 4 * 2 ** (m + 2)), m + 3, -(m + 2)
                )
            )
        s2 = _neg1((m + 1) // 2)
        if _even(m):
            terms.append(_beta_pi(s2 * 2**m, m + 2, -(m + 1)))
        if not _even(m):
            terms.append(
                _zeta_pi(Fraction(-s2 * (2 ** (m + 1) - 1), 4 * 2 ** (m + 1)), m + 2, -(m + 1))
            )
        for k in range(1, (m + 1) // 2 + 1):
            terms.append(_zeta_pi(Fraction(k * (-4) ** k, _fact(m + 2 - 2 * k)), 2 * k + 1, -2 * k))
        return _build(terms)
    terms = []
    pref = Fraction(_neg1(m) * _fact(p) * (m + p + 2), 4)
    for k in range((m + 3) // 2, (p + m + 2) // 2 + 1):
        terms.append(
            _zeta_pi(pref * Fraction(_neg1(k) * (4**k - 1), _fact(p + m + 2 - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    for k in range((m + 4) // 2, (p + m + 3) // 2 + 1):
        terms.append(_beta_pi(-pref * Fraction(_neg1(k) * 4**k, _fact(p + m + 3 - 2 * k)), 2 * k, 1 - 2 * k))
    if _even(p + m):
        terms.append(_zeta_pi(-pref * _neg1((p + m) // 2) * 2 ** (p + m + 3), p + m + 3, -(m + p + 2)))
    if _even(m):
        terms.append(_beta_pi(_neg1((m + 1) // 2) * 2**m, m + 2, -(m + 1)))
    if not _even(m):
        terms.append(
            _zeta_pi(Fraction(-_neg1((m + 1) // 2) * (2 ** (m + 1) - 1), 4 * 2 ** (m + 1)), m + 2, -(m + 1))
        )
    for k in range(1, (m + 1) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(k * _neg1(k) * 4**k, _fact(m + 1 - 2 * k) * (m + p + 2 - 2 * k)), 2 * k + 1, -2 * k
            )
        )
    return _build(terms)


def _c_general(m: int, p: int, z: Fraction, use_p0: bool = True) -> ClosedForm:
    inv2z = 1 / (2 * z)
    cl2 = _cl_pi(Fraction(_neg1((m + 1) // 2), 2) * inv2z ** (m + 1), m + 2, 2 * z, -(m + 1))
    if p == 0 and use_p0:
        terms: list[Term] = [cl2]
        c3 = Fraction(_neg1(m // 2) * (m + 2), 2) * inv2z ** (m + 2)
        terms.append(_cl_pi(c3, m + 3, 2 * z, -(m + 2)))
        if _even(m):
            terms.append(_zeta_pi(-c3, m + 3, -(m + 2)))
        for k in range(1, (m + 1) // 2 + 1):
            terms.append(
                _zeta_pi(Fraction(k * _neg1(k), _fact(m + 2 - 2 * k)) * inv2z ** (2 * k), 2 * k + 1, -2 * k)
            )
        return _build(terms)
    terms = [cl2]
    pref = m + p + 2
    for k in range(m + 3, p + m + 4):
        coeff = pref * Fraction(_neg1(m + 1) * _fact(p) * _neg1(k // 2), 2 * _fact(p + m + 3 - k)) * inv2z ** (k - 1)
        terms.append(_cl_pi(coeff, k, 2 * z, 1 - k))
    if _even(p + m):
        coeff = -pref * Fraction(_fact(p) * _neg1((p + m) // 2) * _neg1(m), 2) * inv2z ** (m + p + 2)
        terms.append(_zeta_pi(coeff, p + m + 3, -(m + p + 2)))
    for k in range(1, (m + 1) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(k * _neg1(k), _fact(m + 1 - 2 * k) * (m + p + 2 - 2 * k)) * inv2z ** (2 * k),
                2 * k + 1,
                -2 * k,
            )
        )
    return _build(terms)


# ---------------------------------------------------------------------------
# Right-hand sides: family D
# ---------------------------------------------------------------------------


def _d_half(p: int) -> ClosedForm:
    terms: list[Term] = [
        _unit(Fraction(-1, p)),
        (Fraction(-1), [(Atom.log2(), 1)]),
        _gamma(Fraction(-1, p + 1)),
    ]
    for k in range(1, p // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(-_fact(p) * _neg1(k) * (4**k - 1), _fact(p - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    if _even(p):
        terms.append(_zeta_pi(-_fact(p) * _neg1(p // 2), p + 1, -p))
    for k in range(0, p + 1):
        terms.append(_npg(Fraction(-2 * _fact(p) * (-2) ** k, _fact(p - k)), k + 1, HALF))
    return _build(terms)


def _d_quarter(p: int) -> ClosedForm:
    terms: list[Term] = [
        _unit(Fraction(-2, p)),
        (Fraction(-1), [(Atom.log2(), 1)]),
        _gamma(Fraction(-1, p + 1)),
    ]
    for k in range(1, p // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(-_fact(p) * _neg1(k) * (4**k - 1), _fact(p - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    for k in range(1, (p + 1) // 2 + 1):
        terms.append(_beta_pi(Fraction(_fact(p) * (-4) ** k, _fact(p + 1 - 2 * k)), 2 * k, 1 - 2 * k))
    if _even(p):
        terms.append(_zeta_pi(-_fact(p) * _neg1(p // 2) * 2 ** (p + 1), p + 1, -p))
    for k in range(0, p + 1):
        terms.append(_npg(Fraction(-4 * _fact(p) * (-4) ** k, _fact(p - k)), k + 1, QUARTER))
    return _build(terms)


def _d_general(p: int, z: Fraction) -> ClosedForm:
    inv2z = 1 / (2 * z)
    invz = 1 / z
    terms: list[Term] = [
        _unit(Fraction(-1, 2 * p) * invz),
        _gamma(Fraction(-1, p + 1)),
    ]
    for k in range(0, p + 1):
        coeff = Fraction(_fact(p) * _neg1((k + 1) // 2), _fact(p - k)) * inv2z ** (k + 1)
        terms.append(_cl_pi(coeff, k + 1, 2 * z, -k))
    if _even(p):
        terms.append(_zeta_pi(-_fact(p) * _neg1(p // 2) * inv2z ** (p + 1), p + 1, -p))
    for k in range(0, p + 1):
        terms.append(_npg(Fraction(-_fact(p) * _neg1(k), _fact(p - k)) * invz ** (k + 1), k + 1, z))
    return _build(terms)


# ---------------------------------------------------------------------------
# Right-hand sides: family E
# ---------------------------------------------------------------------------


def _e_half(m: int, p: int, use_p0: bool = True) -> ClosedForm:
    if p == 0 and use_p0:
        terms: list[Term] = [
            _unit(Fraction(harmonic(m), _fact(m))),
            _gamma(Fraction(-1, _fact(m + 1))),
            _npg(-(2 ** (m + 1)), m + 1, HALF),
        ]
        if _even(m):
            terms.append(_zeta_pi(Fraction(-_neg1(m // 2) * (2 ** (m + 1) - 1), 2**m), m + 1, -m))
        for k in range(1, (m - 1) // 2 + 1):
            terms.append(_zeta_pi(Fraction(-_neg1(k), _fact(m - 2 * k)), 2 * k + 1, -2 * k))
        return _build(terms, log_term(Fraction(1, _fact(m)), 4, 1))
    terms = [
        _unit(Fraction(harmonic(m - 1), _fact(m - 1) * (m + p)) + Fraction(1, _fact(m - 1) * (m + p) ** 2)),
        _gamma(Fraction(-1, _fact(m) * (m + p + 1))),
    ]
    for k in range((m + 1) // 2, (p + m) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(-_neg1(m) * _fact(p) * _neg1(k) * (4**k - 1), _fact(p + m - 2 * k) * 4**k),
                2 * k + 1,
                -2 * k,
            )
        )
    if _even(p + m):
        terms.append(_zeta_pi(_neg1(m + 1) * _fact(p) * _neg1((p + m) // 2), p + m + 1, -(p + m)))
    for k in range(0, p + 1):
        terms.append(_npg(Fraction(-(2 ** (m + 1)) * _fact(p) * (-2) ** k, _fact(p - k)), k + m + 1, HALF))
    for k in range(1, (m - 1) // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(-_neg1(k), _fact(m - 1 - 2 * k) * (m + p - 2 * k)), 2 * k + 1, -2 * k)
        )
    return _build(terms, log_term(Fraction(1, _fact(m - 1) * (m + p)), 4, 1))


def _e_quarter(m: int, p: int, use_p0: bool = True) -> ClosedForm:
    if p == 0 and use_p0:
        terms: list[Term] = [
            _unit(Fraction(2 * harmonic(m), _fact(m))),
            _gamma(Fraction(-1, _fact(m + 1))),
            _npg(-(4 ** (m + 1)), m + 1, QUARTER),
        ]
        if not _even(m):
            terms.append(_beta_pi(-_neg1((m + 1) // 2) * 2 ** (m + 1), m + 1, -m))
        if _even(m):
            terms.append(
                _zeta_pi(Fraction(-_neg1(m // 2) * (2 ** (2 * m + 1) + 2**m - 1), 2**m), m + 1, -m)
            )
        for k in range(1, (m - 1) // 2 + 1):
            terms.append(_zeta_pi(Fraction(-2 * (-4) ** k, _fact(m - 2 * k)), 2 * k + 1, -2 * k))
        return _build(terms, log_term(Fraction(2, _fact(m)), 8, 1))
    terms = [
        _unit(
            Fraction(2 * harmonic(m - 1), _fact(m - 1) * (m + p)) + Fraction(2, _fact(m - 1) * (m + p) ** 2)
        ),
        _gamma(Fraction(-1, _fact(m) * (m + p + 1))),
    ]
    for k in range((m + 2) // 2, (p + m + 1) // 2 + 1):
        terms.append(
            _beta_pi(Fraction(_fact(p) * _neg1(m + k) * 4**k, _fact(p + m + 1 - 2 * k)), 2 * k, 1 - 2 * k)
        )
    for k in range((m + 1) // 2, (p + m) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(-_fact(p) * _neg1(k + m) * (4**k - 1), _fact(p + m - 2 * k) * 4**k), 2 * k + 1, -2 * k
            )
        )
    if _even(p + m):
        terms.append(
            _zeta_pi(
                -_fact(p) * _neg1(m) * _neg1((p + m) // 2) * 2 ** (p + m + 1), p + m + 1, -(p + m)
            )
        )
    for k in range(1, (m - 1) // 2 + 1):
        terms.append(
            _zeta_pi(Fraction(-2 * (-4) ** k, _fact(m - 1 - 2 * k) * (m + p - 2 * k)), 2 * k + 1, -2 * k)
        )
    for k in range(0, p + 1):
        terms.append(_npg(Fraction(-(4 ** (m + 1)) * _fact(p) * (-4) ** k, _fact(p - k)), k + m + 1, QUARTER))
    return _build(terms, log_term(Fraction(2, _fact(m - 1) * (m + p)), 8, 1))


def _e_general(m: int, p: int, z: Fraction, use_p0: bool = True) -> ClosedForm:
    inv2z = 1 / (2 * z)
    invz = 1 / z
    if p == 0 and use_p0:
        terms: list[Term] = [
            _npg(-(invz ** (m + 1)), m + 1, z),
            _gamma(Fraction(-1, _fact(m + 1))),
            _unit(Fraction(harmonic(m), 2 * _fact(m)) * invz),
        ]
        for k in range(1, (m - 1) // 2 + 1):
            terms.append(
                _zeta_pi(Fraction(-_neg1(k), 2 * _fact(m - 2 * k)) * invz * inv2z ** (2 * k), 2 * k + 1, -2 * k)
            )
        ccl = Fraction(_neg1(m // 2), 2) * invz * inv2z**m
        terms.append(_cl_pi(ccl, m + 1, 2 * z, -m))
        if _even(m):
            terms.append(_zeta_pi(-ccl, m + 1, -m))
        return _build(terms, log_term(Fraction(1, 2 * _fact(m)) * invz, 2 / z, 1))
    terms = [
        _gamma(Fraction(-1, _fact(m) * (p + m + 1))),
        _unit(
            Fraction(harmonic(m - 1), 2 * _fact(m - 1) * (p + m)) * invz
            + Fraction(1, 2 * _fact(m - 1) * (p + m) ** 2) * invz
        ),
    ]
    for k in range(0, p + 1):
        terms.append(
            _npg(Fraction(-_fact(p) * _neg1(k), _fact(p - k)) * invz ** (m + k + 1), k + m + 1, z)
        )
    for k in range(m, m + p + 1):
        coeff = Fraction(_neg1(m) * _fact(p) * _neg1((k + 1) // 2), 2 * _fact(p + m - k)) * invz * inv2z**k
        terms.append(_cl_pi(coeff, k + 1, 2 * z, -k))
    if _even(p + m):
        coeff = Fraction(-_neg1(m) * _fact(p) * _neg1((p + m) // 2), 2) * invz * inv2z ** (p + m)
        terms.append(_zeta_pi(coeff, p + m + 1, -(p + m)))
    for k in range(1, (m - 1) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(-_neg1(k), 2 * _fact(m - 1 - 2 * k) * (m + p - 2 * k)) * invz * inv2z ** (2 * k),
                2 * k + 1,
                -2 * k,
            )
        )
    return _build(terms, log_term(Fraction(1, 2 * _fact(m - 1) * (p + m)) * invz, 2 / z, 1))


# ---------------------------------------------------------------------------
# Right-hand sides: family F
# ---------------------------------------------------------------------------


def _f_half(m: int, p: int, use_p0: bool = True) -> ClosedForm:
    if p == 0 and use_p0:
        terms: list[Term] = [
            _npg(-(2 ** (m + 2)), m + 2, HALF),
            _npg((m + 2) * 2 ** (m + 3), m + 3, HALF),
            _gamma(Fraction(-1, _fact(m + 3))),
            _unit(Fraction(-1, _fact(m + 2))),
        ]
        if not _even(m):
            terms.append(
                _zeta_pi(Fraction(-_neg1((m + 1) // 2) * (2 ** (m + 1) - 1), 2 ** (m + 1)), m + 2, -(m + 1))
            )
        if _even(m):
            terms.append(
                _zeta_pi(
                    Fraction(-_neg1(m // 2) * (2 ** (m + 3) - 1) * (m + 2), 2 ** (m + 2)), m + 3, -(m + 2)
                )
            )
        for k in range(1, (m + 1) // 2 + 1):
            terms.append(_zeta_pi(Fraction(2 * k * _neg1(k), _fact(m + 2 - 2 * k)), 2 * k + 1, -2 * k))
        return _build(terms)
    terms = [
        _gamma(Fraction(-1, _fact(m + 2) * (p + m + 3))),
        _unit(Fraction(-1, _fact(m + 1) * (p + m + 2))),
        _npg(-(2 ** (m + 2)), m + 2, HALF),
    ]
    pref = _neg1(m) * _fact(p) * (m + p + 2)
    for k in range((m + 3) // 2, (p + m + 2) // 2 + 1):
        terms.append(
            _zeta_pi(pref * Fraction(_neg1(k) * (4**k - 1), _fact(p + m + 2 - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    if _even(p + m):
        terms.append(_zeta_pi(-pref * _neg1((p + m) // 2), p + m + 3, -(m + p + 2)))
    for k in range(0, p + 1):
        terms.append(
            _npg(pref * Fraction(8 * (-2) ** m * (-2) ** k, _fact(p - k)), k + m + 3, HALF)
        )
    if not _even(m):
        terms.append(
            _zeta_pi(Fraction(-_neg1((m + 1) // 2) * (2 ** (m + 1) - 1), 2 ** (m + 1)), m + 2, -(m + 1))
        )
    for k in range(1, (m + 1) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(2 * k * _neg1(k), _fact(m + 1 - 2 * k) * (m + p + 2 - 2 * k)), 2 * k + 1, -2 * k
            )
        )
    return _build(terms)


def _f_quarter(m: int, p: int, use_p0: bool = True) -> ClosedForm:
    if p == 0 and use_p0:
        terms: list[Term] = [
            _npg(Fraction((m + 2) * 4 ** (m + 3)), m + 3, QUARTER),
            _npg(-(4 ** (m + 2)), m + 2, QUARTER),
            _gamma(Fraction(-1, _fact(m + 3))),
            _unit(Fraction(-2, _fact(m + 2))),
        ]
        s1 = _neg1(m // 2) * (m + 2)
        if not _even(m):
            terms.append(_beta_pi(s1 * 2 ** (m + 3), m + 3, -(m + 2)))
        if _even(m):
            terms.append(
                _zeta_pi(
                    Fraction(-s1 * (2 ** (2 * m + 5) + 2 ** (m + 2) - 1), 2 ** (m + 2)), m + 3, -(m + 2)
                )
            )
        s2 = _neg1((m + 1) // 2)
        if _even(m):
            terms.append(_beta_pi(s2 * 2 ** (m + 2), m + 2, -(m + 1)))
        if not _even(m):
            terms.append(
                _zeta_pi(Fraction(-s2 * (2 ** (m + 1) - 1), 2 ** (m + 1)), m + 2, -(m + 1))
            )
        for k in range(1, (m + 1) // 2 + 1):
            terms.append(_zeta_pi(Fraction(4 * k * (-4) ** k, _fact(m + 2 - 2 * k)), 2 * k + 1, -2 * k))
        return _build(terms)
    terms = [
        _gamma(Fraction(-1, _fact(m + 2) * (p + m + 3))),
        _unit(Fraction(-2, _fact(m + 1) * (p + m + 2))),
        _npg(-(4 ** (m + 2)), m + 2, QUARTER),
    ]
    pref = _neg1(m) * _fact(p) * (m + p + 2)
    for k in range((m + 3) // 2, (p + m + 2) // 2 + 1):
        terms.append(
            _zeta_pi(pref * Fraction(_neg1(k) * (4**k - 1), _fact(p + m + 2 - 2 * k) * 4**k), 2 * k + 1, -2 * k)
        )
    for k in range((m + 4) // 2, (p + m + 3) // 2 + 1):
        terms.append(_beta_pi(-pref * Fraction(_neg1(k) * 4**k, _fact(p + m + 3 - 2 * k)), 2 * k, 1 - 2 * k))
    for k in range(0, p + 1):
        terms.append(
            _npg(pref * Fraction(64 * (-4) ** m * (-4) ** k, _fact(p - k)), k + m + 3, QUARTER)
        )
    if _even(p + m):
        terms.append(_zeta_pi(-pref * _neg1((p + m) // 2) * 2 ** (p + m + 3), p + m + 3, -(m + p + 2)))
    if _even(m):
        terms.append(_beta_pi(_neg1((m + 1) // 2) * 2 ** (m + 2), m + 2, -(m + 1)))
    if not _even(m):
        terms.append(
            _zeta_pi(Fraction(-_neg1((m + 1) // 2) * (2 ** (m + 1) - 1), 2 ** (m + 1)), m + 2, -(m + 1))
        )
    for k in range(1, (m + 1) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(k * _neg1(k) * 4 ** (k + 1), _fact(m + 1 - 2 * k) * (m + p + 2 - 2 * k)),
                2 * k + 1,
                -2 * k,
            )
        )
    return _build(terms)


def _f_general(m: int, p: int, z: Fraction, reading: str, use_p0: bool = True) -> ClosedForm:
    inv2z = 1 / (2 * z)
    invz = 1 / z
    cl2 = _cl_pi(Fraction(_neg1((m + 1) // 2), 2) * invz * inv2z ** (m + 1), m + 2, 2 * z, -(m + 1))
    if p == 0 and use_p0:
        terms: list[Term] = [
            cl2,
            _npg(-(invz ** (m + 2)), m + 2, z),
            _npg((m + 2) * invz ** (m + 3), m + 3, z),
            _gamma(Fraction(-1, _fact(m + 3))),
            _unit(Fraction(-(m + 3), 2 * _fact(m + 3)) * invz),
        ]
        c3 = Fraction(_neg1(m // 2) * (m + 2), 2) * invz * inv2z ** (m + 2)
        terms.append(_cl_pi(c3, m + 3, 2 * z, -(m + 2)))
        if _even(m):
            terms.append(_zeta_pi(-c3, m + 3, -(m + 2)))
        for k in range(1, (m + 1) // 2 + 1):
            terms.append(
                _zeta_pi(
                    Fraction(k * _neg1(k), _fact(m + 2 - 2 * k)) * invz * inv2z ** (2 * k), 2 * k + 1, -2 * k
                )
            )
        return _build(terms)
    terms = [
        cl2,
        _npg(-(invz ** (m + 2)), m + 2, z),
        _gamma(Fraction(-1, _fact(m + 2) * (p + m + 3))),
        _unit(Fraction(-1, 2 * _fact(m + 1) * (p + m + 2)) * invz),
    ]
    pref = m + p + 2
    # The Clausen-sum prefactor: pi as printed ("corrected"/"as_printed"),
    # or pi z under the sibling-structure hypothesis ("alt_scaled").
    scale = z if reading == "alt_scaled" else Fraction(1)
    for k in range(m + 3, p + m + 4):
        coeff = (
            pref
            * Fraction(_neg1(m + 1) * _fact(p) * _neg1(k // 2), _fact(p + m + 3 - k))
            * scale
            * inv2z**k
        )
        terms.append(_cl_pi(coeff, k, 2 * z, 1 - k))
    if _even(p + m):
        coeff = -pref * Fraction(_fact(p) * _neg1((p + m) // 2) * _neg1(m), 2) * invz * inv2z ** (m + p + 2)
        terms.append(_zeta_pi(coeff, p + m + 3, -(m + p + 2)))
    for k in range(0, p + 1):
        terms.append(
            _npg(pref * Fraction(_fact(p) * _neg1(k), _fact(p - k)) * invz ** (k + m + 3), k + m + 3, z)
        )
    for k in range(1, (m + 1) // 2 + 1):
        terms.append(
            _zeta_pi(
                Fraction(k * _neg1(k), _fact(m + 1 - 2 * k) * (m + p + 2 - 2 * k)) * invz * inv2z ** (2 * k),
                2 * k + 1,
                -2 * k,
            )
        )
    return _build(terms)


# ---------------------------------------------------------------------------
# Right-hand sides: alternating families X1, X2
# ---------------------------------------------------------------------------


def _x1_rhs(m: int, p: int, z: Fraction, use_p0: bool = True) -> ClosedForm:
    invz = 1 / z
    if p == 0 and use_p0:
        terms: list[Term] = [
            _gamma(Fraction(z, _fact(m + 1))),
            _unit(Fraction(-harmonic(m), _fact(m))),
            _npg(invz**m, m + 1, z),
        ]
        return _build(terms, log_term(Fraction(1, _fact(m)), z, 0))
    terms = [
        _gamma(Fraction(z, _fact(m) * (m + p + 1))),
        _unit(
            -Fraction(harmonic(m - 1), _fact(m - 1) * (m + p)) - Fraction(1, _fact(m - 1) * (m + p) ** 2)
        ),
    ]
    for k in range(0, p + 1):
        terms.append(_npg(Fraction(_fact(p) * _neg1(k), _fact(p - k)) * invz ** (m + k), k + m + 1, z))
    return _build(terms, log_term(Fraction(1, _fact(m - 1) * (m + p)), z, 0))


def _x2_rhs(m: int, p: int, z: Fraction) -> ClosedForm:
    invz = 1 / z
    terms: list[Term] = [
        _gamma(Fraction(z, _fact(m + 2) * (p + m + 3))),
        _unit(Fraction(1, _fact(m + 1) * (p + m + 2))),
        _npg(invz ** (m + 1), m + 2, z),
    ]
    for k in range(0, p + 1):
        terms.append(
            _npg(-(m + p + 2) * Fraction(_fact(p) * _neg1(k), _fact(p - k)) * invz ** (k + m + 2), k + m + 3, z)
        )
    return _build(terms)


# ---------------------------------------------------------------------------
# Dispatch, instances, enumeration
# ---------------------------------------------------------------------------


def reading_variants(family: str, m: int, p: int, z: Fraction) -> tuple[str, ...]:
    """Reading tags available for this instance.

    Most closed forms admit a single reading, in which case the two
    standard tags build identical forms.  The general-z F family also
    carries the diagnostic ``alt_scaled`` variant.
    """
    z = Fraction(z)
    if family == "F" and z not in (HALF, QUARTER):
        return ("corrected", "as_printed", "alt_scaled")
    return ("corrected", "as_printed")


def specialized_rhs(family: str, m: int, p: int, z: Fraction, reading: str = "corrected") -> ClosedForm:
    """Closed form specialized to z = 1/2 or z = 1/4."""
    z = Fraction(z)
    _check_domain(family, m, p, z)
    if z == HALF:
        if family == "A":
            return _a_half(p)
        if family == "B":
            return _b_half(m, p)
        if family == "C":
            return _c_half(m, p, reading)
        if family == "D":
            return _d_half(p)
        if family == "E":
            return _e_half(m, p)
        if family == "F":
            return _f_half(m, p)
    elif z == QUARTER:
        if family == "A":
            return _a_quarter(p)
        if family == "B":
            return _b_quarter(m, p)
        if family == "C":
            return _c_quarter(m, p, reading)
        if family == "D":
            return _d_quarter(p)
        if family == "E":
            return _e_quarter(m, p)
        if family == "F":
            return _f_quarter(m, p)
    else:
        raise DomainError("specialized forms exist only for z in {1/2, 1/4}")
    # X families have a single closed form valid for all z
    return general_rhs(family, m, p, z, reading)


def general_rhs(family: str, m: int, p: int, z: Fraction, reading: str = "corrected") -> ClosedForm:
    """General-z closed form (Clausen / negapolygamma atoms)."""
    z = Fraction(z)
    _check_domain(family, m, p, z)
    if family == "A":
        return _a_general(p, z)
    if family == "B":
        return _b_general(m, p, z)
    if family == "C":
        return _c_general(m, p, z)
    if family == "D":
        return _d_general(p, z)
    if family == "E":
        return _e_general(m, p, z)
    if family == "F":
        return _f_general(m, p, z, reading)
    if family == "X1":
        return _x1_rhs(m, p, z)
    return _x2_rhs(m, p, z)


def rhs_general_p_form(family: str, m: int, p: int, z: Fraction, reading: str = "corrected") -> ClosedForm:
    """The general-p construction, forced even at p = 0.

    Families B/C/E/F (and X1) publish a collapsed closed form for p = 0
    next to the general-p one; the regular dispatch prefers the p = 0
    form, this entry point builds the general-p form instead so the two
    can be compared.
    """
    z = Fraction(z)
    _check_domain(family, m, p, z)
    if z == HALF:
        if family == "B":
            return _b_half(m, p, use_p0=False)
        if family == "C":
            return _c_half(m, p, reading, use_p0=False)
        if family == "E":
            return _e_half(m, p, use_p0=False)
        if family == "F":
            return _f_half(m, p, use_p0=False)
    elif z == QUARTER:
        if family == "B":
            return _b_quarter(m, p, use_p0=False)
        if family == "C":
            return _c_quarter(m, p, reading, use_p0=False)
        if family == "E":
            return _e_quarter(m, p, use_p0=False)
        if family == "F":
            return _f_quarter(m, p, use_p0=False)
    else:
        if family == "B":
            return _b_general(m, p, z, use_p0=False)
        if family == "C":
            return _c_general(m, p, z, use_p0=False)
        if family == "E":
            return _e_general(m, p, z, use_p0=False)
        if family == "F":
            return _f_general(m, p, z, reading, use_p0=False)
        if family == "X1":
            return _x1_rhs(m, p, z, use_p0=False)
    return rhs_closed_form(family, m, p, z, reading)


def rhs_closed_form(family: str, m: int, p: int, z: Fraction, reading: str = "corrected") -> ClosedForm:
    """The catalog right-hand side: specialized at 1/2 and 1/4, else general."""
    z = Fraction(z)
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if reading not in reading_variants(family, m, p, z):
        raise DomainError(f"reading {reading!r} not available for {family} at z={z}")
    if z in (HALF, QUARTER):
        return specialized_rhs(family, m, p, z, reading)
    return general_rhs(family, m, p, z, reading)


def make_instance(
    family_id: str,
    m: int = 0,
    p: int = 0,
    z: Fraction = HALF,
    reading: str = "corrected",
) -> IdentityInstance:
    """Assemble the (family, m, p, z) identity under a reading variant."""
    z = Fraction(z)
    lhs = lhs_spec(family_id, m, p, z)
    rhs = rhs_closed_form(family_id, m, p, z, reading)
    return IdentityInstance(family_id, m, p, z, reading, lhs, rhs)


def catalog_enumerate(ranges: dict) -> tuple[list[IdentityInstance], int]:
    """Instances for the given parameter ranges, in deterministic order.

    ``ranges`` maps family id to {"m": [lo, hi], "p": [lo, hi],
    "z": [rationals]}; "m" may be omitted for families without an order
    parameter.  Out-of-domain combinations are skipped and counted.
    """
    instances: list[IdentityInstance] = []
    skipped = 0
    for family in FAMILIES:
        if family not in ranges:
            continue
        spec = ranges[family]
        m_lo, m_hi = spec.get("m", (0, 0))
        p_lo, p_hi = spec["p"]
        zs = sorted(frac_from_str(zv) for zv in spec["z"])
        for m in range(m_lo, m_hi + 1):
            for p in range(p_lo, p_hi + 1):
                for z in zs:
                    try:
                        instances.append(make_instance(family, m, p, z))
                    except (DomainError, ValueError):
                        skipped += 1
    return instances, skipped


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def instance_to_json(inst: IdentityInstance) -> dict:
    return {
        "family_id": inst.family_id,
        "m": inst.m,
        "p": inst.p,
        "z": _frac_str(inst.z),
        "reading": inst.reading,
        "lhs": {
            "numerator": inst.lhs.numerator,
            "start_index": inst.lhs.start_index,
            "denominator_factors": [list(f) for f in inst.lhs.denominator_factors],
            "ratio": _frac_str(inst.lhs.ratio),
            "leading_coefficient": _frac_str(inst.lhs.leading_coefficient),
        },
        "rhs": inst.rhs.to_json(),
    }


def instance_from_json(data: dict) -> IdentityInstance:
    lhs = SeriesSpec(
        numerator=data["lhs"]["numerator"],
        start_index=int(data["lhs"]["start_index"]),
        denominator_factors=tuple((int(a), int(b)) for a, b in data["lhs"]["denominator_factors"]),
        ratio=Fraction(data["lhs"]["ratio"]),
        leading_coefficient=Fraction(data["lhs"]["leading_coefficient"]),
    )
    return IdentityInstance(
        family_id=data["family_id"],
        m=int(data["m"]),
        p=int(data["p"]),
        z=Fraction(data["z"]),
        reading=data["reading"],
        lhs=lhs,
        rhs=ClosedForm.from_json(data["rhs"]),
    )
