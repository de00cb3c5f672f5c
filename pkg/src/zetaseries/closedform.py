"""Exact closed forms: rational-coefficient combinations of constant atoms.

A ClosedForm is a finite map from monomials (multisets of atom powers)
to exact rational coefficients.  Every right-hand side handled by the
identity catalog lives in this closed vocabulary, which keeps golden
comparisons exact rather than approximate.

Atoms are evaluated through specfun/numcore; log arguments of the form
2^a * pi are normalized into the primitive LOG2 / LOG_PI atoms so that
coefficient comparison is exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import gmpy2
from gmpy2 import mpfr

from . import specfun
from .numcore import PrecisionContext, constant, to_mpfr

__all__ = ["Atom", "Monomial", "ClosedForm", "log_term"]

_SIMPLE_KINDS = ("PI", "LOG2", "LOG_PI", "GAMMA", "CATALAN", "GLAISHER_LOG")


@dataclass(frozen=True)
class Atom:
    """One constant or parameterized function value.

    kind is one of PI, LOG2, LOG_PI, GAMMA, CATALAN, GLAISHER_LOG,
    ZETA(j), BETA(j), ZETA_DERIV(s, a), CLAUSEN(m, theta/pi),
    NEGAPOLYGAMMA(m, z) or LOG_OF(q, pi_exp).
    """

    kind: str
    params: tuple = ()

    def __post_init__(self) -> None:
        k, p = self.kind, self.params
        if k in _SIMPLE_KINDS:
            if p:
                raise ValueError(f"{k} takes no parameters")
        elif k == "ZETA":
            if len(p) != 1 or not isinstance(p[0], int) or p[0] < 2:
                raise ValueError("ZETA needs an integer argument >= 2")
        elif k == "BETA":
            if len(p) != 1 or not isinstance(p[0], int) or p[0] < 1:
                raise ValueError("BETA needs an integer argument >= 1")
        elif k == "ZETA_DERIV":
            if len(p) != 2 or not isinstance(p[0], int) or not isinstance(p[1], Fraction):
                raise ValueError("ZETA_DERIV needs (int s, Fraction a)")
            if not (0 < p[1] <= 1):
                raise ValueError("ZETA_DERIV parameter a must lie in (0, 1]")
        elif k == "CLAUSEN":
            if len(p) != 2 or not isinstance(p[0], int) or not isinstance(p[1], Fraction):
                raise ValueError("CLAUSEN needs (int m, Fraction theta/pi)")
            if p[0] < 1 or abs(p[1]) >= 2:
                raise ValueError("CLAUSEN needs m >= 1 and |theta| < 2 pi")
        elif k == "NEGAPOLYGAMMA":
            if len(p) != 2 or not isinstance(p[0], int) or not isinstance(p[1], Fraction):
                raise ValueError("NEGAPOLYGAMMA needs (int m, Fraction z)")
            if p[0] < 1 or not (0 < p[1] < 1):
                raise ValueError("NEGAPOLYGAMMA needs m >= 1 and z in (0, 1)")
        elif k == "LOG_OF":
            if len(p) != 2 or not isinstance(p[0], Fraction) or not isinstance(p[1], int):
                raise ValueError("LOG_OF needs (Fraction q, int pi_exp)")
            if p[0] <= 0 or p[1] < 0:
                raise ValueError("LOG_OF needs q > 0 and pi_exp >= 0")
        else:
            raise ValueError(f"unknown atom kind {k!r}")

    def sort_key(self):
        return (self.kind, tuple((str(type(x)), Fraction(x)) for x in self.params))

    # -- constructors ------------------------------------------------

    @staticmethod
    def pi() -> "Atom":
        return Atom("PI")

    @staticmethod
    def log2() -> "Atom":
        return Atom("LOG2")

    @staticmethod
    def log_pi() -> "Atom":
        return Atom("LOG_PI")

    @staticmethod
    def gamma() -> "Atom":
        return Atom("GAMMA")

    @staticmethod
    def catalan() -> "Atom":
        return Atom("CATALAN")

    @staticmethod
    def glaisher_log() -> "Atom":
        return Atom("GLAISHER_LOG")

    @staticmethod
    def zeta(j: int) -> "Atom":
        return Atom("ZETA", (j,))

    @staticmethod
    def beta(j: int) -> "Atom":
        return Atom("BETA", (j,))

    @staticmethod
    def zeta_deriv(s: int, a) -> "Atom":
        return Atom("ZETA_DERIV", (s, Fraction(a)))

    @staticmethod
    def clausen(m: int, theta_over_pi) -> "Atom":
        return Atom("CLAUSEN", (m, Fraction(theta_over_pi)))

    @staticmethod
    def negapolygamma(m: int, z) -> "Atom":
        return Atom("NEGAPOLYGAMMA", (m, Fraction(z)))

    @staticmethod
    def log_of(q, pi_exp: int = 0) -> "Atom":
        return Atom("LOG_OF", (Fraction(q), pi_exp))


_atom_value_cache: dict[tuple, mpfr] = {}
_atom_lock = threading.Lock()


def _atom_value(atom: Atom, ctx: PrecisionContext) -> mpfr:
    key = (atom.kind, atom.params, ctx.working_precision)
    hit = _atom_value_cache.get(key)
    if hit is not None:
        return hit
    k, p = atom.kind, atom.params
    if k == "PI":
        v = constant("PI", ctx)
    elif k == "LOG2":
        v = constant("LOG2", ctx)
    elif k == "LOG_PI":
        v = constant("LOG_PI", ctx)
    elif k == "GAMMA":
        v = constant("EULER_GAMMA", ctx)
    elif k == "CATALAN":
        v = constant("CATALAN", ctx)
    elif k == "GLAISHER_LOG":
        v = constant("GLAISHER_LOG", ctx)
    elif k == "ZETA":
        v = specfun.zeta_int(p[0], ctx)
    elif k == "BETA":
        v = specfun.dirichlet_beta(p[0], ctx)
    elif k == "ZETA_DERIV":
        v = specfun.hurwitz_zeta_sderiv(p[0], p[1], ctx)
    elif k == "CLAUSEN":
        v = specfun.clausen(p[0], p[1], ctx)
    elif k == "NEGAPOLYGAMMA":
        v = specfun.negapolygamma(p[0], p[1], ctx)
    elif k == "LOG_OF":
        with ctx.activate():
            v = gmpy2.log(to_mpfr(p[0]))
            if p[1]:
                v += p[1] * constant("LOG_PI", ctx)
    else:  # pragma: no cover - rejected at construction
        raise ValueError(k)
    with _atom_lock:
        _atom_value_cache[key] = v
    return v


class Monomial:
    """Canonical product of atom powers; the empty product is the unit."""

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[tuple[Atom, int]] = ()):
        merged: dict[Atom, int] = {}
        for atom, exp in factors:
            if not isinstance(exp, int):
                raise ValueError("exponents must be integers")
            merged[atom] = merged.get(atom, 0) + exp
        items = [(a, e) for a, e in merged.items() if e != 0]
        items.sort(key=lambda ae: ae[0].sort_key())
        object.__setattr__(self, "factors", tuple(items))

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def sort_key(self):
        return tuple((a.sort_key(), e) for a, e in self.factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"Monomial({self.factors!r})"


UNIT = Monomial()


class ClosedForm:
    """Finite rational combination sum(coeff * monomial)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = clean.get(mono, Fraction(0)) + coeff
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "ClosedForm":
        return ClosedForm()

    @staticmethod
    def unit(coeff) -> "ClosedForm":
        return ClosedForm({UNIT: Fraction(coeff)})

    @staticmethod
    def single(coeff, factors: Sequence[tuple[Atom, int]]) -> "ClosedForm":
        return ClosedForm({Monomial(factors): Fraction(coeff)})

    @staticmethod
    def from_terms(terms: Iterable[tuple[Fraction, Sequence[tuple[Atom, int]]]]) -> "ClosedForm":
        acc: dict[Monomial, Fraction] = {}
        for coeff, factors in terms:
            coeff = Fraction(coeff)
            if not coeff:
                continue
            mono = Monomial(factors)
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return ClosedForm(acc)

    # -- algebra -----------------------------------------------------

    def add(self, other: "ClosedForm") -> "ClosedForm":
        acc = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return ClosedForm(acc)

    def scale(self, q) -> "ClosedForm":
        q = Fraction(q)
        if not q:
            return ClosedForm()
        return ClosedForm({mono: coeff * q for mono, coeff in self._terms.items()})

    def __add__(self, other: "ClosedForm") -> "ClosedForm":
        return self.add(other)

    def __sub__(self, other: "ClosedForm") -> "ClosedForm":
        return self.add(other.scale(-1))

    # -- inspection ---------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in canonical order (unit monomial last)."""
        yield from sorted(
            self._terms.items(), key=lambda mc: (mc[0].is_unit, mc[0].sort_key())
        )

    def atoms(self) -> set[Atom]:
        out: set[Atom] = set()
        for mono in self._terms:
            out.update(a for a, _ in mono.factors)
        return out

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def _key(self):
        return tuple((m.sort_key(), c) for m, c in self.terms())

    def __eq__(self, other) -> bool:
        return isinstance(other, ClosedForm) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"ClosedForm<{self.render('TEXT')}>"

    # -- evaluation ---------------------------------------------------

    def evaluate(self, ctx: PrecisionContext) -> mpfr:
        """Numeric value under the context; deterministic for fixed ctx."""
        with ctx.activate():
            total = mpfr(0)
            for mono, coeff in self.terms():
                part = to_mpfr(coeff)
                for atom, exp in mono.factors:
                    part *= _atom_value(atom, ctx) ** exp
                total += part
            return total

    # -- rendering ----------------------------------------------------

    def render(self, fmt: str = "TEXT") -> str:
        fmt = fmt.upper()
        if fmt not in ("TEXT", "LATEX"):
            raise ValueError("format must be TEXT or LATEX")
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for mono, coeff in self.terms():
            body = _render_term(mono, coeff, fmt)
            if not chunks:
                chunks.append(body if coeff > 0 else "-" + body)
            else:
                chunks.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(chunks)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        """Schema: {terms: [{factors: [{atom, params, exp}], coeff: "p/q"}]}."""
        out = []
        for mono, coeff in self.terms():
            factors = [
                {"atom": a.kind, "params": [_param_json(x) for x in a.params], "exp": e}
                for a, e in mono.factors
            ]
            out.append({"factors": factors, "coeff": _frac_str(coeff)})
        return {"terms": out}

    @staticmethod
    def from_json(data: dict) -> "ClosedForm":
        acc: dict[Monomial, Fraction] = {}
        for term in data["terms"]:
            factors = []
            for f in term["factors"]:
                kind = f["atom"]
                params = tuple(_param_from_json(kind, i, x) for i, x in enumerate(f["params"]))
                factors.append((Atom(kind, params), int(f["exp"])))
            mono = Monomial(factors)
            acc[mono] = acc.get(mono, Fraction(0)) + Fraction(term["coeff"])
        return ClosedForm(acc)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _param_json(x):
    return x if isinstance(x, int) else _frac_str(Fraction(x))


_INT_PARAM_SLOTS = {
    "ZETA": (0,),
    "BETA": (0,),
    "ZETA_DERIV": (0,),
    "CLAUSEN": (0,),
    "NEGAPOLYGAMMA": (0,),
    "LOG_OF": (1,),
}


def _param_from_json(kind: str, index: int, x):
    if index in _INT_PARAM_SLOTS.get(kind, ()):
        return int(x)
    return Fraction(x)


# -- term rendering ---------------------------------------------------


def _frac_text(t: Fraction) -> str:
    """Render a rational multiple of pi, e.g. 'pi/2', '2pi/3', 'pi'."""
    n, d = t.numerator, t.denominator
    head = "pi" if n == 1 else ("-pi" if n == -1 else f"{n}pi")
    return head if d == 1 else f"{head}/{d}"


def _frac_latex(t: Fraction) -> str:
    n, d = t.numerator, t.denominator
    head = "\\pi" if n == 1 else ("-\\pi" if n == -1 else f"{n}\\pi")
    return head if d == 1 else f"{head}/{d}"


def _atom_text(atom: Atom) -> str:
    k, p = atom.kind, atom.params
    if k == "PI":
        return "pi"
    if k == "LOG2":
        return "log(2)"
    if k == "LOG_PI":
        return "log(pi)"
    if k == "GAMMA":
        return "gamma"
    if k == "CATALAN":
        return "G"
    if k == "GLAISHER_LOG":
        return "log(A)"
    if k == "ZETA":
        return f"zeta({p[0]})"
    if k == "BETA":
        return f"beta({p[0]})"
    if k == "ZETA_DERIV":
        return f"zeta'({p[0]})" if p[1] == 1 else f"zeta'({p[0]},{_frac_str(p[1])})"
    if k == "CLAUSEN":
        return f"Cl_{p[0]}({_frac_text(p[1])})"
    if k == "NEGAPOLYGAMMA":
        return f"psi^(-{p[0]})({_frac_str(p[1])})"
    if k == "LOG_OF":
        q = _frac_str(p[0])
        return f"log({q})" if p[1] == 0 else f"log({q}*pi^{p[1]})"
    raise ValueError(k)


def _atom_latex(atom: Atom) -> str:
    k, p = atom.kind, atom.params
    if k == "PI":
        return "\\pi"
    if k == "LOG2":
        return "\\log 2"
    if k == "LOG_PI":
        return "\\log \\pi"
    if k == "GAMMA":
        return "\\gamma"
    if k == "CATALAN":
        return "G"
    if k == "GLAISHER_LOG":
        return "\\log A"
    if k == "ZETA":
        return f"\\zeta({p[0]})"
    if k == "BETA":
        return f"\\beta({p[0]})"
    if k == "ZETA_DERIV":
        if p[1] == 1:
            return f"\\zeta'({p[0]})"
        return f"\\zeta'\\left({p[0]}, {_latex_frac(p[1])}\\right)"
    if k == "CLAUSEN":
        return f"\\mathrm{{Cl}}_{{{p[0]}}}({_frac_latex(p[1])})"
    if k == "NEGAPOLYGAMMA":
        return f"\\psi^{{(-{p[0]})}}\\!\\left({_latex_frac(p[1])}\\right)"
    if k == "LOG_OF":
        body = _latex_frac(p[0])
        if p[1] == 0:
            return f"\\log {body}"
        pi_part = "\\pi" if p[1] == 1 else f"\\pi^{{{p[1]}}}"
        return f"\\log\\left({body} {pi_part}\\right)"
    raise ValueError(k)


def _latex_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q.numerator < 0 else ""
    return f"{sign}\\tfrac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _render_term(mono: Monomial, coeff: Fraction, fmt: str) -> str:
    c = abs(coeff)
    if fmt == "TEXT":
        parts = []
        for atom, exp in mono.factors:
            base = _atom_text(atom)
            parts.append(base if exp == 1 else f"{base}^{exp}")
        if not parts:
            return _frac_str(c)
        body = "*".join(parts)
        return body if c == 1 else f"{_frac_str(c)}*{body}"
    parts = []
    for atom, exp in mono.factors:
        base = _atom_latex(atom)
        if exp != 1:
            wrapped = base if atom.kind in ("PI", "CATALAN", "GAMMA") else f"\\left({base}\\right)"
            base = f"{wrapped}^{{{exp}}}"
        parts.append(base)
    if not parts:
        return _latex_frac(c)
    body = " \\, ".join(parts)
    return body if c == 1 else f"{_latex_frac(c)} {body}"


def log_term(coeff, q, pi_exp: int = 0) -> ClosedForm:
    """coeff * log(q * pi^pi_exp) normalized onto primitive log atoms.

    The dyadic part of q becomes LOG2, pi powers become LOG_PI, and any
    non-dyadic residue r stays as a LOG_OF(r) atom.
    """
    coeff = Fraction(coeff)
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log argument must be positive")
    v2 = 0
    num, den = q.numerator, q.denominator
    while num % 2 == 0:
        num //= 2
        v2 += 1
    while den % 2 == 0:
        den //= 2
        v2 -= 1
    residue = Fraction(num, den)
    cf = ClosedForm()
    if v2:
        cf = cf.add(ClosedForm.single(coeff * v2, [(Atom.log2(), 1)]))
    if pi_exp:
        cf = cf.add(ClosedForm.single(coeff * pi_exp, [(Atom.log_pi(), 1)]))
    if residue != 1:
        cf = cf.add(ClosedForm.single(coeff, [(Atom.log_of(residue, 0), 1)]))
    return cf
