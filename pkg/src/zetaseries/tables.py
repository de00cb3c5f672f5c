"""Reference tables: the worked example sums, with their printed values.

Each entry pairs a concrete series (a SeriesSpec) with the exact closed
form quoted for it, grouped into tables 2 through 7 matching the
catalog families (2: A, 3: B, 4: C, 5: D, 6: E, 7: F).  Entries whose
printed value fails numeric verification carry a corrected form next to
the literal one, so the discrepancy is adjudicated rather than patched
silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .closedform import Atom, ClosedForm, log_term
from .families import SeriesSpec

__all__ = ["TableEntry", "TABLE_SECTIONS", "table_entries", "all_entries"]

F = Fraction
HALF = F(1, 2)
QUARTER = F(1, 4)


@dataclass(frozen=True)
class TableEntry:
    section: int
    label: str
    lhs: SeriesSpec
    printed: ClosedForm
    corrected: Optional[ClosedForm] = None  # set only when the print fails

    @property
    def rhs(self) -> ClosedForm:
        return self.corrected if self.corrected is not None else self.printed


def _cf(*pieces) -> ClosedForm:
    acc = ClosedForm()
    for piece in pieces:
        acc = acc.add(piece)
    return acc


def _u(c) -> ClosedForm:
    return ClosedForm.unit(F(c))


def _log2(c) -> ClosedForm:
    return ClosedForm.single(F(c), [(Atom.log2(), 1)])


def _logpi(c) -> ClosedForm:
    return ClosedForm.single(F(c), [(Atom.log_pi(), 1)])


def _logpihalf(c) -> ClosedForm:
    # log(pi/2)
    return log_term(F(c), HALF, 1)


def _log2pi2(c) -> ClosedForm:
    # log(2 pi^2)
    return log_term(F(c), 2, 2)


def _gam(c) -> ClosedForm:
    return ClosedForm.single(F(c), [(Atom.gamma(), 1)])


def _z(c, j, e) -> ClosedForm:
    return ClosedForm.single(F(c), [(Atom.zeta(j), 1), (Atom.pi(), e)])


def _b(c, j, e) -> ClosedForm:
    return ClosedForm.single(F(c), [(Atom.beta(j), 1), (Atom.pi(), e)])


def _la(c) -> ClosedForm:
    return ClosedForm.single(F(c), [(Atom.glaisher_log(), 1)])


def _zd3(c) -> ClosedForm:
    return ClosedForm.single(F(c), [(Atom.zeta_deriv(-3, F(1)), 1)])


def _zd214(c) -> ClosedForm:
    return ClosedForm.single(F(c), [(Atom.zeta_deriv(-2, QUARTER), 1)])


def _lg14(c) -> ClosedForm:
    # log Gamma(1/4)
    return ClosedForm.single(F(c), [(Atom.negapolygamma(1, QUARTER), 1)])


def _even_series(factors: Sequence[tuple[int, int]], z: Fraction, start: int = 0) -> SeriesSpec:
    return SeriesSpec("ZETA_EVEN", start, tuple(factors), z, F(1))


def _odd_series(factors: Sequence[tuple[int, int]], z: Fraction) -> SeriesSpec:
    return SeriesSpec("ZETA_ODD", 1, tuple(factors), z, F(1))


def _entries_section_2() -> list[TableEntry]:
    e = _even_series
    return [
        TableEntry(2, "zeta(2n) / ((n+1) 4^n)", e([(1, 1)], HALF),
                   _cf(_log2(-1), _z(F(7, 2), 3, -2))),
        TableEntry(2, "zeta(2n) / ((2n+3) 4^n)", e([(2, 3)], HALF),
                   _cf(_log2(F(-1, 2)), _z(F(9, 4), 3, -2))),
        TableEntry(2, "zeta(2n) / ((n+2) 4^n)", e([(1, 2)], HALF),
                   _cf(_log2(-1), _z(9, 3, -2), _z(F(-93, 2), 5, -4))),
        TableEntry(2, "zeta(2n) / ((n+1) 16^n)", e([(1, 1)], QUARTER),
                   _cf(_log2(F(-1, 2)), _z(F(35, 4), 3, -2), _b(-4, 2, -1))),
        TableEntry(2, "zeta(2n) / ((2n+3) 16^n)", e([(2, 3)], QUARTER),
                   _cf(_log2(F(-1, 4)), _z(F(9, 8), 3, -2), _b(-3, 2, -1), _b(24, 4, -3))),
    ]


def _entries_section_3() -> list[TableEntry]:
    def e(factors, z):
        return _even_series([(1, 0)] + factors, z, start=1)

    return [
        TableEntry(3, "zeta(2n) / (n (2n+1) 4^n)", e([(2, 1)], HALF),
                   _cf(_logpi(1), _u(-1))),
        TableEntry(3, "zeta(2n) / (n (2n+1) 16^n)", e([(2, 1)], QUARTER),
                   _cf(_b(2, 2, -1), _u(-1), _logpihalf(1))),
        TableEntry(3, "zeta(2n) / (n (2n+3) 4^n)", e([(2, 3)], HALF),
                   _cf(_z(F(-3, 2), 3, -2), _logpi(F(1, 3)), _u(F(-1, 9)))),
        # printed with -log(pi); the identity chain gives +log(pi)
        TableEntry(3, "zeta(2n) / (n (2n+1) (n+1) 4^n)", e([(2, 1), (1, 1)], HALF),
                   _cf(_z(F(7, 2), 3, -2), _logpi(-1), _u(F(-3, 2))),
                   corrected=_cf(_z(F(7, 2), 3, -2), _logpi(1), _u(F(-3, 2)))),
        TableEntry(3, "zeta(2n) / (n (2n+1) (n+1) (2n+3) 4^n)", e([(2, 1), (1, 1), (2, 3)], HALF),
                   _cf(_z(2, 3, -2), _logpi(F(1, 3)), _u(F(-11, 18)))),
        TableEntry(3, "zeta(2n) / (n (2n+1) (n+1) (n+2) 4^n)", e([(2, 1), (1, 1), (1, 2)], HALF),
                   _cf(_z(2, 3, -2), _z(F(31, 4), 5, -4), _logpi(F(1, 2)), _u(F(-7, 8)))),
        TableEntry(3, "zeta(2n) / (n (2n+1)...(2n+5) 4^n)",
                   e([(2, 1), (2, 2), (2, 3), (2, 4), (2, 5)], HALF),
                   _cf(_z(F(1, 6), 3, -2), _z(-1, 5, -4), _logpi(F(1, 120)), _u(F(-137, 7200)))),
        TableEntry(3, "zeta(2n) / (n (n+1) 16^n)", e([(1, 1)], QUARTER),
                   _cf(_z(F(-35, 4), 3, -2), _b(4, 2, -1), _logpihalf(1), _u(F(-1, 2)))),
        TableEntry(3, "zeta(2n) / (n (2n+1) (n+1) 16^n)", e([(2, 1), (1, 1)], QUARTER),
                   _cf(_z(F(35, 4), 3, -2), _logpihalf(1), _u(F(-3, 2)))),
        TableEntry(3, "zeta(2n) / (n (2n+1) (2n+3) 16^n)", e([(2, 1), (2, 3)], QUARTER),
                   _cf(_z(F(3, 8), 3, -2), _b(8, 4, -3), _logpihalf(F(1, 3)), _u(F(-4, 9)))),
        TableEntry(3, "zeta(2n) / (n (2n+1)...(2n+4) 16^n)",
                   e([(2, 1), (2, 2), (2, 3), (2, 4)], QUARTER),
                   _cf(_z(2, 3, -2), _z(F(-527, 32), 5, -4), _logpihalf(F(1, 24)), _u(F(-25, 288)))),
    ]


def _entries_section_4() -> list[TableEntry]:
    e = _even_series
    return [
        TableEntry(4, "zeta(2n) / ((2n+1) (n+1) 4^n)", e([(2, 1), (1, 1)], HALF),
                   _z(F(-7, 2), 3, -2)),
        TableEntry(4, "zeta(2n) / ((2n+1) (n+1) 16^n)", e([(2, 1), (1, 1)], QUARTER),
                   _cf(_b(2, 2, -1), _z(F(-35, 4), 3, -2))),
        TableEntry(4, "zeta(2n) / ((2n+1) (2n+3) 4^n)", e([(2, 1), (2, 3)], HALF),
                   _z(F(-9, 8), 3, -2)),
        TableEntry(4, "zeta(2n) / ((2n+1) (n+2) 4^n)", e([(2, 1), (1, 2)], HALF),
                   _cf(_z(-3, 3, -2), _z(F(31, 2), 5, -4))),
        TableEntry(4, "zeta(2n) / ((2n+1) (2n+2) (2n+3) 4^n)", e([(2, 1), (2, 2), (2, 3)], HALF),
                   _z(F(-5, 8), 3, -2)),
        TableEntry(4, "zeta(2n) / ((2n+1) (n+1) (n+2) 4^n)", e([(2, 1), (1, 1), (1, 2)], HALF),
                   _cf(_z(F(-1, 2), 3, -2), _z(F(-31, 2), 5, -4))),
        TableEntry(4, "zeta(2n) / ((2n+1)...(2n+5) 4^n)",
                   e([(2, 1), (2, 2), (2, 3), (2, 4), (2, 5)], HALF),
                   _cf(_z(F(-1, 6), 3, -2), _z(F(49, 32), 5, -4))),
        TableEntry(4, "zeta(2n) / ((2n+1) (2n+3) 16^n)", e([(2, 1), (2, 3)], QUARTER),
                   _cf(_z(F(-9, 16), 3, -2), _b(1, 2, -1), _b(-12, 4, -3))),
        TableEntry(4, "zeta(2n) / ((2n+1) (2n+2) (2n+3) 16^n)", e([(2, 1), (2, 2), (2, 3)], QUARTER),
                   _cf(_z(F(-61, 16), 3, -2), _b(12, 4, -3))),
        TableEntry(4, "zeta(2n) / ((2n+1)...(2n+4) 16^n)",
                   e([(2, 1), (2, 2), (2, 3), (2, 4)], QUARTER),
                   _cf(_z(-2, 3, -2), _z(F(527, 16), 5, -4), _b(-4, 4, -3))),
    ]


def _entries_section_5() -> list[TableEntry]:
    o = _odd_series
    return [
        TableEntry(5, "zeta(2n+1) / ((n+1) 4^n)", o([(1, 1)], HALF),
                   _cf(_u(-2), _gam(-1), _la(12), _log2(F(-1, 3)))),
        TableEntry(5, "zeta(2n+1) / ((2n+3) 4^n)", o([(2, 3)], HALF),
                   _cf(_u(F(-1, 2)), _gam(F(-1, 3)), _la(4), _log2(F(-1, 3)))),
        TableEntry(5, "zeta(2n+1) / ((2n+5) 4^n)", o([(2, 5)], HALF),
                   _cf(_u(F(-199, 180)), _gam(F(-1, 5)), _la(8), _zd3(-56), _log2(F(-3, 5)))),
        TableEntry(5, "zeta(2n+1) / ((2n+2) 16^n)", o([(2, 2)], QUARTER),
                   _cf(_u(-2), _gam(F(-1, 2)), _la(18), _log2pi2(1), _lg14(-4))),
        TableEntry(5, "zeta(2n+1) / ((2n+3) 16^n)", o([(2, 3)], QUARTER),
                   _cf(_zd214(-64), _u(F(1, 2)), _la(4), _log2pi2(1), _gam(F(-1, 3)),
                       _z(F(3, 2), 3, -2), _lg14(-4))),
    ]


def _entries_section_6() -> list[TableEntry]:
    o = _odd_series
    return [
        TableEntry(6, "zeta(2n+1) / ((2n+1) (n+1) 4^n)", o([(2, 1), (1, 1)], HALF),
                   _cf(_la(-12), _u(2), _gam(-1), _log2(F(7, 3)))),
        TableEntry(6, "zeta(2n+1) / ((2n+1) (2n+3) 4^n)", o([(2, 1), (2, 3)], HALF),
                   _cf(_la(-2), _u(F(1, 4)), _gam(F(-1, 3)), _log2(F(2, 3)))),
        # printed with -(89/90) log 2; the identity chain gives +(89/90) log 2
        TableEntry(6, "zeta(2n+1) / ((2n+1) (n+2) 4^n)", o([(2, 1), (1, 2)], HALF),
                   _cf(_la(-4), _zd3(20), _u(F(19, 36)), _gam(F(-1, 2)), _log2(F(-89, 90))),
                   corrected=_cf(_la(-4), _zd3(20), _u(F(19, 36)), _gam(F(-1, 2)),
                                 _log2(F(89, 90)))),
        TableEntry(6, "zeta(2n+1) / ((2n+1) (n+1) (2n+3) 4^n)", o([(2, 1), (1, 1), (2, 3)], HALF),
                   _cf(_la(-8), _u(F(3, 2)), _gam(F(-1, 3)), _log2(1))),
        TableEntry(6, "zeta(2n+1) / ((2n+1) (n+1) (n+2) 4^n)", o([(2, 1), (1, 1), (1, 2)], HALF),
                   _cf(_la(-8), _zd3(-20), _u(F(53, 36)), _gam(F(-1, 2)), _log2(F(121, 90)))),
        TableEntry(6, "zeta(2n+1) / ((2n+1)...(2n+5) 4^n)",
                   o([(2, 1), (2, 2), (2, 3), (2, 4), (2, 5)], HALF),
                   _cf(_la(F(-2, 3)), _zd3(F(8, 3)), _u(F(551, 4320)), _gam(F(-1, 120)),
                       _log2(F(1, 24)))),
        TableEntry(6, "zeta(2n+1) / ((2n+1) (n+1) 16^n)", o([(2, 1), (1, 1)], QUARTER),
                   _cf(_la(-36), _u(4), _gam(-1), _log2(8))),
        TableEntry(6, "zeta(2n+1) / ((2n+1) (2n+3) 16^n)", o([(2, 1), (2, 3)], QUARTER),
                   _cf(_zd214(32), _la(-2), _z(F(-3, 4), 3, -2), _u(F(-1, 4)), _gam(F(-1, 3)),
                       _log2(2))),
        TableEntry(6, "zeta(2n+1) / ((2n+1)...(2n+4) 16^n)",
                   o([(2, 1), (2, 2), (2, 3), (2, 4)], QUARTER),
                   _cf(_la(-8), _zd3(45), _u(F(187, 144)), _gam(F(-1, 24)), _log2(F(41, 60)))),
    ]


def _entries_section_7() -> list[TableEntry]:
    o = _odd_series
    return [
        TableEntry(7, "zeta(2n+1) / ((n+1) (2n+3) 4^n)", o([(1, 1), (2, 3)], HALF),
                   _cf(_la(4), _u(-1), _gam(F(-1, 3)), _log2(F(1, 3)))),
        TableEntry(7, "zeta(2n+1) / ((n+1) (n+2) 4^n)", o([(1, 1), (1, 2)], HALF),
                   _cf(_zd3(60), _u(F(-5, 12)), _gam(F(-1, 2)), _log2(F(19, 30)))),
        TableEntry(7, "zeta(2n+1) / ((n+1) (2n+5) 4^n)", o([(1, 1), (2, 5)], HALF),
                   _cf(_la(F(-4, 3)), _zd3(F(112, 3)), _u(F(19, 270)), _gam(F(-1, 5)),
                       _log2(F(13, 45)))),
        TableEntry(7, "zeta(2n+1) / ((n+1) (2n+3) (n+2) 4^n)", o([(1, 1), (2, 3), (1, 2)], HALF),
                   _cf(_la(8), _zd3(-60), _u(F(-19, 12)), _gam(F(-1, 6)), _log2(F(1, 30)))),
        TableEntry(7, "zeta(2n+1) / ((2n+2) (2n+3) (2n+5) 4^n)", o([(2, 2), (2, 3), (2, 5)], HALF),
                   _cf(_la(F(4, 3)), _zd3(F(-28, 3)), _u(F(-289, 1080)), _gam(F(-1, 30)),
                       _log2(F(1, 90)))),
        TableEntry(7, "zeta(2n+1) / ((2n+2)...(2n+5) 4^n)", o([(2, 2), (2, 3), (2, 4), (2, 5)], HALF),
                   _cf(_la(F(2, 3)), _zd3(F(-17, 3)), _u(F(-277, 2160)), _gam(F(-1, 120)),
                       _log2(F(-1, 360)))),
        TableEntry(7, "zeta(2n+1) / ((n+1) (2n+3) 16^n)", o([(1, 1), (2, 3)], QUARTER),
                   _cf(_zd214(128), _la(28), _z(-3, 3, -2), _u(-5), _gam(F(-1, 3)))),
        TableEntry(7, "zeta(2n+1) / ((n+1) (n+2) 16^n)", o([(1, 1), (1, 2)], QUARTER),
                   _cf(_zd214(384), _la(24), _zd3(540), _z(-9, 3, -2), _u(F(-41, 12)),
                       _gam(F(-1, 2)), _log2(F(1, 5)))),
        TableEntry(7, "zeta(2n+1) / ((2n+2) (2n+3) (2n+4) 16^n)", o([(2, 2), (2, 3), (2, 4)], QUARTER),
                   _cf(_zd214(-32), _la(8), _zd3(-135), _z(F(3, 4), 3, -2), _u(F(-79, 48)),
                       _gam(F(-1, 24)), _log2(F(-1, 20)))),
    ]


_BUILDERS = {
    2: _entries_section_2,
    3: _entries_section_3,
    4: _entries_section_4,
    5: _entries_section_5,
    6: _entries_section_6,
    7: _entries_section_7,
}

TABLE_SECTIONS = tuple(sorted(_BUILDERS))

_cache: dict[int, list[TableEntry]] = {}


def table_entries(section: int) -> list[TableEntry]:
    """Entries of one reference table (sections 2 through 7)."""
    if section not in _BUILDERS:
        raise ValueError(f"no reference table for section {section}")
    if section not in _cache:
        _cache[section] = _BUILDERS[section]()
    return list(_cache[section])


def all_entries() -> list[TableEntry]:
    out: list[TableEntry] = []
    for section in TABLE_SECTIONS:
        out.extend(table_entries(section))
    return out
