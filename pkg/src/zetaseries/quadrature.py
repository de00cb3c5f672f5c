"""Tanh-sinh (double-exponential) quadrature.

Used by the oracle paths and the integral-identity checks.  The
transform x = tanh((pi/2) sinh t) pushes endpoint singularities (log or
algebraic) into super-exponentially small weights, so integrands such
as log(2 sin(phi/2)) near 0 need no special casing.

Nodes are cached per (precision, level).  Each node stores its distance
``delta`` to the interval endpoint rather than the abscissa itself,
which keeps evaluations right next to an endpoint fully accurate.
"""

from __future__ import annotations

import threading
from typing import Callable

import gmpy2
from gmpy2 import mpfr

__all__ = ["integrate", "QuadratureError"]

_MIN_LEVEL = 6
_MAX_LEVEL = 12

_node_cache: dict[tuple[int, int], list[tuple[mpfr, mpfr]]] = {}
_node_lock = threading.Lock()


class QuadratureError(ArithmeticError):
    """Raised when the level schedule is exhausted without convergence."""


def _level_nodes(prec: int, level: int) -> list[tuple[mpfr, mpfr]]:
    """Positive-axis nodes new at ``level`` as (delta, weight) pairs.

    ``delta`` = 1 - tanh((pi/2) sinh t) is the distance of the abscissa
    from the endpoint of (-1, 1); the weight includes the step h.
    Level 0 holds the [t = 0] node plus all integer-t nodes; level k > 0
    holds the odd multiples of h = 2^-k.
    """
    key = (prec, level)
    hit = _node_cache.get(key)
    if hit is not None:
        return hit
    with _node_lock:
        hit = _node_cache.get(key)
        if hit is not None:
            return hit
        saved = gmpy2.get_context()
        gmpy2.set_context(gmpy2.context(precision=prec))
        try:
            half_pi = gmpy2.const_pi() / 2
            # The weight is ~ 2 pi h cosh(t) * delta, so nodes run until
            # delta < floor^4: then w * delta^(a-1) is negligible for any
            # integrable endpoint singularity f ~ delta^(a-1) with a >= 1/4.
            floor = mpfr(2) ** (-4 * (prec + 16))
            nodes: list[tuple[mpfr, mpfr]] = []
            h = mpfr(1) / (1 << level) if level > 0 else mpfr(1)
            j = 0 if level == 0 else 1
            step = 1 if level == 0 else 2
            while True:
                t = j * h
                u = half_pi * gmpy2.sinh(t)
                ch = gmpy2.cosh(u)
                # delta = 1 - tanh(u) = 2 / (e^(2u) + 1), computed directly.
                delta = 2 / (gmpy2.exp(2 * u) + 1)
                w = h * half_pi * gmpy2.cosh(t) / (ch * ch)
                nodes.append((delta, w))
                if j > 0 and (delta == 0 or delta < floor):
                    break
                j += step
                if j > (1 << (level + 6)):  # safety stop, never reached
                    break
            _node_cache[key] = nodes
        finally:
            gmpy2.set_context(saved)
        return nodes


def integrate(
    f: Callable[[mpfr], mpfr],
    a,
    b,
    digits: int,
    *,
    min_level: int = _MIN_LEVEL,
    max_level: int = _MAX_LEVEL,
) -> mpfr:
    """Integrate ``f`` over (a, b) to about ``digits`` decimal digits.

    Runs the fixed level schedule, doubling the node density each level,
    and stops once two successive levels agree to the requested
    tolerance.  ``f`` is evaluated at open-interval points only.
    """
    prec = max(gmpy2.get_context().precision, int((digits + 10) * 3.33) + 10)
    saved = gmpy2.get_context()
    gmpy2.set_context(gmpy2.context(precision=prec))
    try:
        a = mpfr(a)
        b = mpfr(b)
        if a == b:
            return mpfr(0)
        half_width = (b - a) / 2
        tol = mpfr(10) ** (-digits)

        def node_sum(level: int) -> mpfr:
            acc = mpfr(0)
            for delta, w in _level_nodes(prec, level):
                off = half_width * delta
                acc += w * f(a + off)
                if delta != 1:  # t = 0 maps to the midpoint once
                    acc += w * f(b - off)
            return acc

        total = node_sum(0)
        estimate = total * half_width
        previous = None
        for level in range(1, max_level + 1):
            total = total / 2 + node_sum(level)
            previous, estimate = estimate, total * half_width
            if level >= min_level:
                err = abs(estimate - previous)
                if err <= tol * max(mpfr(1), abs(estimate)):
                    return estimate
        raise QuadratureError(
            f"tanh-sinh schedule exhausted at level {max_level} "
            f"(requested {digits} digits)"
        )
    finally:
        gmpy2.set_context(saved)
