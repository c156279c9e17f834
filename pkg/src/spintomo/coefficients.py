"""Clebsch-Gordan coefficients, Wigner 3j/6j symbols and Wigner D elements.

All angular momenta are doubled integers.  Inputs that violate a triangle
or projection selection rule give ``0.0`` rather than raising, because the
kernel sums sweep over every (L, M) combination and rely on that.

The Racah sums are carried out in exact rational arithmetic; a single
square root and float conversion happens at the very end.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .su2 import wigner_small_d

__all__ = ["clebsch_gordan", "wigner_3j", "wigner_6j", "wigner_D_element"]

_fact = math.factorial


def _triangle(ta: int, tb: int, tc: int) -> bool:
    return (
        ta >= 0
        and tb >= 0
        and tc >= 0
        and (ta + tb + tc) % 2 == 0
        and abs(ta - tb) <= tc <= ta + tb
    )


def _projection_ok(tj: int, tm: int) -> bool:
    return abs(tm) <= tj and (tj - tm) % 2 == 0


def _delta_sq(ta: int, tb: int, tc: int) -> Fraction:
    # triangle coefficient; arguments already checked
    return Fraction(
        _fact((ta + tb - tc) // 2) * _fact((ta - tb + tc) // 2) * _fact((-ta + tb + tc) // 2),
        _fact((ta + tb + tc) // 2 + 1),
    )


def _signed_sqrt(square: Fraction, sign: int) -> float:
    return sign * math.sqrt(float(square)) if square else 0.0


@lru_cache(maxsize=None)
def clebsch_gordan(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int) -> float:
    """``<j1 m1; j2 m2 | J M>`` in the Condon-Shortley convention."""
    if tm1 + tm2 != tM or not _triangle(tj1, tj2, tJ):
        return 0.0
    if not (_projection_ok(tj1, tm1) and _projection_ok(tj2, tm2) and _projection_ok(tJ, tM)):
        return 0.0
    a = (tj1 + tj2 - tJ) // 2
    b = (tj1 - tm1) // 2
    c = (tj2 + tm2) // 2
    e = (tJ - tj2 + tm1) // 2
    f = (tJ - tj1 - tm2) // 2
    total = Fraction(0)
    for k in range(max(0, -e, -f), min(a, b, c) + 1):
        den = _fact(k) * _fact(a - k) * _fact(b - k) * _fact(c - k) * _fact(e + k) * _fact(f + k)
        total += Fraction(-1 if k % 2 else 1, den)
    pref = (tJ + 1) * _delta_sq(tj1, tj2, tJ)
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tJ, tM)):
        pref *= _fact((tj + tm) // 2) * _fact((tj - tm) // 2)
    return _signed_sqrt(pref * total * total, 1 if total >= 0 else -1)


@lru_cache(maxsize=None)
def wigner_3j(tj1: int, tj2: int, tj3: int, tm1: int, tm2: int, tm3: int) -> float:
    """Wigner 3j symbol from the Clebsch-Gordan coefficient."""
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    cg = clebsch_gordan(tj1, tm1, tj2, tm2, tj3, -tm3)
    if cg == 0.0:
        return 0.0
    phase = -1.0 if ((tj1 - tj2 - tm3) // 2) % 2 else 1.0
    return phase * cg / math.sqrt(tj3 + 1)


@lru_cache(maxsize=None)
def wigner_6j(tj1: int, tj2: int, tj3: int, tj4: int, tj5: int, tj6: int) -> float:
    """Wigner 6j symbol ``{j1 j2 j3; j4 j5 j6}`` from the Racah formula."""
    triads = ((tj1, tj2, tj3), (tj1, tj5, tj6), (tj4, tj2, tj6), (tj4, tj5, tj3))
    if not all(_triangle(*t) for t in triads):
        return 0.0
    lows = [sum(t) // 2 for t in triads]
    highs = [
        (tj1 + tj2 + tj4 + tj5) // 2,
        (tj2 + tj3 + tj5 + tj6) // 2,
        (tj3 + tj1 + tj6 + tj4) // 2,
    ]
    total = Fraction(0)
    for t in range(max(lows), min(highs) + 1):
        den = 1
        for lo in lows:
            den *= _fact(t - lo)
        for hi in highs:
            den *= _fact(hi - t)
        total += Fraction((-1 if t % 2 else 1) * _fact(t + 1), den)
    pref = Fraction(1)
    for t in triads:
        pref *= _delta_sq(*t)
    return _signed_sqrt(pref * total * total, 1 if total >= 0 else -1)


def wigner_D_element(twice_l: int, twice_mp: int, twice_m: int, alpha, beta, gamma):
    """``D^l_{m'm}(alpha, beta, gamma) = exp(-i m' alpha) d^l_{m'm}(beta) exp(-i m gamma)``."""
    if not (_projection_ok(twice_l, twice_mp) and _projection_ok(twice_l, twice_m)):
        return 0j
    row, col = (twice_l - twice_mp) // 2, (twice_l - twice_m) // 2
    d = wigner_small_d(twice_l, beta)[..., row, col]
    value = np.exp(-0.5j * twice_mp * np.asarray(alpha)) * d * np.exp(-0.5j * twice_m * np.asarray(gamma))
    return value if np.ndim(value) else complex(value)
