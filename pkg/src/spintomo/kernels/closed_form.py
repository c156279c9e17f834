"""Closed-form (Chebyshev/Fourier) kernels built from the universal T and Q sums.

The kernels depend on the three axes only through

    a = 1 + n2.n3,   b = 1 + n3.n1,   c = 1 + n1.n2,
    z = 1 + n1.n2 + n2.n3 + n3.n1 - i n1.(n2 x n3)

so each kernel is a polynomial of total degree <= 2j in (a, b, c, z) whose
coefficients depend on the projections.  Two evaluation routes exist:

* :func:`universal_T` / :func:`universal_Q` sum the terms one by one for a
  single point (weak compositions enumerated with pruning, compensated sum);
* :class:`_PolynomialTable` collects the same terms into exact rational
  coefficient tables once per spin and evaluates them on arrays of points.
"""
from __future__ import annotations

import functools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..su2 import check_parity
from ..tomography import QUANTIZER_SHIFTS, PhasePoint

__all__ = [
    "binomial_real",
    "weak_compositions",
    "geometry",
    "universal_T",
    "universal_Q",
    "kernel_explicit",
    "dual_kernel",
    "delta_kernel",
    "intertwine_kernel",
]

_SHIFT_WEIGHT = {s: Fraction(c).limit_denominator() for s, c in QUANTIZER_SHIFTS}


def binomial_real(r, q: int):
    """Generalised binomial ``r (r-1) ... (r-q+1) / q!``; zero for ``q < 0``.

    Exact (an ``int`` or ``Fraction``) when ``r`` is rational.
    """
    if q < 0:
        return 0
    if isinstance(r, float) and not r.is_integer():
        out = 1.0
        for i in range(q):
            out *= (r - i) / (i + 1)
        return out
    r = Fraction(r)
    if r.denominator == 1:
        n = r.numerator
        if n >= 0:
            return math.comb(n, q)
        # (-n')(-n'-1)...: sign (-1)^q times C(q - n - 1, q)
        return (-1) ** q * math.comb(q - n - 1, q)
    out = Fraction(1)
    for i in range(q):
        out *= (r - i) / (i + 1)
    return out


def weak_compositions(total: int, parts: int, prune=None):
    """All tuples of ``parts`` non-negative integers summing to ``total``.

    ``prune(prefix)`` may return True to cut a branch early.
    """
    prefix = []

    def descend(remaining, slots):
        if slots == 1:
            prefix.append(remaining)
            if prune is None or not prune(prefix):
                yield tuple(prefix)
            prefix.pop()
            return
        for v in range(remaining + 1):
            prefix.append(v)
            if prune is None or not prune(prefix):
                yield from descend(remaining - v, slots - 1)
            prefix.pop()

    yield from descend(total, parts)


def geometry(n3, n2, n1):
    """The four building blocks ``(a, b, c, z)``; broadcasts over leading axes."""
    d23 = np.sum(n2 * n3, axis=-1)
    d31 = np.sum(n3 * n1, axis=-1)
    d12 = np.sum(n1 * n2, axis=-1)
    triple = np.sum(n1 * np.cross(n2, n3), axis=-1)
    return 1 + d23, 1 + d31, 1 + d12, 1 + d12 + d23 + d31 - 1j * triple


# offsets of p1..p8 in the three binomial lower indices (slots 1, 2, 3)
_T_OFFSETS = ((0, 1, 3, 4), (0, 1, 2, 5), (0, 2, 3, 6))
_Q_OFFSETS = ((0, 1), (0, 2))


def _head(twice_j: int, k: int) -> Fraction:
    return Fraction((-1) ** k * math.factorial(twice_j - k), math.factorial(k))


def _slot_binomial(twice_j: int, twice_mu: int, k: int, offset: int):
    # binomial with upper -j - mu + k - 1 and lower j - mu - k - offset
    return binomial_real(-(twice_j + twice_mu) // 2 + k - 1, (twice_j - twice_mu) // 2 - k - offset)


def _t_terms(twice_j, twice_mu3, twice_mu2, twice_mu1):
    """Yield ``(coefficient, (p5, p6, p7, p8))`` for the T sum at shifted projections.

    ``mu_i = m_i + s_i``; the ``1/(1-3s^2)`` factors are applied by the caller.
    """
    budgets = [(twice_j - mu) // 2 for mu in (twice_mu1, twice_mu2, twice_mu3)]
    for k in range(twice_j // 2 + 1):
        caps = [b - k for b in budgets]
        if min(caps) < 0:
            continue

        def prune(prefix, caps=caps):
            return any(sum(prefix[i] for i in offs if i < len(prefix)) > cap for offs, cap in zip(_T_OFFSETS, caps))

        head = _head(twice_j, k)
        for p in weak_compositions(twice_j - 2 * k, 8, prune):
            coef = head / math.prod(math.factorial(x) for x in p)
            coef *= Fraction(2) ** (p[0] - p[4] - p[5] - p[6] - 2 * p[7])
            for mu, offs in zip((twice_mu1, twice_mu2, twice_mu3), _T_OFFSETS):
                coef *= _slot_binomial(twice_j, mu, k, sum(p[i] for i in offs))
                if not coef:
                    break
            if coef:
                yield coef, (p[4], p[5], p[6], p[7])


def _q_terms(twice_j, twice_mu2, twice_mu1):
    budgets = [(twice_j - mu) // 2 for mu in (twice_mu1, twice_mu2)]
    for k in range(twice_j // 2 + 1):
        caps = [b - k for b in budgets]
        if min(caps) < 0:
            continue

        def prune(prefix, caps=caps):
            return any(sum(prefix[i] for i in offs if i < len(prefix)) > cap for offs, cap in zip(_Q_OFFSETS, caps))

        head = _head(twice_j, k)
        for p in weak_compositions(twice_j - 2 * k, 4, prune):
            coef = head / math.prod(math.factorial(x) for x in p)
            coef *= Fraction(2) ** (p[0] - p[3])
            for mu, offs in zip((twice_mu1, twice_mu2), _Q_OFFSETS):
                coef *= _slot_binomial(twice_j, mu, k, sum(p[i] for i in offs))
                if not coef:
                    break
            if coef:
                yield coef, p[3]


def _fsum_complex(values):
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _scalar_point(x: PhasePoint, twice_j: int):
    if x.twice_m.ndim or x.n.ndim != 1:
        raise ValueError("universal_T / universal_Q take single points; use the kernel functions for arrays")
    check_parity(twice_j, x.twice_m)
    return int(x.twice_m), x.n


def universal_T(twice_j: int, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint, s3: int, s2: int, s1: int) -> complex:
    """The universal three-point sum, evaluated term by term at a single point."""
    m3, n3 = _scalar_point(x3, twice_j)
    m2, n2 = _scalar_point(x2, twice_j)
    m1, n1 = _scalar_point(x1, twice_j)
    a, b, c, z = (complex(v) for v in geometry(n3, n2, n1))
    terms = (
        float(coef) * a ** e[0] * b ** e[1] * c ** e[2] * z ** e[3]
        for coef, e in _t_terms(twice_j, m3 + 2 * s3, m2 + 2 * s2, m1 + 2 * s1)
    )
    weight = float(_SHIFT_WEIGHT[s3] * _SHIFT_WEIGHT[s2] * _SHIFT_WEIGHT[s1])
    return weight * _fsum_complex(terms)


def universal_Q(twice_j: int, x2: PhasePoint, x1: PhasePoint, s2: int, s1: int) -> complex:
    """The universal two-point sum, evaluated term by term at a single point."""
    m2, n2 = _scalar_point(x2, twice_j)
    m1, n1 = _scalar_point(x1, twice_j)
    c = 1.0 + float(np.dot(n1, n2))
    terms = (float(coef) * c**e for coef, e in _q_terms(twice_j, m2 + 2 * s2, m1 + 2 * s1))
    weight = float(_SHIFT_WEIGHT[s2] * _SHIFT_WEIGHT[s1])
    return weight * _fsum_complex(terms)


class _PolynomialTable:
    """Exact coefficient table ``coef[i3, i2, i1, e]`` of a kernel polynomial.

    Projection indices cover ``2m = 2j + 2, 2j, ..., -2j - 2`` (the range on
    which a kernel can be non-zero); ``e`` enumerates monomials
    ``a^e5 b^e6 c^e7 z^e8`` (Q-type tables use only ``c``).
    """

    def __init__(self, twice_j: int, coefficients: dict, slots: int):
        self.twice_j = twice_j
        self.slots = slots
        monomials = sorted({e for per_m in coefficients.values() for e in per_m})
        width = 4 if slots == 3 else 1
        self.exponents = np.array(monomials, dtype=int).reshape(len(monomials), width)
        size = twice_j + 3
        table = np.zeros((size,) * slots + (max(len(monomials), 1),))
        where = {e: i for i, e in enumerate(monomials)}
        for idx, per_m in coefficients.items():
            for e, coef in per_m.items():
                table[idx + (where[e],)] = float(coef)
        self.table = table

    def index(self, twice_m):
        idx = (self.twice_j + 2 - np.asarray(twice_m)) // 2
        valid = (idx >= 0) & (idx < self.twice_j + 3)
        return np.where(valid, idx, 0), valid

    def evaluate(self, twice_ms, blocks):
        """``twice_ms`` per slot (slot 3 first); ``blocks`` are the geometric bases."""
        idx, valid = zip(*(self.index(m) for m in twice_ms))
        mask = functools.reduce(np.logical_and, valid)
        shape = np.broadcast_shapes(*(np.shape(b) for b in blocks), *(np.shape(i) for i in idx))
        out = np.zeros(shape, dtype=complex)
        top = self.twice_j
        powers = [[np.ones_like(b)] for b in blocks]
        for pw, base in zip(powers, blocks):
            for _ in range(top):
                pw.append(pw[-1] * base)
        for e, expo in enumerate(self.exponents):
            coef = self.table[idx + (e,)]
            if not np.any(coef):
                continue
            mono = coef
            for pw, p in zip(powers, expo):
                if p:
                    mono = mono * pw[p]
            out += mono
        return np.where(mask, out, 0.0)


def _mu_range(twice_j):
    return range(twice_j + 4, -twice_j - 5, -2)


@lru_cache(maxsize=None)
def _t_table(twice_j: int) -> dict:
    """Exact T sums (without the 1/(1-3s^2) weights) keyed by shifted projections."""
    out = {}
    for mu3 in _mu_range(twice_j):
        for mu2 in _mu_range(twice_j):
            for mu1 in _mu_range(twice_j):
                acc = {}
                for coef, e in _t_terms(twice_j, mu3, mu2, mu1):
                    acc[e] = acc.get(e, 0) + coef
                if any(acc.values()):
                    out[(mu3, mu2, mu1)] = acc
    return out


@lru_cache(maxsize=None)
def _q_table(twice_j: int) -> dict:
    out = {}
    for mu2 in _mu_range(twice_j):
        for mu1 in _mu_range(twice_j):
            acc = {}
            for coef, e in _q_terms(twice_j, mu2, mu1):
                acc[(e,)] = acc.get((e,), 0) + coef
            if any(acc.values()):
                out[(mu2, mu1)] = acc
    return out


def _m_range(twice_j):
    return list(enumerate(range(twice_j + 2, -twice_j - 3, -2)))


def _assemble(twice_j, base, slots, shift_slots, prefactor):
    """Sum ``prefactor * prod w(s) * base(m + s)`` over shifts on the given slots."""
    coefficients = {}
    for key in np.ndindex(*(twice_j + 3,) * slots):
        ms = [_m_range(twice_j)[i][1] for i in key]
        acc = {}
        for shifts in np.ndindex(*(3,) * len(shift_slots)):
            mu = list(ms)
            weight = Fraction(prefactor)
            for slot, sidx in zip(shift_slots, shifts):
                s = sidx - 1
                mu[slot] += 2 * s
                weight *= _SHIFT_WEIGHT[s]
            for e, coef in base.get(tuple(mu), {}).items():
                acc[e] = acc.get(e, 0) + weight * coef
        acc = {e: v for e, v in acc.items() if v}
        if acc:
            coefficients[key] = acc
    return _PolynomialTable(twice_j, coefficients, slots)


@lru_cache(maxsize=None)
def _kernel_table(twice_j: int, family: str) -> _PolynomialTable:
    d = twice_j + 1
    if family == "star":
        return _assemble(twice_j, _t_table(twice_j), 3, (0, 1), d * d)
    if family == "dual":
        return _assemble(twice_j, _t_table(twice_j), 3, (2,), d)
    if family == "delta":
        return _assemble(twice_j, _q_table(twice_j), 2, (0,), d)
    if family == "o->d":
        return _assemble(twice_j, _q_table(twice_j), 2, (0, 1), d * d)
    if family == "d->o":
        return _assemble(twice_j, _q_table(twice_j), 2, (), 1)
    raise ValueError(f"unknown kernel family {family!r}")


def _three_point(family, twice_j, x3, x2, x1):
    for x in (x3, x2, x1):
        check_parity(twice_j, x.twice_m)
    blocks = geometry(x3.n, x2.n, x1.n)
    value = _kernel_table(twice_j, family).evaluate((x3.twice_m, x2.twice_m, x1.twice_m), blocks)
    return value if value.ndim else complex(value)


def _two_point(family, twice_j, x2, x1):
    for x in (x2, x1):
        check_parity(twice_j, x.twice_m)
    c = 1 + np.sum(x1.n * x2.n, axis=-1)
    value = _kernel_table(twice_j, family).evaluate((x2.twice_m, x1.twice_m), (c,))
    return value if value.ndim else complex(value)


def kernel_explicit(twice_j: int, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint):
    """Star-product kernel ``(2j+1)^2 sum_{s3,s2} T(..., s1=0)``; broadcasts."""
    return _three_point("star", twice_j, x3, x2, x1)


def dual_kernel(twice_j: int, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint):
    """Dual star-product kernel ``(2j+1) sum_{s1} T(..., s3=0, s2=0)``."""
    return _three_point("dual", twice_j, x3, x2, x1)


def delta_kernel(twice_j: int, x2: PhasePoint, x1: PhasePoint):
    """Unity kernel on tomograms, ``(2j+1) sum_{s2} Q(..., s1=0)``."""
    return _two_point("delta", twice_j, x2, x1)


def intertwine_kernel(direction: str, twice_j: int, x2: PhasePoint, x1: PhasePoint):
    """Symbol-conversion kernels.

    ``"o->d"`` maps ordinary symbols to dual ones (``Tr(D D)``); ``"d->o"``
    maps dual symbols back (``Tr(U U)``).
    """
    if direction not in ("o->d", "d->o"):
        raise ValueError("direction must be 'o->d' or 'd->o'")
    return _two_point(direction, twice_j, x2, x1)
