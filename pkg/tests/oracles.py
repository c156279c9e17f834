"""Independent reference implementations used only by the tests.

Operators are built from ladder matrices and exponentiated through an
eigendecomposition, sharing no code with the package; coupling
coefficients come from sympy.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
from sympy import Rational
from sympy.physics.wigner import clebsch_gordan as sym_cg
from sympy.physics.wigner import wigner_3j as sym_3j
from sympy.physics.wigner import wigner_6j as sym_6j


def spin_matrices(twice_j):
    j = Fraction(twice_j, 2)
    ms = [j - k for k in range(twice_j + 1)]
    d = len(ms)
    jp = np.zeros((d, d))
    for col, m in enumerate(ms):
        if col > 0:
            jp[col - 1, col] = math.sqrt(float(j * (j + 1) - m * (m + 1)))
    jx = (jp + jp.T) / 2
    jy = (jp - jp.T) / 2j
    jz = np.diag([float(m) for m in ms])
    return jx, jy, jz


def expm_hermitian(h, t):
    """``exp(-i t h)`` for Hermitian ``h``."""
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * t * vals)) @ vecs.conj().T


def angles(n):
    n = np.asarray(n, dtype=float)
    return math.acos(max(-1.0, min(1.0, n[2]))), math.atan2(n[1], n[0])


def rotation(twice_j, n):
    jx, jy, _ = spin_matrices(twice_j)
    theta, phi = angles(n)
    return expm_hermitian(-math.sin(phi) * jx + math.cos(phi) * jy, theta)


def projector(twice_j, twice_m, n):
    d = twice_j + 1
    if abs(twice_m) > twice_j:
        return np.zeros((d, d), dtype=complex)
    r = rotation(twice_j, n)
    col = r[:, (twice_j - twice_m) // 2]
    return np.outer(col, col.conj())


def quantizer(twice_j, twice_m, n):
    return (twice_j + 1) * (
        projector(twice_j, twice_m, n) - 0.5 * projector(twice_j, twice_m + 2, n) - 0.5 * projector(twice_j, twice_m - 2, n)
    )


def kernel(twice_j, m3, n3, m2, n2, m1, n1):
    return complex(np.trace(quantizer(twice_j, m3, n3) @ quantizer(twice_j, m2, n2) @ projector(twice_j, m1, n1)))


def cg(tj1, tm1, tj2, tm2, tJ, tM):
    h = lambda x: Rational(x, 2)
    return float(sym_cg(h(tj1), h(tj2), h(tJ), h(tm1), h(tm2), h(tM)))


def three_j(*args):
    return float(sym_3j(*(Rational(a, 2) for a in args)))


def six_j(*args):
    return float(sym_6j(*(Rational(a, 2) for a in args)))


def triangle_triples(top):
    for a, b, c in itertools.product(range(top + 1), repeat=3):
        if (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b:
            yield a, b, c


def _binom(r, q):
    if q < 0:
        return 0.0
    out = 1.0
    for i in range(q):
        out *= (r - i) / (i + 1)
    return out


def _compositions(total, parts):
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        edges = (-1,) + cut + (total + parts - 1,)
        yield tuple(edges[i + 1] - edges[i] - 1 for i in range(parts))


def reference_T(twice_j, ms, axes, shifts):
    """Direct T sum over all 8-part compositions; ``ms``/``axes``/``shifts`` ordered (3, 2, 1)."""
    n3, n2, n1 = (np.asarray(n, dtype=float) for n in axes)
    a, b, c = 1 + n2 @ n3, 1 + n3 @ n1, 1 + n1 @ n2
    z = 1 + n1 @ n2 + n2 @ n3 + n3 @ n1 - 1j * (n1 @ np.cross(n2, n3))
    j = twice_j / 2
    mu3, mu2, mu1 = (m / 2 + s for m, s in zip(ms, shifts))
    weight = np.prod([1 / (1 - 3 * s * s) for s in shifts])
    total = 0j
    for k in range(twice_j // 2 + 1):
        for p in _compositions(twice_j - 2 * k, 8):
            p1, p2, p3, p4, p5, p6, p7, p8 = p
            term = (-1) ** k * math.factorial(twice_j - k) / math.factorial(k) / math.prod(map(math.factorial, p))
            term *= 2.0 ** (p1 - p5 - p6 - p7 - 2 * p8) * a**p5 * b**p6 * c**p7 * z**p8
            for mu, off in ((mu1, p1 + p2 + p4 + p5), (mu2, p1 + p2 + p3 + p6), (mu3, p1 + p3 + p4 + p7)):
                term *= _binom(-j - mu + k - 1, round(j - mu - k - off))
            total += term
    return weight * total


def reference_Q_by_reduction(twice_j, ms, axes, shifts):
    """T with the third binomial dropped and p2 = p5 = p6 = p8 = 0; ordered (2, 1)."""
    n2, n1 = (np.asarray(n, dtype=float) for n in axes)
    c = 1 + n1 @ n2
    j = twice_j / 2
    mu2, mu1 = (m / 2 + s for m, s in zip(ms, shifts))
    weight = np.prod([1 / (1 - 3 * s * s) for s in shifts])
    total = 0.0
    for k in range(twice_j // 2 + 1):
        for p1, p3, p4, p7 in _compositions(twice_j - 2 * k, 4):
            term = (-1) ** k * math.factorial(twice_j - k) / math.factorial(k)
            term /= math.factorial(p1) * math.factorial(p3) * math.factorial(p4) * math.factorial(p7)
            term *= 2.0 ** (p1 - p7) * c**p7
            term *= _binom(-j - mu1 + k - 1, round(j - mu1 - k - p1 - p4))
            term *= _binom(-j - mu2 + k - 1, round(j - mu2 - k - p1 - p3))
            total += term
    return weight * total
