"""Spin-j matrix representations of su(2).

Conventions used throughout the package:

* Spin quantum numbers are passed as doubled integers (``twice_j = 2j``,
  ``twice_m = 2m``) so half-integers never live in floats.
* The basis of every spin-j space is ordered by *descending* projection,
  ``|j, j>, |j, j-1>, ..., |j, -j>``.  Row/column ``i`` carries ``m = j - i``.
* ``R(n) = exp(-i theta (n_perp . J))`` with ``n_perp = (-sin phi, cos phi, 0)``,
  which equals ``exp(-i phi Jz) exp(-i theta Jy) exp(i phi Jz)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "UnitAxis",
    "dim",
    "projections",
    "index_of",
    "check_parity",
    "axis_angles",
    "as_vectors",
    "angular_momentum",
    "wigner_small_d",
    "rotation_operator",
    "axis_exponential",
]

_UNIT_TOL = 1e-14


def dim(twice_j: int) -> int:
    if twice_j < 0:
        raise ValueError(f"twice_j must be non-negative, got {twice_j}")
    return int(twice_j) + 1


def projections(twice_j: int) -> np.ndarray:
    """Doubled projections ``2m`` in basis order (descending)."""
    return np.arange(twice_j, -twice_j - 1, -2, dtype=int)


def index_of(twice_j: int, twice_m):
    """Basis index of ``2m``; no range check, so out-of-range m gives an out-of-range index."""
    return (twice_j - np.asarray(twice_m)) // 2


def check_parity(twice_j: int, twice_m) -> None:
    if np.any((np.asarray(twice_m) - twice_j) % 2):
        raise ValueError(f"projection 2m={twice_m} has the wrong parity for 2j={twice_j}")


@dataclass(frozen=True)
class UnitAxis:
    """Point on the unit sphere, ``n = (cos phi sin theta, sin phi sin theta, cos theta)``."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([math.cos(self.phi) * st, math.sin(self.phi) * st, math.cos(self.theta)])

    @classmethod
    def from_vector(cls, v, normalize_tol: float = 1e-10) -> "UnitAxis":
        v = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise ValueError("zero vector has no direction")
        if abs(norm - 1.0) > normalize_tol:
            raise ValueError(f"axis norm {norm} differs from 1 by more than {normalize_tol}")
        v = v / norm
        theta = math.acos(min(1.0, max(-1.0, v[2])))
        phi = math.atan2(v[1], v[0])
        return cls(theta, phi)


def as_vectors(n) -> np.ndarray:
    """Cartesian unit vectors, shape ``(..., 3)``, from a UnitAxis or array-like."""
    if isinstance(n, UnitAxis):
        return n.vector
    v = np.asarray(n, dtype=float)
    if v.shape[-1:] != (3,):
        raise ValueError(f"expected trailing dimension 3, got shape {v.shape}")
    return v


def axis_angles(n):
    """Polar and azimuthal angles of unit vectors (or a UnitAxis)."""
    if isinstance(n, UnitAxis):
        return np.float64(n.theta), np.float64(n.phi)
    v = as_vectors(n)
    theta = np.arccos(np.clip(v[..., 2], -1.0, 1.0))
    phi = np.arctan2(v[..., 1], v[..., 0])
    return theta, phi


@lru_cache(maxsize=None)
def angular_momentum(twice_j: int):
    """``(Jx, Jy, Jz)`` for spin ``j = twice_j / 2`` in the descending-m basis."""
    d = dim(twice_j)
    m = projections(twice_j) / 2.0
    j = twice_j / 2.0
    jplus = np.zeros((d, d), dtype=complex)
    for i in range(1, d):
        # J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits one row up
        jplus[i - 1, i] = math.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    jz = np.diag(m).astype(complex)
    for a in (jx, jy, jz):
        a.flags.writeable = False
    return jx, jy, jz


@lru_cache(maxsize=None)
def _small_d_terms(twice_j: int):
    """Flattened term list of the finite Wigner-d sum.

    Returns ``(coef, cos_power, sin_power, scatter)`` where ``scatter`` maps
    each term onto the flattened ``d*d`` matrix entry it contributes to.
    """
    d = dim(twice_j)
    coefs, pc, ps, target = [], [], [], []
    for a, tmp in enumerate(projections(twice_j)):
        for b, tm in enumerate(projections(twice_j)):
            jpm, jmm = (twice_j + tm) // 2, (twice_j - tm) // 2
            jpmp, jmmp = (twice_j + tmp) // 2, (twice_j - tmp) // 2
            shift = (tmp - tm) // 2
            numer = (
                math.factorial(jpm) * math.factorial(jmm) * math.factorial(jpmp) * math.factorial(jmmp)
            )
            for s in range(max(0, -shift), min(jmmp, jpm) + 1):
                den = (
                    math.factorial(s)
                    * math.factorial(jmmp - s)
                    * math.factorial(jpm - s)
                    * math.factorial(shift + s)
                )
                mag = math.sqrt(float(Fraction(numer, den * den)))
                coefs.append(-mag if s % 2 else mag)
                pc.append(twice_j - shift - 2 * s)
                ps.append(shift + 2 * s)
                target.append(a * d + b)
    scatter = np.zeros((len(coefs), d * d))
    scatter[np.arange(len(coefs)), target] = 1.0
    return np.array(coefs), np.array(pc), np.array(ps), scatter


def wigner_small_d(twice_j: int, beta) -> np.ndarray:
    """Real matrix ``d^j_{m'm}(beta)``; broadcasts over ``beta``.

    Evaluated from the explicit finite sum with ``(-sin(beta/2))`` raised to
    ``m' - m + 2s``, which is the same as ``<jm'|exp(-i beta Jy)|jm>``.
    """
    beta = np.asarray(beta, dtype=float)
    d = dim(twice_j)
    coef, pc, ps, scatter = _small_d_terms(twice_j)
    c = np.cos(beta / 2)[..., None]
    s = -np.sin(beta / 2)[..., None]
    vals = coef * c**pc * s**ps
    return (vals @ scatter).reshape(beta.shape + (d, d))


def rotation_operator(twice_j: int, n) -> np.ndarray:
    """``R(n)`` with ``R Jz R^+ = n.J``; broadcasts over leading axes of ``n``."""
    theta, phi = axis_angles(n)
    m = projections(twice_j) / 2.0
    phase = np.exp(-1j * np.asarray(phi)[..., None] * m)
    return phase[..., :, None] * wigner_small_d(twice_j, theta) * phase.conj()[..., None, :]


def axis_exponential(twice_j: int, n, angle) -> np.ndarray:
    """``exp(-i (n.J) angle)`` by conjugating a diagonal exponential with ``R(n)``."""
    r = rotation_operator(twice_j, n)
    m = projections(twice_j) / 2.0
    diag = np.exp(-1j * np.asarray(angle, dtype=float)[..., None] * m)
    return (r * diag[..., None, :]) @ np.swapaxes(r.conj(), -1, -2)
