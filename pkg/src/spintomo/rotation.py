"""Composition of three axis-angle rotations and the SU(2) irrep character.

Everything is written in half-angle trigonometry so that the composed
rotation is described by ``cos(Phi/2)`` and ``N sin(Phi/2)`` directly; the
character is then a Chebyshev polynomial of ``cos(Phi/2)`` and no arccos is
ever taken.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .su2 import as_vectors

__all__ = [
    "RotationTriple",
    "compose_cos_half_angle",
    "compose_axis_times_sin",
    "chebyshev_u",
    "character",
]

_DOMAIN_TOL = 1e-12
_UNIT_TOL = 1e-13  # on |n|^2, i.e. about 5e-14 on |n|


@dataclass(frozen=True)
class RotationTriple:
    """Rotations by ``phi_k`` about ``n_k``, applied in the order 1, 2, 3."""

    n1: np.ndarray
    n2: np.ndarray
    n3: np.ndarray
    phi1: object
    phi2: object
    phi3: object

    def __post_init__(self):
        for name in ("n1", "n2", "n3"):
            v = as_vectors(getattr(self, name))
            if np.any(np.abs(np.sum(v * v, axis=-1) - 1.0) > _UNIT_TOL):
                raise ValueError(f"{name} is not a unit vector")
            object.__setattr__(self, name, v)
        for name in ("phi1", "phi2", "phi3"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))

    def _half_angles(self):
        h = [self.phi1 / 2, self.phi2 / 2, self.phi3 / 2]
        return [np.cos(x) for x in h], [np.sin(x) for x in h]


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def compose_cos_half_angle(t: RotationTriple):
    (c1, c2, c3), (s1, s2, s3) = t._half_angles()
    n1, n2, n3 = t.n1, t.n2, t.n3
    value = (
        c1 * c2 * c3
        - _dot(n1, n2) * s1 * s2 * c3
        - _dot(n2, n3) * c1 * s2 * s3
        - _dot(n3, n1) * s1 * c2 * s3
        + _dot(n1, np.cross(n2, n3)) * s1 * s2 * s3
    )
    if np.any(np.abs(value) > 1 + _DOMAIN_TOL):
        raise ArithmeticError("composed cos(Phi/2) left [-1, 1]; inputs are not unit axes")
    return np.clip(value, -1.0, 1.0)


def compose_axis_times_sin(t: RotationTriple) -> np.ndarray:
    """Axis of the composed rotation scaled by ``sin(Phi/2)``, shape ``(..., 3)``."""
    (c1, c2, c3), (s1, s2, s3) = t._half_angles()
    n1, n2, n3 = t.n1, t.n2, t.n3

    def w(x):
        return np.asarray(x)[..., None]

    sss = w(s1 * s2 * s3)
    return (
        n1 * w(s1 * c2 * c3)
        + n2 * w(c1 * s2 * c3)
        + n3 * w(c1 * c2 * s3)
        - (n1 * w(_dot(n2, n3)) - n2 * w(_dot(n1, n3)) + n3 * w(_dot(n1, n2))) * sss
        - np.cross(n1, n2) * w(s1 * s2 * c3)
        - np.cross(n2, n3) * w(c1 * s2 * s3)
        - np.cross(n1, n3) * w(s1 * c2 * s3)
    )


def chebyshev_u(n: int, x):
    """Chebyshev polynomial of the second kind via the three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return cur if cur.ndim else float(cur)


def character(twice_j: int, cos_half_angle):
    """``chi_j = sum_m exp(i m Phi) = U_{2j}(cos(Phi/2))``."""
    x = np.asarray(cos_half_angle, dtype=float)
    if np.any(np.abs(x) > 1 + _DOMAIN_TOL):
        raise ValueError("cos(Phi/2) must lie in [-1, 1]")
    return chebyshev_u(twice_j, np.clip(x, -1.0, 1.0))
