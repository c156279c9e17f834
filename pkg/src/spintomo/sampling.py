"""Seeded random inputs for tests and verification batteries."""
from __future__ import annotations

import numpy as np

from .su2 import dim
from .tomography import PhasePoint

__all__ = [
    "random_axes",
    "random_rotation_matrix",
    "random_density_matrix",
    "random_operator",
    "random_phase_points",
]


def random_axes(rng: np.random.Generator, size=()) -> np.ndarray:
    """Uniform points on the unit sphere, shape ``size + (3,)``."""
    size = (size,) if np.isscalar(size) else tuple(size)
    v = rng.normal(size=size + (3,))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_rotation_matrix(rng: np.random.Generator) -> np.ndarray:
    """Haar-random proper rotation of R^3."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_operator(twice_j: int, rng: np.random.Generator) -> np.ndarray:
    d = dim(twice_j)
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def random_density_matrix(twice_j: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank state from a Ginibre matrix, ``G G^+ / Tr``."""
    g = random_operator(twice_j, rng)
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_phase_points(twice_j: int, rng: np.random.Generator, size=(), extended: bool = False) -> PhasePoint:
    """Random projections in ``[-j, j]`` (``[-j-1, j+1]`` if extended) with random axes."""
    top = twice_j + 2 if extended else twice_j
    twice_m = rng.choice(np.arange(top, -top - 1, -2), size=size)
    return PhasePoint(twice_m, random_axes(rng, size))
