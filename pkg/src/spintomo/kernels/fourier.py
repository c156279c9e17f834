"""Brute-force kernel from the Fourier transform of the SU(2) character.

Writing each projector as an average over rotation angles,
``U(m, n) = <exp(i m phi) exp(-i phi n.J)>_phi``, turns the kernel into a
triple angle average of the character of the composed rotation.  A uniform
periodic grid integrates the resulting trigonometric polynomial exactly once
it has more points than twice the highest frequency.
"""
from __future__ import annotations

import numpy as np

from ..rotation import RotationTriple, character, compose_cos_half_angle
from ..tomography import PhasePoint

__all__ = ["kernel_fourier"]


def kernel_fourier(twice_j: int, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint, grid: int = 64) -> complex:
    """Kernel at a single point by periodic quadrature over three rotation angles."""
    if any(np.ndim(x.twice_m) or x.n.ndim != 1 for x in (x3, x2, x1)):
        raise ValueError("kernel_fourier evaluates one point at a time")
    if abs(x1.twice_m) > twice_j:
        return 0j
    # for half-integer spin the character and exp(i m phi) both flip sign over 2 pi
    phi = 2 * np.pi * np.arange(grid) / grid
    p1, p2, p3 = np.meshgrid(phi, phi, phi, indexing="ij", sparse=True)
    chi = character(twice_j, compose_cos_half_angle(RotationTriple(x1.n, x2.n, x3.n, p1, p2, p3)))

    def factor(angle, twice_m, quantizer):
        # quantizer weight 1 - cos(phi) = 2 sin^2(phi/2) from the three shifted projectors
        w = np.exp(0.5j * twice_m * angle)
        return w * (1 - np.cos(angle)) if quantizer else w

    integrand = chi * factor(p1, x1.twice_m, False) * factor(p2, x2.twice_m, True) * factor(p3, x3.twice_m, True)
    return complex((twice_j + 1) ** 2 * integrand.mean())
