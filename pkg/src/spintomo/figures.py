"""Kernel grids over the direction of ``n1`` at fixed remaining arguments.

Each figure fixes the other points and scans ``n1(theta, phi)`` over a
``theta x phi`` grid; rows carry the grid angles and the complex value.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .kernels import delta_kernel, kernel_explicit
from .tomography import PhasePoint

__all__ = ["FigureSpec", "FIGURES", "normalized_axis", "figure_grid"]

_R2, _R3 = math.sqrt(2), math.sqrt(3)


def normalized_axis(v, tol: float = 1e-10) -> np.ndarray:
    """Unit vector along ``v``; warns when ``|v|`` is off from 1 by more than ``tol``."""
    v = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("zero vector has no direction")
    if abs(norm - 1.0) > tol:
        warnings.warn(f"axis {v.tolist()} has norm {norm:.12g}; normalizing", stacklevel=2)
    return v / norm


@dataclass(frozen=True)
class FigureSpec:
    kind: str  # "delta" (two-point) or "star" (three-point)
    twice_j: int
    twice_m: tuple  # (m2, m1) or (m3, m2, m1), doubled
    axes: tuple  # fixed axes: (n2,) or (n3, n2)


FIGURES = {
    "fig1a": FigureSpec("delta", 1, (-1, 1), ((0.0, -_R3 / 2, 0.5),)),
    "fig1b": FigureSpec("delta", 2, (2, 0), ((-1 / (2 * _R2), _R3 / (2 * _R2), 1 / _R2),)),
    # the second axis as given has squared norm 5/4 and is normalized on use
    "fig1c_e": FigureSpec("star", 1, (1, 1, 1), ((-0.5, -_R3 / 2, 0.0), (-_R3 / (2 * _R2), -_R3 / (2 * _R2), -1 / _R2))),
    "fig1d_f": FigureSpec("star", 2, (-2, 2, 0), ((0.0, 1.0, 0.0), (0.5, -0.5, 1 / _R2))),
}


def fixed_points(spec: FigureSpec):
    """The fixed phase-space points of a figure, axes normalized."""
    return tuple(PhasePoint(m, normalized_axis(n)) for m, n in zip(spec.twice_m, spec.axes))


def scan_points(spec: FigureSpec, n_theta: int = 90, n_phi: int = 180):
    """``theta`` (endpoints included), ``phi`` (periodic) and the scanned points ``x1``."""
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return tt, pp, PhasePoint.from_angles(spec.twice_m[-1], tt, pp)


def figure_grid(figure_id: str, n_theta: int = 90, n_phi: int = 180):
    """Return ``(theta, phi, values, metadata)`` for one figure; arrays have shape ``(n_theta, n_phi)``."""
    if figure_id not in FIGURES:
        raise ValueError(f"unknown figure id {figure_id!r}; choose from {sorted(FIGURES)}")
    spec = FIGURES[figure_id]
    tt, pp, x1 = scan_points(spec, n_theta, n_phi)
    fixed = fixed_points(spec)
    if spec.kind == "delta":
        values = delta_kernel(spec.twice_j, fixed[0], x1)
    else:
        values = kernel_explicit(spec.twice_j, fixed[0], fixed[1], x1)
    values = np.broadcast_to(values, tt.shape)
    meta = {
        "figure": figure_id,
        "kernel": spec.kind,
        "twice_j": spec.twice_j,
        "twice_m": list(spec.twice_m),
        "fixed_axes": [p.n.tolist() for p in fixed],
        "n_theta": n_theta,
        "n_phi": n_phi,
    }
    return tt, pp, values, meta
