"""Star product of tomographic symbols through a three-point kernel.

Any kernel evaluator with the signature ``kernel(twice_j, x3, x2, x1)``
that broadcasts over :class:`PhasePoint` arrays can be plugged in.
"""
from __future__ import annotations

import numpy as np

from ..tomography import PhasePoint, SymbolTable

__all__ = ["kernel_block", "two_point_block", "star_product", "apply_two_point"]


def kernel_block(kernel, twice_j: int, grid: PhasePoint, x1: PhasePoint) -> np.ndarray:
    """``K[g3, g2] = kernel(x3=grid[g3], x2=grid[g2], x1)`` for one target point."""
    size = grid.shape[0]
    return np.asarray(kernel(twice_j, grid.reshape(size, 1), grid.reshape(1, size), x1))


def two_point_block(kernel, twice_j: int, grid: PhasePoint, targets: PhasePoint) -> np.ndarray:
    """``K[t, g] = kernel(x2=grid[g], x1=targets[t])``."""
    size, count = grid.shape[0], targets.shape[0]
    return np.asarray(kernel(twice_j, grid.reshape(1, size), targets.reshape(count, 1)))


def _target_points(f: SymbolTable, at):
    if at is None:
        return f.points(), True
    if at.twice_m.ndim > 1 or at.n.ndim > 2:
        raise ValueError("target points must be a flat array of points")
    return at.reshape(at.shape[0] if at.shape else 1), False


def star_product(f_a: SymbolTable, f_b: SymbolTable, kernel, at: PhasePoint | None = None):
    """``(f_a * f_b)(x1) = int int f_a(x3) f_b(x2) K(x3, x2, x1) dx2 dx3``.

    Returns a :class:`SymbolTable` on the input grid, or the values at the
    points ``at`` when given.
    """
    if not f_a.compatible(f_b):
        raise ValueError("symbols live on different grids")
    f_a.quad.require(f_a.twice_j)
    grid = f_a.points()
    w = f_a.flat_weights
    left = f_a.values.ravel() * w
    right = f_b.values.ravel() * w
    targets, whole_grid = _target_points(f_a, at)
    out = np.array(
        [left @ kernel_block(kernel, f_a.twice_j, grid, targets[t]) @ right for t in range(targets.shape[0])]
    )
    if whole_grid:
        return SymbolTable(f_a.twice_j, f_a.quad, out.reshape(f_a.values.shape))
    return out


def apply_two_point(f: SymbolTable, kernel, at: PhasePoint | None = None):
    """``g(x1) = int f(x2) K(x2, x1) dx2`` for a two-point kernel."""
    f.quad.require(f.twice_j)
    targets, whole_grid = _target_points(f, at)
    block = two_point_block(kernel, f.twice_j, f.points(), targets)
    out = block @ (f.values.ravel() * f.flat_weights)
    if whole_grid:
        return SymbolTable(f.twice_j, f.quad, out.reshape(f.values.shape))
    return out
