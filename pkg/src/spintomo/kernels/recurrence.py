"""Raising the spin of the star-product kernel by one half.

``K_{j+1/2}`` at projections ``m`` is a combination of ``K_j`` at the eight
points ``m + (+-1/2, +-1/2, +-1/2)`` with geometry-dependent weights, minus
a multiple of ``K_{j-1/2}`` at ``m``.  The lower kernels must be evaluated
with the quantizer slots extended one step past ``|m| = j`` (which
:func:`kernel_explicit` and :func:`kernel_trace` both do).
"""
from __future__ import annotations

import itertools

import numpy as np

from ..tomography import PhasePoint
from .closed_form import geometry, kernel_explicit

__all__ = ["shift_weights", "kernel_recurrence_step", "scalar_kernel", "recurrence_kernel"]

_PAIRS = ((0, 1), (0, 2), (1, 2))  # slots ordered (x1, x2, x3)


def shift_weights(n3, n2, n1) -> dict:
    """Weight of each doubled shift ``(d1, d2, d3)`` in the bracketed sum.

    Single-shift, pairwise ``(1 + n_k.n_l)`` and full complex-axis groups
    are merged per shift; the values broadcast over the axes' leading shape.
    """
    a, b, c, z = geometry(n3, n2, n1)
    pair_dot = {(0, 1): c - 1, (0, 2): b - 1, (1, 2): a - 1}
    out = {}

    def add(shift, weight):
        out[shift] = out.get(shift, 0) + weight

    add((1, 1, 1), 1.0)
    for k, l in _PAIRS:
        h = 3 - k - l
        for nu in (-1, 1):
            shift = [0, 0, 0]
            shift[k] = shift[l] = 1
            shift[h] = nu
            add(tuple(shift), 0.5 * (-1) ** ((1 + nu) // 2))
        for nk, nl in itertools.product((-1, 1), repeat=2):
            shift = [0, 0, 0]
            shift[h], shift[k], shift[l] = 1, nk, nl
            add(tuple(shift), 0.25 * (1 + pair_dot[(k, l)]) * (-1) ** ((2 + nk + nl) // 2))
    for nus in itertools.product((-1, 1), repeat=3):
        add(nus, 0.125 * z * (-1) ** ((3 + sum(nus)) // 2))
    return out


def kernel_recurrence_step(twice_j: int, kernel_j, kernel_prev, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint):
    """``K_{j+1/2}(x3, x2, x1)`` from evaluators of ``K_j`` and ``K_{j-1/2}``.

    ``twice_j`` is the spin of ``kernel_j`` (at least 0); the points carry
    projections of spin ``j + 1/2``.  ``kernel_prev`` is ignored when j = 0.
    """
    j = twice_j / 2
    total = 0
    for (d1, d2, d3), weight in shift_weights(x3.n, x2.n, x1.n).items():
        total = total + weight * kernel_j(twice_j, x3.shifted(d3), x2.shifted(d2), x1.shifted(d1))
    out = 2 * ((2 * j + 2) / (2 * j + 1)) ** 2 * total
    if twice_j >= 1:
        out = out - ((2 * j + 2) / (2 * j)) ** 2 * kernel_prev(twice_j - 1, x3, x2, x1)
    return out if np.ndim(out) else complex(out)


def scalar_kernel(twice_j: int, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint):
    """Spin-0 kernel with the quantizer slots extended to ``m = +-1``."""
    if twice_j != 0:
        raise ValueError("scalar_kernel is the spin-0 kernel")

    def slot(twice_m):
        twice_m = np.asarray(twice_m)
        return np.where(twice_m == 0, 1.0, np.where(np.abs(twice_m) == 2, -0.5, 0.0))

    value = slot(x3.twice_m) * slot(x2.twice_m) * (np.asarray(x1.twice_m) == 0)
    value = np.broadcast_to(value, np.broadcast_shapes(value.shape, x3.n.shape[:-1], x2.n.shape[:-1], x1.n.shape[:-1]))
    return value.astype(complex) if value.ndim else complex(value)


def recurrence_kernel(twice_j: int):
    """Evaluator ``kernel(twice_j, x3, x2, x1)`` built by chaining the step from spins 0 and 1/2."""
    chain = {0: scalar_kernel, 1: kernel_explicit}
    for t in range(2, twice_j + 1):
        lower, lowest = chain[t - 1], chain[t - 2]

        def step(tj, x3, x2, x1, lower=lower, lowest=lowest):
            return kernel_recurrence_step(tj - 1, lower, lowest, x3, x2, x1)

        chain[t] = step
    if twice_j not in chain:
        raise ValueError(f"twice_j must be non-negative, got {twice_j}")
    return chain[twice_j]
