"""Kernels as traces of operator products; the ground truth for the closed forms."""
from __future__ import annotations

import numpy as np

from ..tomography import PhasePoint, dequantizer, quantizer

__all__ = ["kernel_trace", "dual_kernel_trace", "delta_kernel_trace", "intertwine_kernel_trace"]


def _trace_product(*ops):
    out = ops[0]
    for op in ops[1:-1]:
        out = out @ op
    value = np.einsum("...ab,...ba->...", out, ops[-1])
    return value if np.ndim(value) else complex(value)


def kernel_trace(twice_j: int, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint):
    """``Tr(D(x3) D(x2) U(x1))``."""
    return _trace_product(quantizer(twice_j, x3), quantizer(twice_j, x2), dequantizer(twice_j, x1))


def dual_kernel_trace(twice_j: int, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint):
    """``Tr(U(x3) U(x2) D(x1))``."""
    return _trace_product(dequantizer(twice_j, x3), dequantizer(twice_j, x2), quantizer(twice_j, x1))


def delta_kernel_trace(twice_j: int, x2: PhasePoint, x1: PhasePoint):
    """``Tr(D(x2) U(x1))``."""
    return _trace_product(quantizer(twice_j, x2), dequantizer(twice_j, x1))


def intertwine_kernel_trace(direction: str, twice_j: int, x2: PhasePoint, x1: PhasePoint):
    if direction == "o->d":
        return _trace_product(quantizer(twice_j, x2), quantizer(twice_j, x1))
    if direction == "d->o":
        return _trace_product(dequantizer(twice_j, x2), dequantizer(twice_j, x1))
    raise ValueError("direction must be 'o->d' or 'd->o'")
