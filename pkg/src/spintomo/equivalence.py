"""The Clebsch-Gordan/Racah form of the kernel and its residuals.

The Clebsch-Gordan kernel and the Chebyshev-derived closed form agree for
spin 1/2 only.  From spin 1 on they differ pointwise by a residual that
integrates to zero against every pair of tomographic symbols, so both
define the same star product.  For spin 1 the residual and the matching
quantizer correction are available in closed form.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .coefficients import clebsch_gordan, wigner_3j, wigner_6j
from .kernels.closed_form import kernel_explicit
from .su2 import axis_angles, check_parity, dim, index_of, rotation_operator, wigner_small_d
from .tomography import PhasePoint, SphereQuadrature, operator_grid

__all__ = [
    "ResidualReport",
    "kernel_cg",
    "delta_j1",
    "quantizer_residual_j1",
    "matrix_unit_symbols",
    "sum_rule_check",
]


def _lm_index(L: int, M: int) -> int:
    return L * L + L + M


@lru_cache(maxsize=None)
def _coupling_tensor(twice_j: int) -> np.ndarray:
    """``C[(L1,M1), (L2,M2), (L3,M3)]``: phase, weight, 6j and 3j combined."""
    size = (twice_j + 1) ** 2
    out = np.zeros((size, size, size))
    top = twice_j  # L runs over 0..2j
    for L1 in range(top + 1):
        for L2 in range(top + 1):
            for L3 in range(top + 1):
                six = wigner_6j(2 * L2, 2 * L3, 2 * L1, twice_j, twice_j, twice_j)
                if six == 0.0:
                    continue
                weight = (-1) ** (L1 + L2 + L3) * math.sqrt((2 * L1 + 1) * (2 * L2 + 1) ** 3 * (2 * L3 + 1) ** 3)
                for M2 in range(-L2, L2 + 1):
                    for M3 in range(-L3, L3 + 1):
                        M1 = -M2 - M3
                        if abs(M1) > L1:
                            continue
                        three = wigner_3j(2 * L2, 2 * L3, 2 * L1, 2 * M2, 2 * M3, 2 * M1)
                        out[_lm_index(L1, M1), _lm_index(L2, M2), _lm_index(L3, M3)] = weight * six * three
    out.flags.writeable = False
    return out


def _slot_features(twice_j: int, x: PhasePoint) -> np.ndarray:
    """``F[..., (L,M)] = <j m; j -m | L 0> d^L_{0,-M}(theta) exp(i M phi)``."""
    theta, phi = axis_angles(x.n)
    twice_m = np.asarray(x.twice_m)
    idx = index_of(twice_j, twice_m)
    valid = (idx >= 0) & (idx <= twice_j)
    idx = np.where(valid, idx, 0)
    shape = np.broadcast_shapes(twice_m.shape, np.shape(theta))
    out = np.zeros(shape + ((twice_j + 1) ** 2,), dtype=complex)
    for L in range(twice_j + 1):
        cg = np.array([clebsch_gordan(twice_j, tm, twice_j, -tm, 2 * L, 0) for tm in range(twice_j, -twice_j - 1, -2)])
        cg_at = np.where(valid, cg[idx], 0.0)
        row = wigner_small_d(2 * L, theta)[..., L, :]  # m' = 0 row; column L + M holds -M
        for M in range(-L, L + 1):
            out[..., _lm_index(L, M)] = cg_at * row[..., L + M] * np.exp(1j * M * phi)
    return out


def kernel_cg(twice_j: int, x3: PhasePoint, x2: PhasePoint, x1: PhasePoint):
    """Star-product kernel assembled from Clebsch-Gordan, 3j and 6j coefficients; broadcasts.

    Zero whenever a projection lies outside ``[-j, j]``.
    """
    for x in (x3, x2, x1):
        check_parity(twice_j, x.twice_m)
    f1, f2, f3 = (_slot_features(twice_j, x) for x in (x1, x2, x3))
    total = np.einsum("abc,...a,...b,...c->...", _coupling_tensor(twice_j), f1, f2, f3, optimize=True)
    exponent = (twice_j - np.asarray(x1.twice_m) - np.asarray(x2.twice_m) - np.asarray(x3.twice_m)) // 2
    value = np.where(exponent % 2, -1.0, 1.0) * total
    return value if np.ndim(value) else complex(value)


def delta_j1(x3: PhasePoint, x2: PhasePoint, x1: PhasePoint):
    """Closed-form spin-1 gap ``kernel_explicit - kernel_cg``; broadcasts.

    Depends on the axes only through their dot products and triple product.
    """
    for x in (x3, x2, x1):
        check_parity(2, x.twice_m)
    m1, m2, m3 = (np.asarray(x.twice_m) / 2 for x in (x1, x2, x3))
    n1, n2, n3 = x1.n, x2.n, x3.n
    a12 = np.sum(n1 * n2, axis=-1)
    a23 = np.sum(n2 * n3, axis=-1)
    a31 = np.sum(n3 * n1, axis=-1)
    t = np.sum(n1 * np.cross(n2, n3), axis=-1)

    def p(m):
        return 3 * m * m - 2

    def q(a):
        return 3 * a * a - 1

    b = 5 - 3 * (a12**2 + a23**2 + a31**2) - 9 * t**2
    value = (
        q(a23) / 36
        - 1j / 8 * m1 * a23 * t
        + m1 * m2 / 8 * (3 * a23 * a31 - a12)
        + m1 * m3 / 8 * (3 * a12 * a23 - a31)
        + p(m1) / 144 * (b + 4 * q(a12) + 4 * q(a31))
        + (p(m2) + p(m3)) / 36 * (5 * q(a23) + 2)
        - 5j / 8 * m1 * (p(m2) + p(m3)) * a23 * t
        - 3j / 8 * p(m1) * (m2 * a31 + m3 * a12) * t
        + m1 * m2 * p(m3) / 4 * a12
        + m1 * p(m2) * m3 / 4 * a31
        + p(m2) * p(m3) / 36
        + p(m1) * p(m2) / 144 * (2 * q(a31) + 5 * b)
        + p(m1) * p(m3) / 144 * (2 * q(a12) + 5 * b)
        + 5 / 72 * p(m1) * p(m2) * p(m3) * (q(a12) + q(a31))
    )
    # out-of-range projections: both kernels vanish
    inside = (np.abs(m1) <= 1) & (np.abs(m2) <= 1) & (np.abs(m3) <= 1)
    value = np.where(inside, value, 0.0)
    return value if np.ndim(value) else complex(value)


def quantizer_residual_j1(x) -> np.ndarray:
    """Spin-1 quantizer correction ``(3m^2-2)/6 I + R diag(1,-2,1) R^+ / 6``.

    Integrates to zero against every tomogram, so subtracting it from the
    quantizer leaves reconstruction unchanged.
    """
    if not isinstance(x, PhasePoint):
        x = PhasePoint(*x)
    check_parity(2, x.twice_m)
    m = np.asarray(x.twice_m) / 2
    r = rotation_operator(2, x.n)
    shape = np.broadcast_shapes(m.shape, r.shape[:-2])
    traceless = (r * np.array([1.0, -2.0, 1.0])) @ np.swapaxes(r.conj(), -1, -2) / 6
    return np.broadcast_to(((3 * m * m - 2) / 6)[..., None, None] * np.eye(3) + traceless, shape + (3, 3)).copy()


@dataclass(frozen=True)
class ResidualReport:
    """Largest pointwise and integrated gap between two kernels."""

    twice_j: int
    max_pointwise_gap: float
    max_integrated_gap: float
    samples: int

    def __post_init__(self):
        if self.max_pointwise_gap < 0 or self.max_integrated_gap < 0:
            raise ValueError("gaps are non-negative")

    def to_dict(self) -> dict:
        return asdict(self)


def matrix_unit_symbols(twice_j: int, quad: SphereQuadrature) -> np.ndarray:
    """Symbols of all ``|a><b|`` on the flattened grid, shape ``(d*d, d*N)``.

    Row ``a*d + b`` holds ``Tr(|a><b| U(x)) = U(x)[b, a]``.
    """
    d = dim(twice_j)
    ops = operator_grid(twice_j, quad).reshape(d * quad.size, d, d)
    return np.transpose(ops, (2, 1, 0)).reshape(d * d, -1)


def sum_rule_check(
    twice_j: int,
    quad: SphereQuadrature | None = None,
    targets: PhasePoint | None = None,
    kernel_a=kernel_explicit,
    kernel_b=kernel_cg,
) -> ResidualReport:
    """Compare two kernels pointwise and after integration against all matrix-unit pairs.

    For every target ``x1`` the gap ``K_a - K_b`` is tabulated on the grid
    in ``(x3, x2)`` and contracted with the weighted symbols of every pair of
    matrix units.  ``targets`` default to the grid points of the first node.
    """
    quad = quad if quad is not None else SphereQuadrature.for_spin(twice_j)
    quad.require(twice_j)
    d = dim(twice_j)
    m = np.repeat(np.arange(twice_j, -twice_j - 1, -2), quad.size)
    grid = PhasePoint(m, np.tile(quad.vectors, (d, 1)))
    if targets is None:
        targets = PhasePoint(np.arange(twice_j, -twice_j - 1, -2), quad.vectors[0])
    targets = targets.reshape(int(np.prod(targets.shape)))
    weighted = matrix_unit_symbols(twice_j, quad) * np.tile(quad.weights, d)
    size = grid.shape[0]
    x3, x2 = grid.reshape(size, 1), grid.reshape(1, size)
    pointwise = integrated = 0.0
    for t in range(targets.shape[0]):
        gap = np.asarray(kernel_a(twice_j, x3, x2, targets[t])) - np.asarray(kernel_b(twice_j, x3, x2, targets[t]))
        pointwise = max(pointwise, float(np.abs(gap).max()))
        integrated = max(integrated, float(np.abs(weighted @ gap @ weighted.T).max()))
    return ResidualReport(twice_j, pointwise, integrated, targets.shape[0])
