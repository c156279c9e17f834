"""Dequantizers, quantizers, tomograms and tomographic symbols.

A phase-space point is ``x = (m, n)``.  The integration measure is
``sum_m (1/4pi) int dOmega``, realised by :class:`SphereQuadrature` whose
weights already include the ``1/4pi`` and sum to one.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .su2 import UnitAxis, as_vectors, check_parity, dim, index_of, projections, rotation_operator

__all__ = [
    "QUANTIZER_SHIFTS",
    "PhasePoint",
    "SphereQuadrature",
    "SymbolTable",
    "validate_density_matrix",
    "dequantizer",
    "quantizer",
    "operator_grid",
    "tomogram",
    "reconstruct",
    "symbol",
    "dual_symbol",
    "symbol_table",
    "operator_from_symbols",
    "average_via_dual",
    "phase_space_integrate",
]

# s -> 1 / (1 - 3 s^2)
QUANTIZER_SHIFTS = ((-1, -0.5), (0, 1.0), (1, -0.5))


@dataclass(frozen=True)
class PhasePoint:
    """Projection ``2m`` and unit axis ``n``; both may be arrays that broadcast.

    ``n`` is stored as Cartesian vectors with a trailing axis of length 3.
    """

    twice_m: object
    n: object

    def __post_init__(self):
        object.__setattr__(self, "twice_m", np.asarray(self.twice_m, dtype=int))
        object.__setattr__(self, "n", as_vectors(self.n))

    @classmethod
    def from_angles(cls, twice_m, theta, phi) -> "PhasePoint":
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        n = np.stack([np.cos(phi) * np.sin(theta), np.sin(phi) * np.sin(theta), np.cos(theta)], axis=-1)
        return cls(twice_m, n)

    def shifted(self, delta_twice_m) -> "PhasePoint":
        return PhasePoint(self.twice_m + np.asarray(delta_twice_m, dtype=int), self.n)

    @property
    def shape(self) -> tuple:
        return np.broadcast_shapes(self.twice_m.shape, self.n.shape[:-1])

    def reshape(self, *shape) -> "PhasePoint":
        full = self.shape
        m = np.broadcast_to(self.twice_m, full).reshape(shape)
        n = np.broadcast_to(self.n, full + (3,)).reshape(tuple(shape) + (3,))
        return PhasePoint(m, n)

    def __getitem__(self, index) -> "PhasePoint":
        full = self.shape
        return PhasePoint(np.broadcast_to(self.twice_m, full)[index], np.broadcast_to(self.n, full + (3,))[index])


@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """Gauss-Legendre in ``cos(theta)`` times a uniform rule in ``phi``.

    ``L`` polar nodes and ``M`` azimuthal nodes integrate spherical harmonics
    of degree up to ``min(2L - 1, M - 1)`` exactly.  Nodes are flattened with
    the azimuthal index running fastest.
    """

    L: int
    M: int
    theta: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def gauss_legendre(cls, L: int, M: int) -> "SphereQuadrature":
        if L < 1 or M < 1:
            raise ValueError("quadrature orders must be positive")
        x, w = np.polynomial.legendre.leggauss(L)
        theta = np.arccos(x)
        phi = 2 * np.pi * np.arange(M) / M
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        weights = np.repeat(w / 2, M) / M
        return cls(L, M, tt.ravel(), pp.ravel(), weights)

    @classmethod
    def for_spin(cls, twice_j: int, L: int | None = None, M: int | None = None) -> "SphereQuadrature":
        """Default orders ``L = 2j + 2`` and ``M = 4j + 2``."""
        return cls.gauss_legendre(L if L is not None else twice_j + 2, M if M is not None else 2 * twice_j + 2)

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def vectors(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.stack([np.cos(self.phi) * st, np.sin(self.phi) * st, np.cos(self.theta)], axis=-1)

    def resolves(self, twice_j: int) -> bool:
        """Exact for products of two spin-j tomographic functions (degree 4j)."""
        return self.L >= twice_j + 1 and self.M >= 2 * twice_j + 1

    def require(self, twice_j: int) -> None:
        if not self.resolves(twice_j):
            raise ValueError(
                f"quadrature L={self.L}, M={self.M} under-resolves spin 2j={twice_j}; "
                f"need L >= {twice_j + 1} and M >= {2 * twice_j + 1}"
            )

    def rotations(self, twice_j: int) -> np.ndarray:
        if twice_j not in self._cache:
            r = rotation_operator(twice_j, self.vectors)
            r.flags.writeable = False
            self._cache[twice_j] = r
        return self._cache[twice_j]

    def same_grid(self, other: "SphereQuadrature") -> bool:
        return self is other or (
            self.L == other.L
            and self.M == other.M
            and np.array_equal(self.theta, other.theta)
            and np.array_equal(self.phi, other.phi)
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True, eq=False)
class SymbolTable:
    """Values of a tomographic function on ``{m} x quadrature nodes``.

    ``values[i, k]`` is the value at ``m = j - i`` and node ``k``.
    """

    twice_j: int
    quad: SphereQuadrature
    values: np.ndarray
    is_probability: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=float if self.is_probability else complex)
        expected = (dim(self.twice_j), self.quad.size)
        if values.shape != expected:
            raise ValueError(f"values have shape {values.shape}, expected {expected}")
        if self.is_probability:
            if values.min(initial=0.0) < -1e-12:
                raise ValueError("tomogram has negative probabilities")
            if np.abs(values.sum(axis=0) - 1).max(initial=0.0) > 1e-10:
                raise ValueError("tomogram is not normalised over m at every node")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def flat_weights(self) -> np.ndarray:
        return np.tile(self.quad.weights, dim(self.twice_j))

    def points(self) -> PhasePoint:
        """Flattened grid points in the same order as ``values.ravel()``."""
        m = np.repeat(projections(self.twice_j), self.quad.size)
        n = np.tile(self.quad.vectors, (dim(self.twice_j), 1))
        return PhasePoint(m, n)

    def compatible(self, other: "SymbolTable") -> bool:
        return self.twice_j == other.twice_j and self.quad.same_grid(other.quad)


def validate_density_matrix(rho, tol: float = 1e-12) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real:.3g}, not 1")
    if np.linalg.eigvalsh(rho).min() < -1e-10:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def _projectors(rot: np.ndarray, twice_j: int, twice_m) -> np.ndarray:
    # column of R(n) for each m; zero when m is out of range
    onehot = (np.arange(dim(twice_j)) == index_of(twice_j, twice_m)[..., None]).astype(float)
    col = rot @ onehot[..., None]
    return col @ np.swapaxes(col.conj(), -1, -2)


def _quantizer_from_rotation(rot, twice_j, twice_m):
    twice_m = np.asarray(twice_m)
    return (twice_j + 1) * sum(c * _projectors(rot, twice_j, twice_m + 2 * s) for s, c in QUANTIZER_SHIFTS)


def _as_point(x, twice_j: int) -> PhasePoint:
    if not isinstance(x, PhasePoint):
        twice_m, n = x
        x = PhasePoint(twice_m, n.vector if isinstance(n, UnitAxis) else n)
    check_parity(twice_j, x.twice_m)
    return x


def dequantizer(twice_j: int, x) -> np.ndarray:
    """``U(m, n) = R(n)|jm><jm|R(n)^+``; the zero matrix when ``|m| > j``."""
    x = _as_point(x, twice_j)
    return _projectors(rotation_operator(twice_j, x.n), twice_j, x.twice_m)


def quantizer(twice_j: int, x) -> np.ndarray:
    """``D(m, n) = (2j+1) [U(m) - U(m+1)/2 - U(m-1)/2]`` along ``n``.

    Defined for every ``m`` of the right parity; it is non-zero for
    ``|m| = j + 1`` and vanishes beyond.
    """
    x = _as_point(x, twice_j)
    return _quantizer_from_rotation(rotation_operator(twice_j, x.n), twice_j, x.twice_m)


def operator_grid(twice_j: int, quad: SphereQuadrature, kind: str = "dequantizer") -> np.ndarray:
    """Stack of operators on the grid, shape ``(2j+1, nodes, 2j+1, 2j+1)``."""
    rot = quad.rotations(twice_j)[None]
    m = projections(twice_j)[:, None]
    if kind == "dequantizer":
        return _projectors(rot, twice_j, m)
    if kind == "quantizer":
        return _quantizer_from_rotation(rot, twice_j, m)
    raise ValueError(f"unknown operator kind {kind!r}")


def tomogram(rho, quad: SphereQuadrature) -> SymbolTable:
    """Spin tomogram ``w(m, n) = <jm|R^+ rho R|jm>`` on the grid."""
    rho = validate_density_matrix(rho)
    twice_j = rho.shape[0] - 1
    rot = quad.rotations(twice_j)
    w = np.einsum("kai,ab,kbi->ik", rot.conj(), rho, rot)
    return SymbolTable(twice_j, quad, w.real, is_probability=True)


def reconstruct(w: SymbolTable) -> np.ndarray:
    """``rho = int w(x) D(x) dx``; needs a quadrature that resolves spin j."""
    w.quad.require(w.twice_j)
    return operator_from_symbols(w)


def symbol(a, twice_j: int, x):
    """Ordinary symbol ``Tr(A U(x))``."""
    value = np.einsum("ab,...ba->...", np.asarray(a), dequantizer(twice_j, x))
    return value if np.ndim(value) else complex(value)


def dual_symbol(a, twice_j: int, x):
    """Dual symbol ``Tr(A D(x))``."""
    value = np.einsum("ab,...ba->...", np.asarray(a), quantizer(twice_j, x))
    return value if np.ndim(value) else complex(value)


def symbol_table(a, quad: SphereQuadrature, dual: bool = False) -> SymbolTable:
    a = np.asarray(a, dtype=complex)
    twice_j = a.shape[0] - 1
    ops = operator_grid(twice_j, quad, "quantizer" if dual else "dequantizer")
    return SymbolTable(twice_j, quad, np.einsum("ab,ikba->ik", a, ops))


def operator_from_symbols(f: SymbolTable, dual: bool = False) -> np.ndarray:
    """Inverse map: ``int f D dx`` for ordinary symbols, ``int f U dx`` for dual ones."""
    ops = operator_grid(f.twice_j, f.quad, "dequantizer" if dual else "quantizer")
    return np.einsum("ik,k,ikab->ab", f.values, f.quad.weights, ops)


def phase_space_integrate(f: SymbolTable):
    return complex(np.einsum("ik,k->", f.values, f.quad.weights))


def average_via_dual(w: SymbolTable, fd: SymbolTable):
    """``Tr(rho A) = int w(x) f^d_A(x) dx``."""
    if not w.compatible(fd):
        raise ValueError("tomogram and dual symbol live on different grids")
    return complex(np.einsum("ik,ik,k->", w.values, fd.values, w.quad.weights))
