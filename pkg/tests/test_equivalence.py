import numpy as np
import pytest

from conftest import random_unit
from spintomo.coefficients import clebsch_gordan
from spintomo.equivalence import (
    ResidualReport,
    delta_j1,
    kernel_cg,
    matrix_unit_symbols,
    quantizer_residual_j1,
    sum_rule_check,
)
from spintomo.kernels import kernel_explicit, kernel_trace
from spintomo.sampling import random_density_matrix, random_phase_points, random_rotation_matrix
from spintomo.tomography import PhasePoint, SphereQuadrature, dequantizer, quantizer, tomogram

Z = np.array([0.0, 0.0, 1.0])


def _pts(tj, rng, n):
    return tuple(random_phase_points(tj, rng, n) for _ in range(3))


def test_cg_equals_explicit_for_qubits(rng):
    x = _pts(1, rng, 100)
    assert np.abs(kernel_cg(1, *x) - kernel_explicit(1, *x)).max() < 1e-12


def test_cg_spin_zero_is_one(rng):
    assert kernel_cg(0, *_pts(0, rng, 1)) == pytest.approx(1.0)


def test_cg_differs_from_explicit_for_qutrits(rng):
    x = _pts(2, rng, 50)
    assert np.abs(kernel_cg(2, *x) - kernel_explicit(2, *x)).max() > 0.01


def test_cg_gap_is_delta_j1(rng):
    x = _pts(2, rng, 200)
    assert np.abs(kernel_explicit(2, *x) - kernel_cg(2, *x) - delta_j1(*x)).max() < 1e-9


def test_cg_kernel_is_trace_with_corrected_quantizer(rng):
    x3, x2, x1 = _pts(2, rng, 50)

    def corrected(x):
        return quantizer(2, x) - quantizer_residual_j1(x)

    ref = np.einsum("...ab,...bc,...ca->...", corrected(x3), corrected(x2), dequantizer(2, x1))
    assert np.abs(kernel_cg(2, x3, x2, x1) - ref).max() < 1e-12


def test_cg_out_of_range_is_zero(rng):
    n = random_unit(rng, 3)
    assert kernel_cg(2, PhasePoint(4, n[0]), PhasePoint(0, n[1]), PhasePoint(0, n[2])) == 0


def test_cg_coefficients_vanish_above_2j():
    for tj in range(1, 5):
        for tm in range(-tj, tj + 1, 2):
            for L in range(tj + 1, tj + 4):
                assert clebsch_gordan(tj, tm, tj, -tm, 2 * L, 0) == 0.0


def test_cg_broadcasts(rng):
    x3, x2, x1 = _pts(2, rng, 6)
    grid = kernel_cg(2, x3.reshape(6, 1), x2.reshape(1, 6), x1[0])
    assert grid.shape == (6, 6)
    assert grid[2, 4] == pytest.approx(kernel_cg(2, x3[2], x2[4], x1[0]))


def test_delta_j1_orthonormal_axes_all_m_zero():
    e = np.eye(3)
    x3, x2, x1 = PhasePoint(0, e[2]), PhasePoint(0, e[1]), PhasePoint(0, e[0])
    # dot products vanish and the triple product is 1; term by term (in 1/144):
    # -4 + 24 + 48 + 16 - 88 - 88 + 160 = 68
    assert delta_j1(x3, x2, x1) == pytest.approx(17 / 36, abs=1e-14)
    assert delta_j1(x3, x2, x1) == pytest.approx(kernel_explicit(2, x3, x2, x1) - kernel_cg(2, x3, x2, x1), abs=1e-12)


def test_delta_j1_rotation_invariant(rng):
    x3, x2, x1 = _pts(2, rng, 30)
    base = delta_j1(x3, x2, x1)
    for _ in range(20):
        r = random_rotation_matrix(rng)
        rotated = [PhasePoint(x.twice_m, x.n @ r.T) for x in (x3, x2, x1)]
        assert np.abs(delta_j1(*rotated) - base).max() < 1e-12


def test_delta_j1_annihilated_by_symbol_pairs():
    def gap_kernel(tj, x3, x2, x1):
        return delta_j1(x3, x2, x1)

    def zero_kernel(tj, x3, x2, x1):
        return 0.0

    report = sum_rule_check(2, kernel_a=gap_kernel, kernel_b=zero_kernel)
    assert report.max_integrated_gap < 1e-9
    assert report.max_pointwise_gap > 0.01


def test_quantizer_residual_values(rng):
    assert np.allclose(quantizer_residual_j1((0, Z)), -np.eye(3) / 3 + np.diag([1, -2, 1]) / 6)
    r = quantizer_residual_j1(PhasePoint(np.array([2, 0, -2]), random_unit(rng, 3)))
    assert r.shape == (3, 3, 3)
    assert np.abs(r - np.swapaxes(r.conj(), -1, -2)).max() < 1e-13


def test_quantizer_residual_integrates_to_zero(rng):
    quad = SphereQuadrature.for_spin(2)
    res = quantizer_residual_j1(PhasePoint(np.array([2, 0, -2])[:, None], quad.vectors[None]))
    for _ in range(20):
        w = tomogram(random_density_matrix(2, rng), quad)
        assert np.abs(np.einsum("ik,k,ikab->ab", w.values, quad.weights, res)).max() < 1e-10


def test_matrix_unit_symbols():
    quad = SphereQuadrature.for_spin(1)
    f = matrix_unit_symbols(1, quad)
    assert f.shape == (4, 2 * quad.size)
    # symbol of |0><0| at m = +1/2 along node k is |<0|R|0>|^2
    assert np.allclose(f[0, : quad.size], np.abs(quad.rotations(1)[:, 0, 0]) ** 2)


@pytest.mark.parametrize("tj,integrated_tol", [(1, 1e-10), (2, 1e-9), (3, 1e-8)])
def test_sum_rule(tj, integrated_tol, rng):
    targets = random_phase_points(tj, rng, 4)
    report = sum_rule_check(tj, targets=targets)
    assert report.max_integrated_gap <= integrated_tol
    if tj == 1:
        assert report.max_pointwise_gap <= 1e-10
    else:
        assert report.max_pointwise_gap > 0.01
    assert report.samples == 4
    assert set(report.to_dict()) == {"twice_j", "max_pointwise_gap", "max_integrated_gap", "samples"}


def test_sum_rule_fails_for_a_wrong_kernel():
    def perturbed(tj, x3, x2, x1):
        return kernel_trace(tj, x3, x2, x1) * 1.01

    assert sum_rule_check(2, kernel_b=perturbed).max_integrated_gap > 1e-3


def test_residual_report_rejects_negative_gaps():
    with pytest.raises(ValueError):
        ResidualReport(2, -1.0, 0.0, 1)
