"""Acceptance criteria, one test per criterion.

Each test records a ``[PASS]``/``[FAIL]`` line with the measured gap and
the tolerance; the lines are printed in the pytest terminal summary, and
running this file directly prints them as well.
"""
import math
import time
import warnings

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import projector
from oracles import quantizer as ref_quantizer
from spintomo.equivalence import delta_j1, kernel_cg, quantizer_residual_j1, sum_rule_check
from spintomo.figures import FIGURES, figure_grid, fixed_points
from spintomo.kernels import (
    apply_two_point,
    delta_kernel,
    dual_kernel,
    dual_kernel_trace,
    intertwine_kernel,
    kernel_explicit,
    kernel_fourier,
    kernel_recurrence_step,
    kernel_trace,
    recurrence_kernel,
    scalar_kernel,
    star_product,
)
from spintomo.rotation import RotationTriple, character, compose_axis_times_sin, compose_cos_half_angle
from spintomo.sampling import random_axes, random_density_matrix, random_operator, random_phase_points
from spintomo.su2 import axis_exponential
from spintomo.tomography import (
    PhasePoint,
    SphereQuadrature,
    average_via_dual,
    reconstruct,
    symbol,
    symbol_table,
    tomogram,
)

SEED = 1234


def _rng(criterion):
    return np.random.default_rng([SEED, criterion])


def _record(number, title, measurements):
    """``measurements``: list of (label, gap, tol); all must hold."""
    ok = all(np.isfinite(gap) and gap <= tol for _, gap, tol in measurements)
    detail = "; ".join(f"{label} {gap:.2e} <= {tol:.0e}" if gap <= tol else f"{label} {gap:.2e} > {tol:.0e}" for label, gap, tol in measurements)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _max_gap(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _points(tj, rng, n):
    return tuple(random_phase_points(tj, rng, n) for _ in range(3))


def test_criterion_01_explicit_vs_trace():
    rng = _rng(1)
    rows = []
    for tj in (1, 2, 3, 4):
        x = _points(tj, rng, 200)
        rows.append((f"2j={tj}", _max_gap(kernel_explicit(tj, *x), kernel_trace(tj, *x)), 1e-9))
    assert _record(1, "explicit kernel vs trace oracle, 200 points", rows)


def test_criterion_02_star_product():
    rng = _rng(2)
    rows = []
    for tj in (1, 2, 3):
        quad = SphereQuadrature.for_spin(tj)
        x1 = random_phase_points(tj, rng, 20)
        gap = 0.0
        for _ in range(20):
            a, b = random_operator(tj, rng), random_operator(tj, rng)
            got = star_product(symbol_table(a, quad), symbol_table(b, quad), kernel_explicit, at=x1)
            gap = max(gap, _max_gap(got, symbol(a @ b, tj, x1)))
        rows.append((f"product 2j={tj}", gap, 1e-9))
        fa, fb, fc = (symbol_table(random_operator(tj, rng), quad) for _ in range(3))
        left = star_product(star_product(fa, fb, kernel_explicit), fc, kernel_explicit)
        right = star_product(fa, star_product(fb, fc, kernel_explicit), kernel_explicit)
        rows.append((f"assoc 2j={tj}", _max_gap(left.values, right.values), 1e-8))
    assert _record(2, "star product vs Tr(ABU) and associativity", rows)


def test_criterion_03_delta_reproducing():
    rng = _rng(3)
    rows = []
    for tj in (1, 2, 3, 4):
        quad = SphereQuadrature.for_spin(tj)
        gap = 0.0
        for _ in range(20):
            w = tomogram(random_density_matrix(tj, rng), quad)
            gap = max(gap, _max_gap(apply_two_point(w, delta_kernel).values, w.values))
        rows.append((f"2j={tj}", gap, 1e-9))
    assert _record(3, "delta kernel reproduces tomograms", rows)


def test_criterion_04_reconstruction():
    rng = _rng(4)
    rows = []
    for tj in (1, 2, 3, 4):
        quad = SphereQuadrature.for_spin(tj)
        rt = norm_m = norm_s = 0.0
        for _ in range(50):
            rho = random_density_matrix(tj, rng)
            w = tomogram(rho, quad)
            rt = max(rt, _max_gap(reconstruct(w), rho))
            norm_m = max(norm_m, _max_gap(w.values.sum(axis=0), 1.0))
            norm_s = max(norm_s, _max_gap((tj + 1) * w.values @ quad.weights, 1.0))
        rows += [(f"round trip 2j={tj}", rt, 1e-10), (f"sum_m 2j={tj}", norm_m, 1e-12), (f"sphere 2j={tj}", norm_s, 1e-12)]
    assert _record(4, "reconstruction round trip and normalizations", rows)


def test_criterion_05_equivalence():
    rng = _rng(5)
    x = _points(1, rng, 200)
    rows = [("2j=1 pointwise", _max_gap(kernel_explicit(1, *x), kernel_cg(1, *x)), 1e-10)]
    x = _points(2, rng, 200)
    rows.append(("2j=2 gap vs closed form", _max_gap(kernel_explicit(2, *x) - kernel_cg(2, *x), delta_j1(*x)), 1e-9))
    for tj, tol in ((2, 1e-9), (3, 1e-8)):
        report = sum_rule_check(tj, targets=random_phase_points(tj, rng, 6))
        rows.append((f"2j={tj} integrated", report.max_integrated_gap, tol))
    assert _record(5, "Clebsch-Gordan kernel equivalence", rows)


def test_criterion_06_quantizer_residual():
    rng = _rng(6)
    quad = SphereQuadrature.for_spin(2)
    residual = quantizer_residual_j1(PhasePoint(np.array([2, 0, -2])[:, None], quad.vectors[None]))
    gap = 0.0
    for _ in range(20):
        w = tomogram(random_density_matrix(2, rng), quad)
        gap = max(gap, float(np.abs(np.einsum("ik,k,ikab->ab", w.values, quad.weights, residual)).max()))
    x = _points(1, rng, 200)
    rows = [("integral 2j=2", gap, 1e-10), ("residual 2j=1", _max_gap(kernel_explicit(1, *x), kernel_cg(1, *x)), 1e-12)]
    assert _record(6, "quantizer residual integrates to zero", rows)


def test_criterion_07_recurrence():
    rng = _rng(7)
    x = _points(2, rng, 50)
    rows = [("K_1", _max_gap(kernel_recurrence_step(1, kernel_explicit, scalar_kernel, *x), kernel_trace(2, *x)), 1e-8)]
    x = _points(3, rng, 50)
    rows.append(("K_3/2", _max_gap(kernel_recurrence_step(2, kernel_explicit, kernel_explicit, *x), kernel_trace(3, *x)), 1e-8))
    x = _points(4, rng, 50)
    rows.append(("chain to K_2", _max_gap(recurrence_kernel(4)(4, *x), kernel_trace(4, *x)), 1e-7))
    assert _record(7, "spin recurrence", rows)


def test_criterion_08_character():
    rng = _rng(8)
    rows = []
    n1, n2, n3 = (random_axes(rng, 100) for _ in range(3))
    t = RotationTriple(n1, n2, n3, *(rng.uniform(0, 4 * np.pi, 100) for _ in range(3)))
    cos_half = compose_cos_half_angle(t)
    for tj in (1, 2, 3, 4):
        prod = axis_exponential(tj, n3, t.phi3) @ axis_exponential(tj, n2, t.phi2) @ axis_exponential(tj, n1, t.phi1)
        rows.append((f"2j={tj}", _max_gap(np.trace(prod, axis1=-2, axis2=-1), character(tj, cos_half)), 1e-11))
    v = compose_axis_times_sin(t)
    rows.append(("unit norm", _max_gap(cos_half**2 + np.sum(v * v, axis=-1), 1.0), 1e-12))
    assert _record(8, "character of composed rotations", rows)


def test_criterion_09_dual_machinery():
    rng = _rng(9)
    rows = []
    for tj in (1, 2, 3):
        quad = SphereQuadrature.for_spin(tj)
        x = _points(tj, rng, 50)
        rows.append((f"dual kernel 2j={tj}", _max_gap(dual_kernel(tj, *x), dual_kernel_trace(tj, *x)), 1e-9))
        a = random_operator(tj, rng)
        f = symbol_table(a, quad)
        fd = apply_two_point(f, lambda t_, x2, x1: intertwine_kernel("o->d", t_, x2, x1))
        back = apply_two_point(fd, lambda t_, x2, x1: intertwine_kernel("d->o", t_, x2, x1))
        rows.append((f"intertwine 2j={tj}", _max_gap(back.values, f.values), 1e-9))
        rho = random_density_matrix(tj, rng)
        avg = average_via_dual(tomogram(rho, quad), symbol_table(a, quad, dual=True))
        rows.append((f"average 2j={tj}", abs(avg - np.trace(rho @ a)), 1e-10))
    assert _record(9, "dual kernels, intertwining and averages", rows)


def test_criterion_10_fourier_brute_force():
    rng = _rng(10)
    rows = []
    for tj in (1, 2):
        gap = 0.0
        for _ in range(5):
            x = tuple(random_phase_points(tj, rng) for _ in range(3))
            gap = max(gap, abs(kernel_fourier(tj, *x, grid=64) - kernel_explicit(tj, *x)))
        rows.append((f"2j={tj}", gap, 2e-3))
    assert _record(10, "64^3 Fourier transform of the character", rows)


def test_criterion_11_figure_grids():
    rows = []
    finite = True
    for fig in FIGURES:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            tt, pp, values, meta = figure_grid(fig)
        finite &= values.shape == (90, 180) and bool(np.all(np.isfinite(values)))
    rows.append(("finite 90x180 grids", 0.0 if finite else math.inf, 0.0))
    spec = FIGURES["fig1a"]
    (x2,) = fixed_points(spec)
    tt, pp, values, _ = figure_grid("fig1a")
    d2 = ref_quantizer(spec.twice_j, spec.twice_m[0], x2.n)
    n1 = PhasePoint.from_angles(spec.twice_m[1], tt, pp).n.reshape(-1, 3)
    oracle = np.array([np.trace(d2 @ projector(spec.twice_j, spec.twice_m[1], n)) for n in n1])
    rows.append(("fig1a vs Tr(DU)", _max_gap(values.ravel(), oracle), 1e-10))
    assert _record(11, "figure grids at captioned parameters", rows)


if __name__ == "__main__":
    start = time.time()
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
    print(f"done in {time.time() - start:.1f} s")
