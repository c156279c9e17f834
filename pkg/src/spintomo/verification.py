"""Verification batteries: each check measures a gap against an independent oracle.

Checks are grouped into suites (tomography, kernels, equivalence,
recurrence).  Every check draws its random inputs from a generator seeded
by ``(seed, twice_j, crc32(name))`` so results do not depend on which other
checks ran, and the report is byte-identical for identical settings.
"""
from __future__ import annotations

import math
import warnings
import zlib
from dataclasses import dataclass, field

import numpy as np

from .equivalence import delta_j1, kernel_cg, quantizer_residual_j1, sum_rule_check
from .figures import FIGURES, fixed_points, scan_points
from .kernels import (
    apply_two_point,
    delta_kernel,
    delta_kernel_trace,
    dual_kernel,
    dual_kernel_trace,
    intertwine_kernel,
    intertwine_kernel_trace,
    kernel_explicit,
    kernel_fourier,
    kernel_recurrence_step,
    kernel_trace,
    recurrence_kernel,
    scalar_kernel,
    star_product,
)
from .rotation import RotationTriple, character, compose_axis_times_sin, compose_cos_half_angle
from .sampling import random_axes, random_density_matrix, random_operator, random_phase_points, random_rotation_matrix
from .su2 import axis_exponential, dim
from .tomography import (
    PhasePoint,
    SphereQuadrature,
    average_via_dual,
    dual_symbol,
    operator_grid,
    reconstruct,
    symbol,
    symbol_table,
    tomogram,
)

__all__ = ["SUITES", "Check", "CheckResult", "checks_for", "run_checks"]

SUITES = ("tomography", "kernels", "equivalence", "recurrence")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    twice_j: int
    tol: float
    samples: int
    run: object = field(repr=False)
    slow: bool = False


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    twice_j: int
    gap: float
    tol: float
    samples: int
    extras: dict

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.gap)) and self.gap <= self.tol

    def to_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "name": self.name,
            "twice_j": self.twice_j,
            "gap": self.gap if math.isfinite(self.gap) else None,
            "tol": self.tol,
            "samples": self.samples,
            "passed": self.passed,
        }
        out.update(self.extras)
        return out


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))


def _points(tj, rng, n, extended=False):
    return tuple(random_phase_points(tj, rng, n, extended) for _ in range(3))


# ---- tomography ---------------------------------------------------------


def _reconstruction(tj, rng, n):
    quad = SphereQuadrature.for_spin(tj)
    gaps = [_max_abs(reconstruct(tomogram(rho, quad)), rho) for rho in (random_density_matrix(tj, rng) for _ in range(n))]
    return max(gaps)


def _normalization_over_m(tj, rng, n):
    quad = SphereQuadrature.for_spin(tj)
    return max(_max_abs(tomogram(random_density_matrix(tj, rng), quad).values.sum(axis=0), 1.0) for _ in range(n))


def _normalization_over_sphere(tj, rng, n):
    quad = SphereQuadrature.for_spin(tj)
    return max(
        _max_abs((tj + 1) * tomogram(random_density_matrix(tj, rng), quad).values @ quad.weights, 1.0) for _ in range(n)
    )


def _delta_reproducing(tj, rng, n):
    quad = SphereQuadrature.for_spin(tj)
    gaps = []
    for _ in range(n):
        w = tomogram(random_density_matrix(tj, rng), quad)
        gaps.append(_max_abs(apply_two_point(w, delta_kernel).values, w.values))
    return max(gaps)


def _dual_average(tj, rng, n):
    quad = SphereQuadrature.for_spin(tj)
    gaps = []
    for _ in range(n):
        rho, a = random_density_matrix(tj, rng), random_operator(tj, rng)
        gaps.append(abs(average_via_dual(tomogram(rho, quad), symbol_table(a, quad, dual=True)) - np.trace(rho @ a)))
    return max(gaps)


def _random_triple(rng, n):
    n1, n2, n3 = (random_axes(rng, n) for _ in range(3))
    return RotationTriple(n1, n2, n3, *(rng.uniform(0, 4 * np.pi, n) for _ in range(3)))


def _character_identity(tj, rng, n):
    t = _random_triple(rng, n)
    direct = np.trace(
        axis_exponential(tj, t.n3, t.phi3) @ axis_exponential(tj, t.n2, t.phi2) @ axis_exponential(tj, t.n1, t.phi1),
        axis1=-2,
        axis2=-1,
    )
    return _max_abs(direct, character(tj, compose_cos_half_angle(t)))


def _composition_norm(tj, rng, n):
    t = _random_triple(rng, n)
    c, v = compose_cos_half_angle(t), compose_axis_times_sin(t)
    return _max_abs(c * c + np.sum(v * v, axis=-1), 1.0)


# ---- kernels ------------------------------------------------------------


def _explicit_vs_trace(tj, rng, n):
    x = _points(tj, rng, n)
    return _max_abs(kernel_explicit(tj, *x), kernel_trace(tj, *x))


def _hermitian_swap(tj, rng, n):
    x3, x2, x1 = _points(tj, rng, n)
    return _max_abs(np.conj(kernel_trace(tj, x3, x2, x1)), kernel_trace(tj, x2, x3, x1))


def _dual_vs_trace(tj, rng, n):
    x = _points(tj, rng, n)
    return _max_abs(dual_kernel(tj, *x), dual_kernel_trace(tj, *x))


def _delta_vs_trace(tj, rng, n):
    x2, x1 = random_phase_points(tj, rng, n), random_phase_points(tj, rng, n)
    return _max_abs(delta_kernel(tj, x2, x1), delta_kernel_trace(tj, x2, x1))


def _intertwine_vs_trace(tj, rng, n):
    x2, x1 = random_phase_points(tj, rng, n), random_phase_points(tj, rng, n)
    return max(
        _max_abs(intertwine_kernel(d, tj, x2, x1), intertwine_kernel_trace(d, tj, x2, x1)) for d in ("o->d", "d->o")
    )


def _intertwine_round_trip(tj, rng, n):
    quad = SphereQuadrature.for_spin(tj)
    gaps = []
    for _ in range(n):
        a = random_operator(tj, rng)
        f = symbol_table(a, quad)
        fd = apply_two_point(f, lambda t, x2, x1: intertwine_kernel("o->d", t, x2, x1))
        back = apply_two_point(fd, lambda t, x2, x1: intertwine_kernel("d->o", t, x2, x1))
        gaps.append(max(_max_abs(back.values, f.values), _max_abs(fd.values, symbol_table(a, quad, dual=True).values)))
    return max(gaps)


def _star_vs_trace(tj, rng, n, kernel=kernel_explicit, dual=False):
    quad = SphereQuadrature.for_spin(tj)
    pairs = [(random_operator(tj, rng), random_operator(tj, rng)) for _ in range(n)]
    x1 = random_phase_points(tj, rng, n)
    to_symbol = dual_symbol if dual else symbol
    gaps = []
    for a, b in pairs:
        got = star_product(symbol_table(a, quad, dual), symbol_table(b, quad, dual), kernel, at=x1)
        gaps.append(_max_abs(got, to_symbol(a @ b, tj, x1)))
    return max(gaps)


def _dual_star(tj, rng, n):
    return _star_vs_trace(tj, rng, n, kernel=dual_kernel, dual=True)


def _associativity(tj, rng, n):
    quad = SphereQuadrature.for_spin(tj)
    gaps = []
    for _ in range(n):
        fa, fb, fc = (symbol_table(random_operator(tj, rng), quad) for _ in range(3))
        left = star_product(star_product(fa, fb, kernel_explicit), fc, kernel_explicit)
        right = star_product(fa, star_product(fb, fc, kernel_explicit), kernel_explicit)
        gaps.append(_max_abs(left.values, right.values))
    return max(gaps)


def _fourier(tj, rng, n):
    gaps = []
    for _ in range(n):
        x = tuple(random_phase_points(tj, rng) for _ in range(3))
        gaps.append(abs(kernel_fourier(tj, *x) - kernel_explicit(tj, *x)))
    return max(gaps)


def _figure_vs_trace(figure_id):
    def run(tj, rng, n):
        spec = FIGURES[figure_id]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            fixed = fixed_points(spec)
        _, _, x1 = scan_points(spec, 18, 36)
        return _max_abs(delta_kernel(spec.twice_j, fixed[0], x1), delta_kernel_trace(spec.twice_j, fixed[0], x1))

    return run


# ---- equivalence --------------------------------------------------------


def _cg_vs_explicit(tj, rng, n):
    x = _points(tj, rng, n)
    return _max_abs(kernel_explicit(tj, *x), kernel_cg(tj, *x))


def _delta_j1_closed_form(tj, rng, n):
    x = _points(2, rng, n)
    return _max_abs(kernel_explicit(2, *x) - kernel_cg(2, *x), delta_j1(*x))


def _delta_j1_rotation(tj, rng, n):
    x3, x2, x1 = _points(2, rng, n)
    base = delta_j1(x3, x2, x1)
    gaps = []
    for _ in range(n):
        r = random_rotation_matrix(rng)
        rotated = [PhasePoint(x.twice_m, x.n @ r.T) for x in (x3, x2, x1)]
        gaps.append(_max_abs(delta_j1(*rotated), base))
    return max(gaps)


def _sum_rule(tj, rng, n):
    targets = PhasePoint(np.repeat(np.arange(tj, -tj - 1, -2), n), np.tile(random_axes(rng, n), (dim(tj), 1)))
    report = sum_rule_check(tj, targets=targets)
    return report.max_integrated_gap, {
        "pointwise_gap": report.max_pointwise_gap,
        "integrated_gap": report.max_integrated_gap,
    }


def _sum_rule_pointwise(tj, rng, n):
    gap, extras = _sum_rule(tj, rng, n)
    return extras["pointwise_gap"], extras


def _quantizer_residual(tj, rng, n):
    quad = SphereQuadrature.for_spin(2)
    m = np.arange(2, -3, -2)[:, None]
    residual = quantizer_residual_j1(PhasePoint(m, quad.vectors[None]))
    gaps = []
    for _ in range(n):
        w = tomogram(random_density_matrix(2, rng), quad)
        gaps.append(float(np.abs(np.einsum("ik,k,ikab->ab", w.values, quad.weights, residual)).max()))
    return max(gaps)


# ---- recurrence ---------------------------------------------------------


def _lower(tj):
    return scalar_kernel if tj == 0 else kernel_explicit


def _recurrence_step(tj, rng, n):
    x = _points(tj, rng, n)
    got = kernel_recurrence_step(tj - 1, _lower(tj - 1), _lower(max(tj - 2, 0)), *x)
    return _max_abs(got, kernel_trace(tj, *x))


def _recurrence_coaxial(tj, rng, n):
    z = np.array([0.0, 0.0, 1.0])
    gaps = []
    for tm in range(tj, -tj - 1, -2):
        x = (PhasePoint(tm, z),) * 3
        got = kernel_recurrence_step(tj - 1, _lower(tj - 1), _lower(max(tj - 2, 0)), *x)
        gaps.append(abs(got - kernel_trace(tj, *x)))
    return max(gaps)


def _recurrence_chain(tj, rng, n):
    x = _points(tj, rng, n)
    return _max_abs(recurrence_kernel(tj)(tj, *x), kernel_trace(tj, *x))


# ---- catalogue ----------------------------------------------------------


def checks_for(suite: str, max_twice_j: int, samples: int | None = None, slow: bool = False) -> list:
    """Checks of one suite for spins ``1/2 .. max_twice_j/2``.

    ``samples`` overrides every per-check sample count when given.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")

    def mk(name, tj, tol, count, run, is_slow=False):
        return Check(suite, name, tj, tol, samples if samples is not None else count, run, is_slow)

    spins = range(1, max_twice_j + 1)
    out = []
    if suite == "tomography":
        for tj in spins:
            out += [
                mk("reconstruction_round_trip", tj, 1e-10, 50, _reconstruction),
                mk("normalization_over_m", tj, 1e-12, 50, _normalization_over_m),
                mk("normalization_over_sphere", tj, 1e-12, 50, _normalization_over_sphere),
                mk("delta_kernel_reproducing", tj, 1e-9, 20, _delta_reproducing),
                mk("dual_symbol_average", tj, 1e-10, 20, _dual_average),
                mk("character_identity", tj, 1e-11, 100, _character_identity),
                mk("composition_unit_norm", tj, 1e-12, 100, _composition_norm),
            ]
    elif suite == "kernels":
        for tj in spins:
            out += [
                mk("explicit_vs_trace", tj, 1e-9, 200, _explicit_vs_trace),
                mk("hermitian_swap", tj, 1e-12, 50, _hermitian_swap),
                mk("dual_kernel_vs_trace", tj, 1e-9, 50, _dual_vs_trace),
                mk("delta_kernel_vs_trace", tj, 1e-10, 100, _delta_vs_trace),
                mk("intertwine_kernel_vs_trace", tj, 1e-10, 100, _intertwine_vs_trace),
                mk("intertwine_round_trip", tj, 1e-9, 5, _intertwine_round_trip),
                mk("star_product_vs_trace", tj, 1e-9, 20, _star_vs_trace),
                mk("dual_star_product_vs_trace", tj, 1e-9, 20, _dual_star),
            ]
            if tj <= 2:
                out.append(mk("star_product_associativity", tj, 1e-8, 3, _associativity))
                out.append(mk("fourier_brute_force", tj, 2e-3, 5, _fourier, is_slow=True))
        for fig in ("fig1a", "fig1b"):
            if FIGURES[fig].twice_j <= max_twice_j:
                out.append(mk(f"{fig}_delta_vs_trace", FIGURES[fig].twice_j, 1e-10, 18 * 36, _figure_vs_trace(fig)))
    elif suite == "equivalence":
        if max_twice_j >= 1:
            out.append(mk("cg_vs_explicit_spin_half", 1, 1e-12, 100, _cg_vs_explicit))
            out.append(mk("sum_rule_pointwise", 1, 1e-10, 3, _sum_rule_pointwise))
        if max_twice_j >= 2:
            out += [
                mk("delta_j1_closed_form", 2, 1e-9, 200, _delta_j1_closed_form),
                mk("delta_j1_rotation_invariance", 2, 1e-12, 20, _delta_j1_rotation),
                mk("quantizer_residual_integral", 2, 1e-10, 20, _quantizer_residual),
            ]
        sum_rule_tol = {1: 1e-10, 2: 1e-9}
        for tj in spins:
            out.append(mk("sum_rule_integrated", tj, sum_rule_tol.get(tj, 1e-8), 3, _sum_rule))
    else:
        top = max(max_twice_j, 4)
        for tj in range(1, top + 1):
            out.append(mk("recurrence_step", tj, 1e-8, 50, _recurrence_step))
            out.append(mk("recurrence_coaxial", tj, 1e-9, 1, _recurrence_coaxial))
        out.append(mk("recurrence_chain", top, 1e-7, 50, _recurrence_chain))
    return [c for c in out if slow or not c.slow]


def _tolerance(check: Check, overrides: dict) -> float:
    for key in (f"{check.suite}.{check.name}", check.name, "*"):
        if key in overrides:
            return float(overrides[key])
    return check.tol


def run_checks(checks, seed: int = 0, tolerances: dict | None = None) -> list:
    """Run checks in order; each gets its own seeded generator."""
    tolerances = tolerances or {}
    results = []
    for check in checks:
        rng = np.random.default_rng([seed, check.twice_j, zlib.crc32(f"{check.suite}.{check.name}".encode())])
        out = check.run(check.twice_j, rng, check.samples)
        gap, extras = out if isinstance(out, tuple) else (out, {})
        gap = float(gap) if math.isfinite(gap) else float("inf")
        results.append(CheckResult(check.suite, check.name, check.twice_j, gap, _tolerance(check, tolerances), check.samples, extras))
    return results
