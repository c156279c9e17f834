"""Spin tomography and star-product kernels for qudits.

Spins and projections are passed as doubled integers (``twice_j``,
``twice_m``); bases are ordered by descending projection.
"""
from .equivalence import ResidualReport, delta_j1, kernel_cg, quantizer_residual_j1, sum_rule_check
from .kernels import (
    delta_kernel,
    dual_kernel,
    intertwine_kernel,
    kernel_explicit,
    kernel_recurrence_step,
    kernel_trace,
    recurrence_kernel,
    star_product,
)
from .rotation import RotationTriple, character, chebyshev_u, compose_axis_times_sin, compose_cos_half_angle
from .su2 import UnitAxis, angular_momentum, axis_exponential, rotation_operator, wigner_small_d
from .tomography import (
    PhasePoint,
    SphereQuadrature,
    SymbolTable,
    dequantizer,
    dual_symbol,
    quantizer,
    reconstruct,
    symbol,
    symbol_table,
    tomogram,
)

__version__ = "0.1.0"
