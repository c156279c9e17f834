"""Star-product kernels: closed forms, trace oracles, recurrence and brute force."""
from .closed_form import (
    binomial_real,
    delta_kernel,
    dual_kernel,
    geometry,
    intertwine_kernel,
    kernel_explicit,
    universal_Q,
    universal_T,
    weak_compositions,
)
from .star import apply_two_point, kernel_block, star_product, two_point_block
from .trace import delta_kernel_trace, dual_kernel_trace, intertwine_kernel_trace, kernel_trace
from .recurrence import kernel_recurrence_step, recurrence_kernel, scalar_kernel, shift_weights
from .fourier import kernel_fourier
