"""Numerical checks on the zeros of Legendre polynomials and their sign structure."""

from .alternating import Interval, alt_f_sum, alt_theta_sum, riemann_grid_sum
from .asymptotics import error_profile, fit_rate, laplace_main, laplace_main_deriv, stieltjes_remainder
from .contour import alpha_floor_sweep, build_contour, integrate_contour
from .roots import RootSet, find_roots, gauss_weight_checksum, initial_guesses, validate_bounds
from .special import (
    eval_assoc_legendre,
    eval_assoc_legendre_normalized,
    eval_legendre,
    eval_legendre_cos,
    eval_legendre_theta_deriv,
)
from .sphere import BasisFunction, azimuthal_ratio, symmetry_sweep, zonal_band_areas

__version__ = "0.1.0"
