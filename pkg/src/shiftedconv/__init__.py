"""Shifted convolution L-values for elliptic curves of modular degree one."""

from .config import PrecisionConfig
from .curves import EllipticCurveModel, load_registry, get_curve
from .eisenstein import enumerate_cusps, indicator_basis, infinity_indicator, raw_basis
from .lattice import Lattice, build_lattice, compute_periods, eisenstein_numbers
from .mockform import zhat_plus, eta_quotient, q_derivative
from .newform import an_coefficients, ap_point_count, eichler_integral
from .poincare import kloosterman, bp_coefficient, bq_coefficient
from .series import FourierSeries
from .shifted import (ShiftedConvolutionTable, d_direct, l_series_closed_form,
                      alpha_constant, hol_projection_hat, support_modulus)
from .verify import verify_all

__all__ = [
    "PrecisionConfig", "EllipticCurveModel", "load_registry", "get_curve",
    "enumerate_cusps", "indicator_basis", "infinity_indicator", "raw_basis",
    "Lattice", "build_lattice", "compute_periods", "eisenstein_numbers",
    "zhat_plus", "eta_quotient", "q_derivative",
    "an_coefficients", "ap_point_count", "eichler_integral",
    "kloosterman", "bp_coefficient", "bq_coefficient",
    "FourierSeries", "ShiftedConvolutionTable", "d_direct",
    "l_series_closed_form", "alpha_constant", "hol_projection_hat",
    "support_modulus", "verify_all",
]

__version__ = "0.1.0"
