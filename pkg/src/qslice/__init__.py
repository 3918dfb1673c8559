"""qslice: computational calculus of slice-regular quaternionic functions.

The package implements the noncommutative *-algebra of quaternionic
polynomials and rational functions, zero and pole analysis with spherical
and isolated multiplicities, centered Laurent expansions with their
sigma/tau convergence shells, and reproducible verification experiments.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (DivisionByZero, NoConvergence, NotDivisible, ParseError,
                     PoleEvaluation, QSliceError, RealPointAmbiguous,
                     SymmetrizationNotReal, UnknownIdentity, ZeroDenominator)
from .geometry import RegionSpec, region_contains, represent, sigma, tau
from .laurent import (LaurentExpansion, contour_coefficients, eval_truncated,
                      expand_rational, star_power_value)
from .polynomial import (QPolynomial, RealPolynomial, divide_real,
                         left_divide_linear, star_mul)
from .quaternion import Quaternion, Sphere, parse_quaternion
from .rational import QRational, analyze_poles, from_quotient, reciprocal, transport
from .zeros import ZeroReport, analyze_zeros, sphere_classify

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND", "Quaternion", "Sphere", "parse_quaternion",
    "QPolynomial", "RealPolynomial", "star_mul", "divide_real",
    "left_divide_linear", "QRational", "from_quotient", "reciprocal",
    "transport", "analyze_poles", "analyze_zeros", "sphere_classify",
    "ZeroReport", "LaurentExpansion", "expand_rational", "star_power_value",
    "eval_truncated", "contour_coefficients", "RegionSpec", "region_contains",
    "represent", "sigma", "tau", "QSliceError", "DivisionByZero",
    "RealPointAmbiguous", "NotDivisible", "NoConvergence", "ZeroDenominator",
    "PoleEvaluation", "SymmetrizationNotReal", "UnknownIdentity", "ParseError",
]
