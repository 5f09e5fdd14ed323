"""Minimax polynomial and rational approximation of x**n.

The building blocks are Chebyshev series (:mod:`halphen.chebyshev`), the
Remez algorithm for polynomials (:mod:`halphen.poly_remez`), a barycentric
AAA/Lawson/exchange pipeline for type-(k, k) rationals
(:mod:`halphen.rational_remez`) with a linear-programming cross-check
(:mod:`halphen.diffcorr`), and the error models of :mod:`halphen.models`.
"""

from .barycentric import AAAError, BarycentricRational, aaa_fit, eval_rational
from .certificate import EquioscillationCertificate
from .chebyshev import (
    ChebSeries,
    ChebyshevConvergenceError,
    Interval,
    adaptive_fit,
    cheb_eval,
    cheb_fit,
    cheb_points,
)
from .diffcorr import DifferentialCorrectionError, differential_correction
from .estimators import (
    AAAApproximant,
    ChebyshevInterpolant,
    MinimaxPolynomial,
    MinimaxRational,
)
from .lawson import lawson_refine
from .models import (
    HALPHEN_H,
    MobiusMap,
    TransplantedTarget,
    even_reduction,
    exp_halfline_error,
    halphen_constant,
    halphen_model,
    lemma2_gap,
    transplant,
)
from .poly_remez import PolyMinimaxResult, RemezConvergenceError, newman_rivlin, remez_poly
from .precision import get_precision_bits, set_precision_bits, working_precision
from .rational_remez import RationalMinimaxError, RationalMinimaxResult, rational_remez
from .special import erfc
from .targets import Power

__version__ = "0.1.0"

__all__ = [
    "AAAApproximant", "AAAError", "BarycentricRational", "ChebSeries",
    "ChebyshevConvergenceError", "ChebyshevInterpolant", "DifferentialCorrectionError",
    "EquioscillationCertificate", "HALPHEN_H", "Interval", "MinimaxPolynomial",
    "MinimaxRational", "MobiusMap", "PolyMinimaxResult", "Power", "RationalMinimaxError",
    "RationalMinimaxResult", "RemezConvergenceError", "TransplantedTarget", "aaa_fit",
    "adaptive_fit", "cheb_eval", "cheb_fit", "cheb_points", "differential_correction",
    "erfc", "eval_rational", "even_reduction", "exp_halfline_error", "get_precision_bits",
    "halphen_constant", "halphen_model", "lawson_refine", "lemma2_gap", "newman_rivlin",
    "rational_remez", "remez_poly", "set_precision_bits", "transplant", "working_precision",
]
