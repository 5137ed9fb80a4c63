"""Structured eigensolver for T-palindromic matrix polynomials."""

from .aberth import RootRecord, SpectrumResult, StartConfig, choose_params, solve, starting_points
from .dickson import DicksonSystem, dickson_transform, eval_dickson, phi, recover_lambda_pair
from .linearization import StructuredPencil, build_pencil
from .newton_trace import NewtonStep, available_backends, get_backend, set_backend, trace_correction
from .polynomial import PalindromicPolynomial, eval_laurent, from_full_coefficients, gen_h, gen_random, odd_to_even

__all__ = [
    "DicksonSystem", "NewtonStep", "PalindromicPolynomial", "RootRecord", "SpectrumResult",
    "StartConfig", "StructuredPencil", "available_backends", "build_pencil", "choose_params",
    "dickson_transform", "eval_dickson", "eval_laurent", "from_full_coefficients", "gen_h",
    "gen_random", "get_backend", "odd_to_even", "phi", "recover_lambda_pair", "set_backend",
    "solve", "starting_points", "trace_correction",
]
