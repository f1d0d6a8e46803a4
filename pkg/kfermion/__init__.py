"""Exact and numerical toolkit for the generalized fermion algebra ``B_κ(1)``.

``{f⁻, f⁺} = 1 + 2κN``, ``[N, f±] = ±f±``; κ = 0 is the ordinary fermion.
"""
from .exact import NSigmaPoly, parse_rational
from .algebra import NormalForm, word_normalize, operators_equal, structure_function_value
from .ordering import stirling, bell, wick_verify, compare_with_printed
from .fock import build_operator, exact_action, algebraic_spectrum, gap_analysis
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "NSigmaPoly",
    "parse_rational",
    "NormalForm",
    "word_normalize",
    "operators_equal",
    "structure_function_value",
    "stirling",
    "bell",
    "wick_verify",
    "compare_with_printed",
    "build_operator",
    "exact_action",
    "algebraic_spectrum",
    "gap_analysis",
    "Report",
]
