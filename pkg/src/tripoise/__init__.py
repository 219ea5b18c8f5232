"""Poisedness of piecewise-linear interpolation on triangle strips.

Exact rational geometry, a Vandermonde-determinant oracle, and a
structural reduction engine that decides whether a node set admits unique
interpolation in the space of continuous piecewise-linear functions on a
triangle strip.
"""

from .geometry import Line, Point, barycentric, chord_of_triangle, line_through, orient, pt, rat
from .oracle import (
    NotPoisedError,
    Problem,
    det_exact,
    fundamental_functions,
    interpolate,
    kernel_basis,
    make_problem,
    oracle_poised,
    vandermonde_matrix,
)
from .plfunc import PLFunction, hat_function, hat_value, pl_function, zero_function
from .reduction import Verdict, decide
from .strip import InvalidStripError, Strip, build_strip, locate, substrip

__all__ = [
    "Line",
    "Point",
    "pt",
    "rat",
    "orient",
    "barycentric",
    "line_through",
    "chord_of_triangle",
    "Strip",
    "InvalidStripError",
    "build_strip",
    "substrip",
    "locate",
    "PLFunction",
    "pl_function",
    "zero_function",
    "hat_function",
    "hat_value",
    "Problem",
    "make_problem",
    "vandermonde_matrix",
    "det_exact",
    "oracle_poised",
    "kernel_basis",
    "fundamental_functions",
    "interpolate",
    "NotPoisedError",
    "Verdict",
    "decide",
]

__version__ = "0.1.0"
