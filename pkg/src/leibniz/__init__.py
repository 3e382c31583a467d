"""Leibniz algebras from structure constants: decompositions of derivations and
automorphisms, nilpotency criteria and their executable checks."""
from .algebra import (
    Check,
    LeibnizAlgebra,
    SeriesReport,
    Subspace,
    check_leibniz,
    derived_series,
    engel_check,
    is_ideal,
    l_ann_ideal,
    lower_central_series,
    quotient,
    right_annihilator,
)
from .linalg import DEFAULT_TOL, Tolerance

__version__ = "0.1.0"

__all__ = [
    "Check",
    "LeibnizAlgebra",
    "SeriesReport",
    "Subspace",
    "check_leibniz",
    "derived_series",
    "engel_check",
    "is_ideal",
    "l_ann_ideal",
    "lower_central_series",
    "quotient",
    "right_annihilator",
    "DEFAULT_TOL",
    "Tolerance",
]
