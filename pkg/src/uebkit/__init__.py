"""Unitary error bases from latin squares, Hadamard matrices and Frobenius structures."""

from .hadamard import HadamardFamily, butson_c6, fourier_matrix, is_hadamard
from .quasigroup import GroupSpec, LatinSquare, cayley_table, nonassociative_6, validate
from .teleport import teleport_all_outcomes
from .ueb import (
    ErrorBasis,
    generalized_shift_multiply,
    mub_basis,
    minimal_shift_multiply,
    normalize_d2,
    pauli_basis,
    shift_multiply,
    verify,
)

__all__ = [
    "ErrorBasis",
    "GroupSpec",
    "HadamardFamily",
    "LatinSquare",
    "butson_c6",
    "cayley_table",
    "fourier_matrix",
    "generalized_shift_multiply",
    "is_hadamard",
    "minimal_shift_multiply",
    "mub_basis",
    "nonassociative_6",
    "normalize_d2",
    "pauli_basis",
    "shift_multiply",
    "teleport_all_outcomes",
    "validate",
    "verify",
]
