"""Reproduce the order-6 generalized latin square table.

The inputs are the non-associative loop ``nonassociative_6`` and six copies
of ``butson_c6``.  The computed table is compared against a transcription
of the reference table, after fitting a single global scale factor.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .hadamard import C6_P, HadamardFamily, butson_c6
from .linalg import DEFAULT_TOL
from .quasigroup import nonassociative_6
from .structures import generalized_ls_mult
from .ueb import VerificationReport, generalized_shift_multiply, verify

# Each entry: (symbol, sign, power of p, divided by sqrt 6).
# Negative powers stand for powers of conj(p).
REFERENCE_TABLE = [
    [("a", 1, 0, False), ("b", 1, 0, True), ("c", 1, 0, True), ("d", 1, 0, True), ("e", 1, 0, True), ("f", 1, 0, True)],
    [("b", 1, 0, True), ("a", -1, 0, False), ("e", -1, -1, True), ("f", -1, -2, True), ("c", 1, -2, True), ("d", 1, -1, True)],
    [("c", 1, 0, True), ("f", -1, 1, True), ("b", 1, 0, True), ("a", 1, -2, False), ("d", -1, -3, True), ("e", 1, -2, True)],
    [("d", 1, 0, True), ("e", -1, 2, True), ("a", 1, 2, False), ("b", -1, 0, True), ("f", 1, -2, True), ("c", -1, -2, True)],
    [("e", 1, 0, True), ("d", 1, 2, True), ("f", -1, 3, True), ("c", 1, 2, True), ("b", 1, 0, True), ("a", -1, 1, False)],
    [("f", 1, 0, True), ("c", 1, 1, True), ("d", 1, 2, True), ("e", -1, 2, True), ("a", 1, -1, False), ("b", -1, 0, True)],
]


def reference_coefficient(sign: int, power: int, scaled: bool) -> complex:
    base = C6_P if power >= 0 else C6_P.conjugate()
    value = sign * base ** abs(power)
    return value / math.sqrt(6) if scaled else value


@dataclass
class ReproEntry:
    row: str
    col: str
    symbol: str
    coefficient: complex
    reference_symbol: str
    reference_coefficient: complex
    deviation: float = 0.0
    flagged: bool = False


@dataclass
class ReproReport:
    k: int
    entries: list[ReproEntry]
    scale: complex
    symbols_match: bool
    coefficients_match: bool
    verification: VerificationReport
    flagged: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.symbols_match and self.coefficients_match and self.verification.is_ueb


def _modal_ratio(ratios: list[complex], digits: int = 9) -> complex:
    # the scale shared by the largest number of entries
    keyed = Counter((round(r.real, digits), round(r.imag, digits)) for r in ratios)
    (re, im), _ = keyed.most_common(1)[0]
    return complex(re, im)


def repro_d6(k: int = 0, tol: float = DEFAULT_TOL) -> ReproReport:
    """Build the order-6 generalized table and compare it with the reference transcription.

    The scale factor is the ratio ``computed / reference`` shared by the most
    entries; every entry whose ratio differs from it by more than ``tol`` is
    flagged.
    """
    L = nonassociative_6()
    fam = HadamardFamily.replicate(butson_c6())
    table = generalized_ls_mult(L, fam, k).table(tol)
    letters = "abcdef"
    entries = []
    for a in range(6):
        for b in range(6):
            sym, coeff = table[a][b]
            psym, sign, power, scaled = REFERENCE_TABLE[a][b]
            entries.append(ReproEntry(
                letters[a], letters[b], letters[sym], coeff, psym, reference_coefficient(sign, power, scaled),
            ))
    scale = _modal_ratio([e.coefficient / e.reference_coefficient for e in entries])
    for e in entries:
        e.deviation = abs(e.coefficient - scale * e.reference_coefficient)
        e.flagged = e.deviation > tol
    flagged = [(e.row, e.col) for e in entries if e.flagged]
    return ReproReport(
        k=k,
        entries=entries,
        scale=scale,
        symbols_match=all(e.symbol == e.reference_symbol for e in entries),
        coefficients_match=not flagged,
        verification=verify(generalized_shift_multiply(L, fam, k), tol),
        flagged=flagged,
    )
