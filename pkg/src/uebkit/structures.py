"""Classical structures, latin square structures and their axioms as matrices.

Every diagram is evaluated bottom-to-top as a product of matrices; tensor
factors are ordered left-to-right so the left wire is the most significant
index (``|a>|b>`` is basis vector ``a*d + b``).  Maps ``H^m -> H^n`` are
``d^n x d^m`` matrices, states are columns and effects are rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .hadamard import HadamardFamily, normalized_rows
from .linalg import DEFAULT_TOL, ShapeError, allclose, basis_vector, identity, is_unitary, kron, swap
from .quasigroup import LatinSquare


class StructureError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ClassicalStructure:
    """Copy/merge maps of an orthonormal basis (the basis vectors are columns)."""

    basis: np.ndarray
    mult: np.ndarray
    comult: np.ndarray
    unit: np.ndarray
    counit: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def state(self, i: int) -> np.ndarray:
        return self.basis[:, [i]]

    @property
    def cup(self) -> np.ndarray:
        return self.comult @ self.unit

    @property
    def cap(self) -> np.ndarray:
        return self.counit @ self.mult


def _copy_maps(vectors: np.ndarray, duals: np.ndarray):
    """Maps that copy ``vectors``; ``duals`` is the biorthogonal basis."""
    d = vectors.shape[0]
    comult = np.zeros((d * d, d), dtype=complex)
    for i in range(d):
        v = vectors[:, [i]]
        comult += np.kron(v, v) @ duals[:, [i]].conj().T
    counit = duals.conj().sum(axis=1).reshape(1, d)
    return comult.conj().T, comult, counit.conj().T, counit


def classical_from_onb(basis, tol: float = DEFAULT_TOL, *, check: bool = True) -> ClassicalStructure:
    """Classical structure copying the columns of ``basis``.

    ``comult|i> = |i>|i>``, ``mult(|i>|j>) = delta_ij |i>``, ``counit|i> = 1``
    and ``unit = sum_i |i>``, extended linearly.  ``check=False`` skips the
    orthonormality test so that broken inputs can be studied.
    """
    b = np.array(basis, dtype=complex)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ShapeError(f"basis must be d x d (vectors as columns), got {b.shape}")
    if check and np.max(np.abs(b.conj().T @ b - np.eye(b.shape[0]))) > tol:
        raise StructureError("basis is not orthonormal")
    # for an orthonormal basis the dual basis is the basis itself
    mult, comult, unit, counit = _copy_maps(b, b)
    return ClassicalStructure(b, mult, comult, unit, counit)


def standard_structure(d: int) -> ClassicalStructure:
    return classical_from_onb(np.eye(d))


def white_structure(h) -> ClassicalStructure:
    """Classical structure for the orthonormal basis of rows of ``h / sqrt(d)``."""
    return classical_from_onb(normalized_rows(h))


def frobenius_from_basis(vectors) -> ClassicalStructure:
    """Dagger Frobenius algebra copying an arbitrary (not normalised) basis.

    Used for the group algebra whose copyable states are the unnormalised
    Fourier vectors; the result is commutative but not special.
    """
    v = np.array(vectors, dtype=complex)
    duals = np.linalg.inv(v).conj().T
    mult, comult, unit, counit = _copy_maps(v, duals)
    return ClassicalStructure(v, mult, comult, unit, counit)


def group_algebra(table) -> tuple[np.ndarray, np.ndarray]:
    """Linear extension of a binary operation and its unit state ``|0>``."""
    t = np.asarray(table)
    d = t.shape[0]
    m = np.zeros((d, d * d), dtype=complex)
    for a in range(d):
        for b in range(d):
            m[t[a, b], a * d + b] = 1
    return m, basis_vector(d, 0)


def spider(s: ClassicalStructure, n_in: int, n_out: int) -> np.ndarray:
    """The ``n_in -> n_out`` spider as a sum over copyable basis states."""
    d = s.dim
    out = np.zeros((d**n_out, d**n_in), dtype=complex)
    for i in range(d):
        v = s.state(i)
        out += kron(*([v] * n_out)) @ kron(*([v.conj().T] * n_in))
    return out


def apply_left(m: np.ndarray, state: np.ndarray) -> np.ndarray:
    """``m o (state (x) id)``: plug a state into the left input of ``m``."""
    d = m.shape[0]
    return m @ np.kron(state, identity(d))


def apply_right(m: np.ndarray, state: np.ndarray) -> np.ndarray:
    d = m.shape[0]
    return m @ np.kron(identity(d), state)


@dataclass
class ClassicalAxiomReport:
    associative: bool
    unital: bool
    coassociative: bool
    counital: bool
    frobenius: bool
    special: bool
    commutative: bool
    dagger: bool

    @property
    def all_ok(self) -> bool:
        return all(getattr(self, f.name) for f in fields(self))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def frobenius_law(mult: np.ndarray, comult: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """``(id x m)(D x id) = D m = (m x id)(id x D)``."""
    d = mult.shape[0]
    I = identity(d)
    left = np.kron(I, mult) @ np.kron(comult, I)
    middle = comult @ mult
    right = np.kron(mult, I) @ np.kron(I, comult)
    return allclose(left, middle, tol) and allclose(middle, right, tol)


def check_classical_axioms(s: ClassicalStructure, tol: float = DEFAULT_TOL) -> ClassicalAxiomReport:
    d = s.dim
    I = identity(d)
    m, D, u, e = s.mult, s.comult, s.unit, s.counit
    return ClassicalAxiomReport(
        associative=allclose(m @ np.kron(m, I), m @ np.kron(I, m), tol),
        unital=allclose(m @ np.kron(u, I), I, tol) and allclose(m @ np.kron(I, u), I, tol),
        coassociative=allclose(np.kron(D, I) @ D, np.kron(I, D) @ D, tol),
        counital=allclose(np.kron(e, I) @ D, I, tol) and allclose(np.kron(I, e) @ D, I, tol),
        frobenius=frobenius_law(m, D, tol),
        special=allclose(m @ D, I, tol),
        commutative=allclose(m @ swap(d), m, tol),
        dagger=allclose(D, m.conj().T, tol) and allclose(u, e.conj().T, tol),
    )


def complementarity_map(black: ClassicalStructure, white: ClassicalStructure) -> np.ndarray:
    """``sqrt(d) (id x white.mult)(black.comult x id)``."""
    if black.dim != white.dim:
        raise ShapeError(f"dimension mismatch {black.dim} vs {white.dim}")
    d = black.dim
    I = identity(d)
    return math.sqrt(d) * np.kron(I, white.mult) @ np.kron(black.comult, I)


def check_complementary(black: ClassicalStructure, white: ClassicalStructure, tol: float = DEFAULT_TOL) -> bool:
    return is_unitary(complementarity_map(black, white), tol)


@dataclass(frozen=True, eq=False)
class LatinSquareStructure:
    mult: np.ndarray
    comult: np.ndarray
    unit: np.ndarray
    counit: np.ndarray

    @property
    def dim(self) -> int:
        return self.mult.shape[0]


def ls_structure(L: LatinSquare) -> LatinSquareStructure:
    """Linear extension of the loop ``L``; its unit is the basis state ``|0>``."""
    if not L.is_loop():
        raise StructureError("latin square is not a loop with unit 0; normalise it first")
    m, u = group_algebra(L.table)
    return LatinSquareStructure(m, m.conj().T, u, u.conj().T)


def ls_composites(mult, black: ClassicalStructure) -> tuple[np.ndarray, np.ndarray]:
    """The two quasi-complementarity composites.

    ``U1 = (mult x id)(id x copy)``: ``|a>|b> -> |a*b>|b>``.
    ``U2 = (id x mult)(copy x id)``: ``|a>|b> -> |a>|a*b>``.
    """
    mult = np.asarray(mult)
    d = black.dim
    if mult.shape != (d, d * d):
        raise ShapeError(f"multiplication must be {d} x {d * d}, got {mult.shape}")
    I = identity(d)
    U1 = np.kron(mult, I) @ np.kron(I, black.comult)
    U2 = np.kron(I, mult) @ np.kron(black.comult, I)
    return U1, U2


def check_ls_unitarity(mult, black: ClassicalStructure, tol: float = DEFAULT_TOL) -> tuple[bool, bool]:
    U1, U2 = ls_composites(mult, black)
    return is_unitary(U1, tol), is_unitary(U2, tol)


def check_unitality(s: LatinSquareStructure, tol: float = DEFAULT_TOL) -> bool:
    """Unit and counit laws of the latin square structure."""
    I = identity(s.dim)
    m, D, u, e = s.mult, s.comult, s.unit, s.counit
    return (
        allclose(m @ np.kron(u, I), I, tol)
        and allclose(m @ np.kron(I, u), I, tol)
        and allclose(np.kron(e, I) @ D, I, tol)
        and allclose(np.kron(I, e) @ D, I, tol)
    )


def check_bialgebra(mult, black: ClassicalStructure, tol: float = DEFAULT_TOL, unit=None) -> bool:
    """``mult`` is a comonoid homomorphism into the black comonoid.

    Checks ``copy o m = (m x m)(id x swap x id)(copy x copy)`` and
    ``del o m = del x del``; when ``unit`` is given also
    ``copy o u = u x u`` and ``del o u = 1``.
    """
    m = np.asarray(mult)
    d = black.dim
    I = identity(d)
    D, e = black.comult, black.counit
    middle = kron(I, swap(d), I)
    ok = allclose(D @ m, np.kron(m, m) @ middle @ np.kron(D, D), tol)
    ok = ok and allclose(e @ m, np.kron(e, e), tol)
    if unit is not None:
        u = np.asarray(unit)
        ok = ok and allclose(D @ u, np.kron(u, u), tol)
        ok = ok and allclose(e @ u, np.ones((1, 1)), tol)
    return ok


def duality_composite(comult, black: ClassicalStructure) -> np.ndarray:
    """Turn ``comult`` into a map ``H x H -> H`` using black cups and caps.

    Wiring, bottom to top: swap the two inputs while creating a black cup on
    the right; feed the left leg of the cup into ``comult``; cap the
    outputs of ``comult`` against the swapped inputs (inner cap joins the
    left output, outer cap the right one).  The free cup leg is the output.
    """
    D = np.asarray(comult)
    d = black.dim
    I = identity(d)
    cup, cap = black.cup, black.cap
    step = np.kron(swap(d), cup)                       # q p | l r
    step = kron(I, I, D, I) @ step                     # q p x y | r
    step = kron(I, cap, I, I) @ step                   # q y | r
    return np.kron(cap, I) @ step


def check_duality(mult, black: ClassicalStructure, tol: float = DEFAULT_TOL) -> bool:
    """``mult`` equals the cup/cap transpose of its adjoint, and dually."""
    m = np.asarray(mult)
    comult = m.conj().T
    dual = duality_composite(comult, black)
    return allclose(m, dual, tol) and allclose(comult, dual.conj().T, tol)


def latin_axioms(s: LatinSquareStructure, black: ClassicalStructure, tol: float = DEFAULT_TOL) -> dict:
    """Every axiom of a latin square structure, plus the Frobenius law."""
    ls1, ls2 = check_ls_unitarity(s.mult, black, tol)
    return {
        "dagger": allclose(s.comult, s.mult.conj().T, tol),
        "unitality": check_unitality(s, tol),
        "bialgebra": check_bialgebra(s.mult, black, tol, unit=s.unit),
        "duality": check_duality(s.mult, black, tol),
        "ls1": ls1,
        "ls2": ls2,
        "frobenius": frobenius_law(s.mult, s.comult, tol),
    }


@dataclass(frozen=True, eq=False)
class GeneralizedLSStructure:
    mult: np.ndarray

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def comult(self) -> np.ndarray:
        return self.mult.conj().T

    def table(self, tol: float = DEFAULT_TOL) -> list[list[tuple[int, complex]]]:
        """``(symbol, coefficient)`` per input pair when every column is a scaled basis vector."""
        d = self.dim
        rows = []
        for a in range(d):
            row = []
            for b in range(d):
                col = self.mult[:, a * d + b]
                s = int(np.argmax(np.abs(col)))
                rest = np.delete(col, s)
                if rest.size and np.max(np.abs(rest)) > tol:
                    raise StructureError(f"column ({a},{b}) is not a multiple of a basis state")
                row.append((s, complex(col[s])))
            rows.append(row)
        return rows


def hadamard_phase(fam: HadamardFamily, k: int, m: int, b: int) -> complex:
    """The scalar ``<m_k| mu_k(|m_k> x |b>)`` with the unnormalised white effect.

    ``mu_k`` is the white structure of ``fam[k]``; the effect is taken as
    ``sqrt(d) <m_k|`` so the result is unimodular (it equals
    ``conj(fam[k][m, b])``).
    """
    white = white_structure(fam[k])
    d = white.dim
    ket = white.state(m)
    black_b = basis_vector(d, b)
    value = (ket.conj().T @ white.mult @ np.kron(ket, black_b))[0, 0]
    return complex(math.sqrt(d) * value)


def generalized_ls_mult(L: LatinSquare, fam: HadamardFamily, k: int) -> GeneralizedLSStructure:
    """Twist a loop's multiplication by a white-k phase on the left input.

    ``mult = sum_m <m| x [(<m_k| mu_k(|m_k> x -)) x ls(|m> x -)] o copy``,
    so on basis states ``|a>|b> -> conj(fam[k][a, b]) |a*b>``.
    """
    d = L.order
    if fam.order != d:
        raise ShapeError(f"family order {fam.order} does not match square order {d}")
    if not 0 <= k < d:
        raise IndexError(f"white index {k} out of range for order {d}")
    ls = ls_structure(L)
    black = standard_structure(d)
    white = white_structure(fam[k])
    mult = np.zeros((d, d * d), dtype=complex)
    for m in range(d):
        ket = white.state(m)
        # row vector: b -> <m_k| mu_k(|m_k> x |b>)
        phase_row = math.sqrt(d) * (ket.conj().T @ apply_left(white.mult, ket))
        right = np.kron(phase_row, apply_left(ls.mult, black.state(m))) @ black.comult
        mult += np.kron(black.state(m).conj().T, right)
    return GeneralizedLSStructure(mult)
