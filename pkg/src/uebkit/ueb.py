"""Unitary error bases: constructions, verification and equivalence moves."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .hadamard import HadamardFamily, fourier_matrix
from .linalg import DEFAULT_TOL, ShapeError, as_matrix, identity, is_unitary, matrix_from_json, matrix_to_json
from .quasigroup import GroupSpec, Isotopy, LatinSquare, cayley_table, isotope, row_permutation_matrix
from .structures import apply_left, hadamard_phase, standard_structure, white_structure


class NotAnErrorBasisError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ErrorBasis:
    """``d^2`` matrices of size ``d x d``; ``elements[i, j]`` is element (i, j)."""

    elements: np.ndarray

    def __post_init__(self):
        e = np.array(self.elements, dtype=complex)
        if e.ndim != 4 or not (e.shape[0] == e.shape[1] == e.shape[2] == e.shape[3]):
            raise ShapeError(f"elements must have shape (d, d, d, d), got {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("basis entries must be finite")
        e.setflags(write=False)
        object.__setattr__(self, "elements", e)

    @classmethod
    def from_list(cls, matrices) -> "ErrorBasis":
        """Build from ``d^2`` matrices in row-major ``(i, j)`` order."""
        mats = np.array([np.asarray(m, dtype=complex) for m in matrices])
        d = mats.shape[-1]
        if mats.shape != (d * d, d, d):
            raise ShapeError(f"need {d * d} matrices of size {d}x{d}, got {mats.shape}")
        return cls(mats.reshape(d, d, d, d))

    @property
    def dim(self) -> int:
        return self.elements.shape[0]

    def flat(self) -> np.ndarray:
        d = self.dim
        return self.elements.reshape(d * d, d, d)

    def __getitem__(self, ij) -> np.ndarray:
        return self.elements[ij]


@dataclass
class VerificationReport:
    all_unitary: bool
    gram: np.ndarray
    max_unitarity_defect: float
    max_orthogonality_defect: float
    is_ueb: bool

    def as_dict(self) -> dict:
        return {
            "all_unitary": self.all_unitary,
            "max_unitarity_defect": self.max_unitarity_defect,
            "max_orthogonality_defect": self.max_orthogonality_defect,
            "is_ueb": self.is_ueb,
        }


def gram_matrix(basis: ErrorBasis) -> np.ndarray:
    """``G[a, b] = tr(e_a^dagger e_b)`` over row-major element indices."""
    flat = basis.flat()
    return np.einsum("axy,bxy->ab", flat.conj(), flat)


def verify(basis: ErrorBasis, tol: float = DEFAULT_TOL) -> VerificationReport:
    d = basis.dim
    flat = basis.flat()
    eye = np.eye(d)
    prods = np.einsum("axy,axz->ayz", flat.conj(), flat)
    unit_defect = float(np.max(np.abs(prods - eye)))
    prods = np.einsum("axy,azy->axz", flat, flat.conj())
    unit_defect = max(unit_defect, float(np.max(np.abs(prods - eye))))
    gram = gram_matrix(basis)
    orth_defect = float(np.max(np.abs(gram - d * np.eye(d * d))))
    all_unitary = unit_defect <= tol
    return VerificationReport(
        all_unitary=all_unitary,
        gram=gram,
        max_unitarity_defect=unit_defect,
        max_orthogonality_defect=orth_defect,
        is_ueb=all_unitary and orth_defect <= tol,
    )


def pauli_basis(theta: float = 0.0) -> ErrorBasis:
    """``{I, Z, [[0, e^{i theta}], [1, 0]], [[0, -e^{i theta}], [1, 0]]}``."""
    w = cmath.exp(1j * theta)
    return ErrorBasis.from_list([
        [[1, 0], [0, 1]],
        [[1, 0], [0, -1]],
        [[0, w], [1, 0]],
        [[0, -w], [1, 0]],
    ])


CANONICAL_PAULI = ErrorBasis.from_list([
    [[1, 0], [0, 1]],
    [[1, 0], [0, -1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
])


def _check_orders(L: LatinSquare, fam: HadamardFamily):
    if L.order != fam.order:
        raise ShapeError(f"latin square order {L.order} does not match family order {fam.order}")


def shift_multiply(L: LatinSquare, fam: HadamardFamily) -> ErrorBasis:
    """``E_ij = P_j diag(row i of fam[j])``."""
    _check_orders(L, fam)
    d = L.order
    el = np.empty((d, d, d, d), dtype=complex)
    for j in range(d):
        P = row_permutation_matrix(L, j)
        for i in range(d):
            el[i, j] = P * fam[j][i][None, :]
    return ErrorBasis(el)


def minimal_shift_multiply(g: GroupSpec) -> ErrorBasis:
    return shift_multiply(cayley_table(g), HadamardFamily.replicate(fourier_matrix(g)))


def mub_basis(g: GroupSpec) -> ErrorBasis:
    """MUB error basis of an abelian group, assembled from the two structures.

    ``M_ij = d * W_j o T o B_i`` where ``B_i`` is the black multiplication
    with the white state ``i`` plugged in, ``T = (id x black cap)(white cup x
    id)`` and ``W_j`` is the white multiplication with black state ``j``.
    """
    d = g.order
    black = standard_structure(d)
    white = white_structure(fourier_matrix(g))
    I = identity(d)
    T = np.kron(I, black.cap) @ np.kron(white.cup, I)
    el = np.empty((d, d, d, d), dtype=complex)
    for i in range(d):
        B = apply_left(black.mult, white.state(i))
        for j in range(d):
            W = apply_left(white.mult, black.state(j))
            el[i, j] = d * (W @ T @ B)
    return ErrorBasis(el)


def minimal_to_mub(g: GroupSpec) -> tuple[ErrorBasis, ErrorBasis]:
    """Minimal shift-and-multiply basis rewired into the MUB basis.

    Precomposing every ``P_j`` with group inversion gives the shifts
    ``P'_j |i> = |j - i>``, i.e. the Cayley table isotoped by inverting the
    row labels.  The resulting basis coincides with ``mub_basis(g)``.
    """
    inv = tuple(g.neg(x) for x in range(g.order))
    ident = tuple(range(g.order))
    L_prime = isotope(cayley_table(g), Isotopy(inv, ident, ident))
    E_prime = shift_multiply(L_prime, HadamardFamily.replicate(fourier_matrix(g)))
    return E_prime, mub_basis(g)


def d_j_matrix(j: int, fam: HadamardFamily, k: int) -> np.ndarray:
    """Diagonal phase matrix ``D_j`` with entries ``<m_k| mu_k(|m_k> x |j>)``."""
    d = fam.order
    if not (0 <= j < d and 0 <= k < d):
        raise IndexError(f"indices j={j}, k={k} out of range for order {d}")
    return np.diag([hadamard_phase(fam, k, m, j) for m in range(d)])


def generalized_shift_multiply(L: LatinSquare, fam: HadamardFamily, k: int, d_matrices=None) -> ErrorBasis:
    """``B'_ij = P_j D_j diag(row i of fam[j])``.

    ``d_matrices`` overrides the phase model (``D_j = I`` recovers the plain
    shift-and-multiply basis).
    """
    _check_orders(L, fam)
    d = L.order
    if not 0 <= k < d:
        raise IndexError(f"white index {k} out of range for order {d}")
    if d_matrices is None:
        d_matrices = [d_j_matrix(j, fam, k) for j in range(d)]
    el = np.empty((d, d, d, d), dtype=complex)
    for j in range(d):
        PD = row_permutation_matrix(L, j) @ np.asarray(d_matrices[j])
        for i in range(d):
            el[i, j] = PD * fam[j][i][None, :]
    return ErrorBasis(el)


@dataclass(frozen=True, eq=False)
class EquivalenceTransform:
    """``A_ij = c_ij U B_ij V``."""

    left: np.ndarray
    right: np.ndarray
    phases: np.ndarray
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        U = as_matrix(self.left)
        V = as_matrix(self.right)
        c = np.array(self.phases, dtype=complex)
        if not (is_unitary(U, self.tol) and is_unitary(V, self.tol)):
            raise ValueError("equivalence transform needs unitary left and right factors")
        if np.max(np.abs(np.abs(c) - 1)) > self.tol:
            raise ValueError("equivalence phases must be unimodular")
        object.__setattr__(self, "left", U)
        object.__setattr__(self, "right", V)
        object.__setattr__(self, "phases", c)

    @classmethod
    def identity(cls, d: int) -> "EquivalenceTransform":
        return cls(np.eye(d), np.eye(d), np.ones((d, d)))


def apply_transform(basis: ErrorBasis, t: EquivalenceTransform) -> ErrorBasis:
    d = basis.dim
    if t.left.shape != (d, d) or t.right.shape != (d, d) or t.phases.shape != (d, d):
        raise ShapeError("transform does not match basis dimension")
    el = np.einsum("ij,xy,ijyz,zw->ijxw", t.phases, t.left, basis.elements, t.right)
    return ErrorBasis(el)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph[None, :]


def random_transform(d: int, rng: np.random.Generator) -> EquivalenceTransform:
    phases = np.exp(2j * np.pi * rng.random((d, d)))
    return EquivalenceTransform(random_unitary(d, rng), random_unitary(d, rng), phases)


def _phase(z: complex) -> complex:
    return z / abs(z)


def eig2(a) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigendecomposition of a normal 2x2 matrix.

    Returns ``(eigenvalues, P)`` with ``P`` unitary and
    ``P^dagger a P = diag(eigenvalues)``.  The first eigenvector is taken
    from whichever formula has the larger-modulus components and phased so
    its first nonzero component is real positive; the second is its
    orthogonal complement.
    """
    a = np.asarray(a, dtype=complex)
    (p, q), (r, s) = a
    tr = p + s
    disc = cmath.sqrt((p - s) ** 2 / 4 + q * r)
    lam = tr / 2 + disc
    cand1 = np.array([q, lam - p])
    cand2 = np.array([lam - s, r])
    v = cand1 if np.linalg.norm(cand1) >= np.linalg.norm(cand2) else cand2
    if np.linalg.norm(v) < 1e-14:
        # already diagonal (or scalar)
        v = np.array([1, 0], dtype=complex)
    v = v / np.linalg.norm(v)
    lead = v[0] if abs(v[0]) > 1e-14 else v[1]
    v = v * _phase(lead).conjugate()
    w = np.array([-v[1].conjugate(), v[0].conjugate()])
    P = np.column_stack([v, w])
    evals = np.diag(P.conj().T @ a @ P)
    return evals, P


@dataclass
class NormalizationStep:
    name: str
    left: np.ndarray
    right: np.ndarray
    phases: np.ndarray

    def as_dict(self) -> dict:
        return {
            "step": self.name,
            "left": matrix_to_json(self.left),
            "right": matrix_to_json(self.right),
            "phases": [[float(z.real), float(z.imag)] for z in self.phases],
        }


def normalize_d2(basis: ErrorBasis, tol: float = DEFAULT_TOL) -> tuple[ErrorBasis, list[NormalizationStep]]:
    """Bring any qubit error basis to ``{I, Z, X, [[0, -i], [i, 0]]}``.

    Steps: left-multiply by the inverse of the first element; diagonalise
    the second and conjugate everything by the eigenvector matrix; fix
    phases so the second element is ``diag(1, -1)`` and the others have
    lower-left entry 1; conjugate by ``T = diag(1, e^{i phi/2})`` where
    ``e^{i phi}`` is the upper-right entry of the third; fix final phases.
    Each step is recorded as an equivalence ``c_n U A_n V``.
    """
    if basis.dim != 2:
        raise ValueError("normalize_d2 needs a basis of dimension 2")
    if not verify(basis, tol).is_ueb:
        raise NotAnErrorBasisError("input is not a unitary error basis")
    mats = [np.array(m) for m in basis.flat()]
    steps: list[NormalizationStep] = []
    ones = np.ones(4, dtype=complex)

    def record(name, U, V, c):
        nonlocal mats
        mats = [c[n] * U @ m @ V for n, m in enumerate(mats)]
        steps.append(NormalizationStep(name, U, V, c))

    record("left-multiply by A1^dagger", mats[0].conj().T, np.eye(2), ones)

    _, P = eig2(mats[1])
    record("conjugate by eigenvectors of A2", P.conj().T, P, ones)
    if abs(mats[1][0, 1]) > tol or abs(mats[1][1, 0]) > tol:
        raise RuntimeError("second element failed to diagonalise")

    c = np.array([
        1,
        _phase(mats[1][0, 0]).conjugate(),
        _phase(mats[2][1, 0]).conjugate(),
        _phase(mats[3][1, 0]).conjugate(),
    ])
    record("rescale phases", np.eye(2), np.eye(2), c)

    phi = cmath.phase(mats[2][0, 1])
    T = np.diag([1, cmath.exp(1j * phi / 2)])
    c = np.array([1, 1, cmath.exp(-1j * phi / 2), 1j * cmath.exp(-1j * phi / 2)])
    record("conjugate by T and fix phases", T, T.conj().T, c)

    return ErrorBasis.from_list(mats), steps


def fingerprint(basis: ErrorBasis, digits: int = 10) -> list[float]:
    """Equivalence-invariant summary (necessary, not sufficient).

    Sorted singular values of every element, followed by the sorted
    eigenvalue moduli of every product ``e_a e_b^dagger``.  Both are
    unchanged by ``c U e V``.
    """
    flat = basis.flat()
    svals = np.sort(np.concatenate([np.linalg.svd(m, compute_uv=False) for m in flat]))
    prods = np.einsum("axy,bzy->abxz", flat, flat.conj())
    n = flat.shape[0]
    d = basis.dim
    moduli = np.sort(np.abs(np.linalg.eigvals(prods.reshape(n * n, d, d))).ravel())
    return [round(float(x), digits) for x in np.concatenate([svals, moduli])]


def to_json(basis: ErrorBasis) -> dict:
    d = basis.dim
    return {
        "dim": d,
        "elements": [[i, j, matrix_to_json(basis[i, j])] for i in range(d) for j in range(d)],
    }


def from_json(obj: dict) -> ErrorBasis:
    d = int(obj["dim"])
    el = np.zeros((d, d, d, d), dtype=complex)
    seen = set()
    for i, j, m in obj["elements"]:
        M = matrix_from_json(m)
        if M.shape != (d, d):
            raise ShapeError(f"element ({i},{j}) has shape {M.shape}, expected {(d, d)}")
        el[i, j] = M
        seen.add((int(i), int(j)))
    if len(seen) != d * d:
        raise ValueError(f"basis JSON must list all {d * d} elements exactly once")
    return ErrorBasis(el)
