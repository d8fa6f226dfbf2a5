"""Complex Hadamard matrices and the mutually-unbiased-basis connection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, ShapeError, as_matrix, matrix_from_json, matrix_to_json
from .quasigroup import GroupSpec


class NotHadamardError(ValueError):
    pass


def is_hadamard(m, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    d = m.shape[0]
    if np.max(np.abs(np.abs(m) - 1)) > tol:
        return False
    return bool(np.max(np.abs(m @ m.conj().T - d * np.eye(d))) <= d * tol)


def hadamard(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate ``m`` as a Hadamard matrix and return it read-only."""
    m = as_matrix(m)
    if not is_hadamard(m, tol):
        raise NotHadamardError("matrix is not a complex Hadamard matrix")
    return m


def fourier_matrix(g: GroupSpec) -> np.ndarray:
    """Character table of ``g``: ``F[x][y] = prod exp(2 pi i x_k y_k / n_k)``.

    Equal to the Kronecker product of the cyclic DFT matrices, first factor
    most significant (matching the mixed-radix element encoding).
    """
    F = np.ones((1, 1), dtype=complex)
    for n in g.factors:
        k = np.arange(n)
        F = np.kron(F, np.exp(2j * np.pi * np.outer(k, k) / n))
    return as_matrix(F)


C6_P = (1 - math.sqrt(3)) / 2 + 1j * math.sqrt(math.sqrt(3) / 2)


def butson_c6() -> np.ndarray:
    """The isolated self-adjoint 6x6 complex Hadamard matrix ``C_6^(0)``.

    ``p = (1 - sqrt 3)/2 + i sqrt(sqrt(3)/2)`` is unimodular.  Entry (3, 1)
    is ``-conj(p)^2``; with ``+conj(p)^2`` there the rows are not orthogonal.
    """
    p = C6_P
    q = p.conjugate()
    m = [
        [1, 1, 1, 1, 1, 1],
        [1, -1, -p, -p**2, p**2, p],
        [1, -q, 1, p**2, -p**3, p**2],
        [1, -q**2, q**2, -1, p**2, -p**2],
        [1, q**2, -q**3, q**2, 1, -p],
        [1, q, q**2, -q**2, -q, -1],
    ]
    return hadamard(m)


def dephase(h) -> np.ndarray:
    """Rescale rows then columns so the first row and column are all 1."""
    h = np.array(h, dtype=complex)
    row_ph = h[:, 0] / np.abs(h[:, 0])
    h = h * row_ph.conj()[:, None]
    col_ph = h[0, :] / np.abs(h[0, :])
    h = h * col_ph.conj()[None, :]
    # the pivot entries are exactly 1 by construction; pin them against rounding
    h[0, :] = 1
    h[:, 0] = 1
    return as_matrix(h, copy=False)


def normalized_rows(h) -> np.ndarray:
    """Orthonormal basis (as columns) given by the rows of ``h / sqrt(d)``.

    This is the white basis paired with ``h``: ``sqrt(d)`` times its ``i``-th
    vector is row ``i`` of ``h``.
    """
    h = np.asarray(h)
    return np.ascontiguousarray(h.T) / math.sqrt(h.shape[0])


def is_orthonormal(vectors, tol: float = DEFAULT_TOL) -> bool:
    v = np.asarray(vectors)
    return bool(np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1]))) <= tol)


def mub_check(basis_a, basis_b, tol: float = DEFAULT_TOL) -> bool:
    """True iff the two orthonormal bases (columns) are mutually unbiased."""
    a = np.asarray(basis_a)
    b = np.asarray(basis_b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ShapeError(f"bases must both be d x d, got {a.shape} and {b.shape}")
    for name, v in (("basis_a", a), ("basis_b", b)):
        if not is_orthonormal(v, tol):
            raise ValueError(f"{name} is not orthonormal")
    d = a.shape[0]
    overlaps = np.abs(a.conj().T @ b) ** 2
    return bool(np.max(np.abs(overlaps - 1 / d)) <= tol)


@dataclass(frozen=True, eq=False)
class HadamardFamily:
    """``d`` Hadamard matrices of order ``d`` indexed by ``j``."""

    members: tuple

    def __post_init__(self):
        members = tuple(hadamard(m) for m in self.members)
        if not members:
            raise ValueError("empty Hadamard family")
        d = members[0].shape[0]
        if any(m.shape != (d, d) for m in members):
            raise ValueError("family members must share the same order")
        if len(members) != d:
            raise ValueError(f"a family of order {d} needs {d} members, got {len(members)}")
        object.__setattr__(self, "members", members)

    @classmethod
    def replicate(cls, h) -> "HadamardFamily":
        h = hadamard(h)
        return cls(tuple(h for _ in range(h.shape[0])))

    @property
    def order(self) -> int:
        return self.members[0].shape[0]

    def __getitem__(self, j: int) -> np.ndarray:
        return self.members[j]


def family_to_json(fam: HadamardFamily) -> dict:
    return {"order": fam.order, "members": [matrix_to_json(m) for m in fam.members]}


def family_from_json(obj: dict) -> HadamardFamily:
    if "members" not in obj:
        # a bare matrix is accepted and replicated
        return HadamardFamily.replicate(matrix_from_json(obj))
    fam = HadamardFamily(tuple(matrix_from_json(m) for m in obj["members"]))
    if "order" in obj and int(obj["order"]) != fam.order:
        raise ValueError(f"declared order {obj['order']} does not match members of order {fam.order}")
    return fam
