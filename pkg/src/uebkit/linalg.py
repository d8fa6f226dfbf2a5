"""Dense complex matrix kernel.

Matrices are plain ``numpy`` complex arrays.  Everything built by this
package goes through :func:`as_matrix`, which rejects non-finite entries and
hands back a read-only copy so values can be shared freely.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-9


class ShapeError(ValueError):
    """Raised when operand shapes are incompatible."""


def as_matrix(data, *, copy: bool = True) -> np.ndarray:
    """Coerce ``data`` to a 2-D read-only complex array."""
    m = np.array(data, dtype=complex, copy=copy)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.size == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    m.setflags(write=False)
    return m


def _check_square(a: np.ndarray) -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return a.shape[0]


def matmul(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot compose {a.shape} with {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    return np.asarray(a).conj().T


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^dagger b)``."""
    a = np.asarray(a)
    b = np.asarray(b)
    _check_square(a)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    # tr(a^dag b) = sum conj(a_ij) b_ij, no product matrix needed
    return complex(np.vdot(a, b))


def kron(*factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, np.asarray(f))
    return out


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex)


def basis_vector(d: int, i: int) -> np.ndarray:
    """Column vector ``|i>`` of dimension ``d``."""
    v = np.zeros((d, 1), dtype=complex)
    v[i, 0] = 1
    return v


def swap(d: int) -> np.ndarray:
    """The d^2 x d^2 permutation taking |i>|j> to |j>|i>."""
    s = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            s[j * d + i, i * d + j] = 1
    return s


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def allclose(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Entrywise absolute comparison; shapes must agree."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    return max_abs(a - b) <= tol


def unitarity_defect(a) -> float:
    a = np.asarray(a)
    d = _check_square(a)
    eye = np.eye(d)
    return max(max_abs(a.conj().T @ a - eye), max_abs(a @ a.conj().T - eye))


def is_unitary(a, tol: float = DEFAULT_TOL) -> bool:
    return unitarity_defect(a) <= tol


def matrix_to_json(a) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if rows < 1 or cols < 1 or len(entries) != rows * cols:
        raise ShapeError(f"expected {rows}x{cols} entries, got {len(entries)}")
    flat = [complex(re, im) for re, im in entries]
    return as_matrix(np.array(flat).reshape(rows, cols))
