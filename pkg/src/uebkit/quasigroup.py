"""Latin squares viewed as finite quasigroups and loops.

A latin square of order ``d`` is stored as a ``d x d`` integer table over the
symbols ``0..d-1`` with ``table[r][c] = r * c``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class LatinSquareError(ValueError):
    pass


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LatinSquare:
    table: np.ndarray

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __call__(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __eq__(self, other):
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    @cached_property
    def _left_div(self) -> np.ndarray:
        # _left_div[a, c] = b  with  a*b = c
        d = self.order
        out = np.empty((d, d), dtype=int)
        for a in range(d):
            out[a, self.table[a]] = np.arange(d)
        return _readonly(out)

    @cached_property
    def _right_div(self) -> np.ndarray:
        # _right_div[c, b] = a  with  a*b = c
        d = self.order
        out = np.empty((d, d), dtype=int)
        for b in range(d):
            out[self.table[:, b], b] = np.arange(d)
        return _readonly(out)

    def is_loop(self) -> bool:
        d = self.order
        ar = np.arange(d)
        return bool(np.array_equal(self.table[0], ar) and np.array_equal(self.table[:, 0], ar))

    def letters(self) -> list[str]:
        return ["".join(chr(ord("a") + s) for s in row) for row in self.table]


def validate(candidate) -> LatinSquare:
    """Check ``candidate`` is a latin square and wrap it.

    Raises :class:`LatinSquareError` naming the first offending row or column.
    """
    t = np.array(candidate)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise LatinSquareError(f"latin square must be a non-empty square array, got shape {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        if not np.all(t == np.round(t)):
            raise LatinSquareError("latin square entries must be integers")
        t = t.astype(int)
    d = t.shape[0]
    if t.min() < 0 or t.max() >= d:
        raise LatinSquareError(f"symbols must lie in 0..{d - 1}")
    for r in range(d):
        if len(set(t[r].tolist())) != d:
            raise LatinSquareError(f"duplicate symbol in row {r}: {t[r].tolist()}")
    for c in range(d):
        if len(set(t[:, c].tolist())) != d:
            raise LatinSquareError(f"duplicate symbol in column {c}: {t[:, c].tolist()}")
    return LatinSquare(_readonly(t.astype(int, copy=True)))


def from_letters(rows: list[str]) -> LatinSquare:
    """Build a square from rows of letters, ``a`` being symbol 0."""
    return validate([[ord(ch) - ord("a") for ch in row.replace(" ", "")] for row in rows])


def left_divide(L: LatinSquare, a: int, c: int) -> int:
    """The unique ``b`` with ``a*b = c``."""
    return int(L._left_div[a, c])


def right_divide(L: LatinSquare, c: int, b: int) -> int:
    """The unique ``a`` with ``a*b = c``."""
    return int(L._right_div[c, b])


def is_associative(L: LatinSquare) -> bool:
    t = L.table
    # (a*b)*c  vs  a*(b*c) over all triples at once
    lhs = t[t[:, :, None], np.arange(L.order)[None, None, :]]
    rhs = t[np.arange(L.order)[:, None, None], t[None, :, :]]
    return bool(np.array_equal(lhs, rhs))


@dataclass(frozen=True)
class Isotopy:
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    sym_perm: tuple[int, ...]

    def __post_init__(self):
        n = len(self.row_perm)
        for name in ("row_perm", "col_perm", "sym_perm"):
            p = tuple(int(x) for x in getattr(self, name))
            if sorted(p) != list(range(n)):
                raise ValueError(f"{name} is not a permutation of 0..{n - 1}: {p}")
            object.__setattr__(self, name, p)

    @classmethod
    def identity(cls, d: int) -> "Isotopy":
        p = tuple(range(d))
        return cls(p, p, p)

    def inverse(self) -> "Isotopy":
        return Isotopy(_invert(self.row_perm), _invert(self.col_perm), _invert(self.sym_perm))

    def then(self, other: "Isotopy") -> "Isotopy":
        """Apply ``self`` first, then ``other``."""
        comp = lambda p, q: tuple(q[p[x]] for x in range(len(p)))  # noqa: E731
        return Isotopy(
            comp(self.row_perm, other.row_perm),
            comp(self.col_perm, other.col_perm),
            comp(self.sym_perm, other.sym_perm),
        )


def _invert(p) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def isotope(L: LatinSquare, iso: Isotopy) -> LatinSquare:
    """Return ``L'`` with ``L'[r][c] = sym(L[row^-1(r)][col^-1(c)])``."""
    if len(iso.row_perm) != L.order:
        raise ValueError("isotopy order does not match the square")
    rinv = np.array(_invert(iso.row_perm))
    cinv = np.array(_invert(iso.col_perm))
    sym = np.array(iso.sym_perm)
    t = sym[L.table[rinv[:, None], cinv[None, :]]]
    return LatinSquare(_readonly(t))


def normalize_to_loop(L: LatinSquare) -> tuple[LatinSquare, Isotopy]:
    """Isotope ``L`` into a loop with unit 0.

    Columns are permuted so that row 0 reads ``0..d-1``, then rows are
    permuted so that column 0 does too.  Symbols are left alone.
    """
    d = L.order
    col_perm = tuple(int(x) for x in L.table[0])
    step1 = isotope(L, Isotopy(tuple(range(d)), col_perm, tuple(range(d))))
    row_perm = tuple(int(x) for x in step1.table[:, 0])
    iso = Isotopy(row_perm, col_perm, tuple(range(d)))
    return isotope(L, iso), iso


@dataclass(frozen=True)
class GroupSpec:
    """The abelian group Z_{n1} x ... x Z_{nk}."""

    factors: tuple[int, ...]

    def __post_init__(self):
        f = tuple(int(n) for n in self.factors)
        if not f or any(n < 1 for n in f):
            raise ValueError(f"group factors must be a nonempty list of positive integers: {self.factors}")
        object.__setattr__(self, "factors", f)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``Z6``, ``Z2xZ2``, ``Z2*Z3`` and similar."""
        parts = re.split(r"\s*[x*×]\s*", text.strip())
        factors = []
        for part in parts:
            m = re.fullmatch(r"[ZzCc]_?(\d+)", part)
            if not m:
                raise ValueError(f"cannot parse group spec {text!r}")
            factors.append(int(m.group(1)))
        return cls(tuple(factors))

    @property
    def order(self) -> int:
        return int(np.prod(self.factors))

    def __str__(self):
        return "x".join(f"Z{n}" for n in self.factors)

    def decode(self, x: int) -> tuple[int, ...]:
        digits = []
        for n in reversed(self.factors):
            x, r = divmod(x, n)
            digits.append(r)
        return tuple(reversed(digits))

    def encode(self, digits) -> int:
        x = 0
        for n, g in zip(self.factors, digits):
            x = x * n + (g % n)
        return x

    def add(self, x: int, y: int) -> int:
        return self.encode(a + b for a, b in zip(self.decode(x), self.decode(y)))

    def neg(self, x: int) -> int:
        return self.encode(-a for a in self.decode(x))


def cayley_table(g: GroupSpec) -> LatinSquare:
    d = g.order
    return validate([[g.add(x, y) for y in range(d)] for x in range(d)])


def inversion_isotopy(g: GroupSpec) -> Isotopy:
    """Symbol permutation sending every element to its inverse."""
    d = g.order
    inv = tuple(g.neg(x) for x in range(d))
    ident = tuple(range(d))
    return Isotopy(ident, ident, inv)


def permutation_group_table(n: int) -> LatinSquare:
    """Cayley table of the symmetric group S_n, identity first (lexicographic order)."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    return validate([[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms])


def row_permutation_matrix(L: LatinSquare, j: int) -> np.ndarray:
    """The 0/1 matrix ``P_j`` with ``P_j |i> = |L[i][j]>``."""
    d = L.order
    if not 0 <= j < d:
        raise IndexError(f"shift index {j} out of range for order {d}")
    P = np.zeros((d, d), dtype=complex)
    P[L.table[:, j], np.arange(d)] = 1
    return P


def to_json(L: LatinSquare) -> dict:
    return {"order": L.order, "table": L.table.tolist()}


def from_json(obj) -> LatinSquare:
    if isinstance(obj, dict):
        L = validate(obj["table"])
        if "order" in obj and int(obj["order"]) != L.order:
            raise LatinSquareError(f"declared order {obj['order']} does not match table order {L.order}")
        return L
    return validate(obj)


# A non-associative loop of order 6 with unit a, rows as letters.
NONASSOC6_ROWS = [
    "abcdef",
    "baefcd",
    "cfbade",
    "deabfc",
    "edfcba",
    "fcdeab",
]


def nonassociative_6() -> LatinSquare:
    return from_letters(NONASSOC6_ROWS)
