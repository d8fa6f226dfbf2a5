"""Teleportation driven by a unitary error basis, simulated on state vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL
from .ueb import ErrorBasis, NotAnErrorBasisError, verify


@dataclass(frozen=True)
class TeleportTrace:
    outcome: tuple[int, int]
    outcome_probability: float
    fidelity: float


def max_entangled(d: int) -> np.ndarray:
    """``(1/sqrt d) sum_k |kk>`` as a flat vector."""
    return np.eye(d, dtype=complex).ravel() / math.sqrt(d)


def measurement_kets(basis: ErrorBasis) -> np.ndarray:
    """Row ``(i, j)`` is the ket ``(e_ij x I)|Phi>``; these are orthonormal for a UEB."""
    d = basis.dim
    # (e x I)|Phi> has components e[a, b] / sqrt d at index a*d + b
    return basis.flat().reshape(d * d, d * d) / math.sqrt(d)


def teleport_all_outcomes(basis: ErrorBasis, state, tol: float = DEFAULT_TOL) -> list[TeleportTrace]:
    """Run every measurement branch on ``state (x) |Phi>`` and correct with ``e_ij``.

    Alice projects her two systems onto ``(e_ij x I)|Phi>``, which leaves Bob
    with ``e_ij^dagger |state> / d``; applying ``e_ij`` undoes it.
    """
    d = basis.dim
    psi = np.asarray(state, dtype=complex).ravel()
    if psi.shape != (d,):
        raise ValueError(f"state must have dimension {d}, got {psi.shape}")
    if abs(np.linalg.norm(psi) - 1) > tol:
        raise ValueError("state must be normalized")
    if not verify(basis, tol).is_ueb:
        raise NotAnErrorBasisError("teleportation needs a unitary error basis")

    joint = np.kron(psi, max_entangled(d)).reshape(d * d, d)
    # effect rows contract Alice's two systems, leaving Bob's index free
    residuals = measurement_kets(basis).conj() @ joint
    traces = []
    for n, (e, res) in enumerate(zip(basis.flat(), residuals)):
        prob = float(np.vdot(res, res).real)
        if prob <= tol * tol:
            fid = 1.0
        else:
            out = e @ (res / math.sqrt(prob))
            fid = float(abs(np.vdot(psi, out)) ** 2)
        traces.append(TeleportTrace(divmod(n, d), prob, fid))
    return traces


def random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


@dataclass
class OutcomeStats:
    outcome: tuple[int, int]
    min_fidelity: float
    min_probability: float
    max_probability: float


@dataclass
class TeleportSummary:
    states: int
    outcomes: list[OutcomeStats]
    min_fidelity: float
    max_probability_sum_error: float
    max_probability_error: float
    passed: bool


def sweep(basis: ErrorBasis, n_states: int, seed: int = 42, tol: float = DEFAULT_TOL) -> TeleportSummary:
    """Teleport ``n_states`` seeded random states and aggregate the worst cases."""
    if n_states < 1:
        raise ValueError("need at least one state")
    rng = np.random.default_rng(seed)
    d = basis.dim
    fids = np.ones((n_states, d * d))
    probs = np.zeros((n_states, d * d))
    for s in range(n_states):
        traces = teleport_all_outcomes(basis, random_state(d, rng), tol)
        fids[s] = [t.fidelity for t in traces]
        probs[s] = [t.outcome_probability for t in traces]
    outcomes = [
        OutcomeStats(divmod(n, d), float(fids[:, n].min()), float(probs[:, n].min()), float(probs[:, n].max()))
        for n in range(d * d)
    ]
    min_fid = float(fids.min())
    sum_err = float(np.max(np.abs(probs.sum(axis=1) - 1)))
    prob_err = float(np.max(np.abs(probs - 1 / d**2)))
    passed = 1 - min_fid <= tol and sum_err <= tol and prob_err <= tol
    return TeleportSummary(n_states, outcomes, min_fid, sum_err, prob_err, passed)
