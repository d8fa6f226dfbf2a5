import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uebkit.hadamard import HadamardFamily, butson_c6
from uebkit.quasigroup import GroupSpec, nonassociative_6
from uebkit.teleport import measurement_kets, random_state, sweep, teleport_all_outcomes
from uebkit.ueb import ErrorBasis, NotAnErrorBasisError, generalized_shift_multiply, mub_basis, pauli_basis


def brute_force_qubit(basis, psi):
    # density-matrix teleportation: project Alice's pair, trace it out, correct
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = np.outer(np.kron(psi, phi), np.kron(psi, phi).conj())
    out = []
    for e in basis.flat():
        beta = np.kron(e, np.eye(2)) @ phi
        proj = np.kron(np.outer(beta, beta.conj()), np.eye(2))
        post = proj @ rho @ proj
        prob = np.trace(post).real
        bob = np.einsum("aiaj->ij", post.reshape(4, 2, 4, 2)) / prob
        bob = e @ bob @ e.conj().T
        out.append((prob, np.vdot(psi, bob @ psi).real))
    return out


def test_pauli_zero_state_matches_brute_force():
    psi = np.array([1, 0], dtype=complex)
    traces = teleport_all_outcomes(pauli_basis(0), psi)
    for t, (p, f) in zip(traces, brute_force_qubit(pauli_basis(0), psi)):
        assert t.outcome_probability == pytest.approx(0.25) == pytest.approx(p)
        assert t.fidelity == pytest.approx(1) == pytest.approx(f)


def test_outcome_labels():
    traces = teleport_all_outcomes(mub_basis(GroupSpec.parse("Z3")), np.array([1, 0, 0]))
    assert [t.outcome for t in traces] == [(i, j) for i in range(3) for j in range(3)]


@pytest.mark.parametrize("spec", ["Z3", "Z2xZ2", "Z5"])
def test_measurement_is_orthonormal(spec):
    kets = measurement_kets(mub_basis(GroupSpec.parse(spec)))
    assert np.allclose(kets.conj() @ kets.T, np.eye(kets.shape[0]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_states_teleport_perfectly(seed):
    basis = generalized_shift_multiply(nonassociative_6(), HadamardFamily.replicate(butson_c6()), 2)
    traces = teleport_all_outcomes(basis, random_state(6, np.random.default_rng(seed)))
    assert sum(t.outcome_probability for t in traces) == pytest.approx(1, abs=1e-9)
    assert all(abs(t.fidelity - 1) < 1e-9 for t in traces)
    assert all(abs(t.outcome_probability - 1 / 36) < 1e-9 for t in traces)


def test_broken_basis_rejected():
    flat = np.array(pauli_basis(0).flat())
    flat[2] = np.diag([1, 2])
    with pytest.raises(NotAnErrorBasisError):
        teleport_all_outcomes(ErrorBasis.from_list(flat), np.array([1, 0]))


def test_state_must_be_normalized():
    with pytest.raises(ValueError):
        teleport_all_outcomes(pauli_basis(0), np.array([1, 1]))


def test_sweep_is_seeded():
    a = sweep(mub_basis(GroupSpec.parse("Z4")), 5, seed=1)
    b = sweep(mub_basis(GroupSpec.parse("Z4")), 5, seed=1)
    assert a == b and a.passed
