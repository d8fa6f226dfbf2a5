import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uebkit.hadamard import HadamardFamily, butson_c6, fourier_matrix, normalized_rows
from uebkit.linalg import basis_vector, identity, is_unitary, kron
from uebkit.quasigroup import GroupSpec, Isotopy, cayley_table, is_associative, isotope, nonassociative_6, normalize_to_loop
from uebkit.structures import (
    StructureError,
    apply_left,
    check_bialgebra,
    check_classical_axioms,
    check_complementary,
    check_duality,
    check_ls_unitarity,
    check_unitality,
    classical_from_onb,
    frobenius_from_basis,
    frobenius_law,
    generalized_ls_mult,
    group_algebra,
    hadamard_phase,
    latin_axioms,
    ls_composites,
    ls_structure,
    spider,
    standard_structure,
    white_structure,
)

from corpus import latin_corpus


def random_onb(d, seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return np.linalg.qr(z)[0]


@pytest.mark.parametrize("d", [2, 3, 5])
def test_standard_structure_axioms(d):
    assert check_classical_axioms(standard_structure(d)).all_ok


@pytest.mark.parametrize("seed", range(3))
def test_random_onb_structure_axioms(seed):
    s = classical_from_onb(random_onb(4, seed))
    assert check_classical_axioms(s).all_ok
    for i in range(4):
        v = s.state(i)
        assert np.allclose(s.comult @ v, np.kron(v, v))


def test_non_orthonormal_basis_rejected():
    with pytest.raises(StructureError):
        classical_from_onb(np.array([[1, 1], [0, 1]]))


def test_unchecked_non_orthonormal_is_not_special():
    s = classical_from_onb(np.array([[1, 1], [0, 1]]) / np.sqrt(2), check=False)
    assert not check_classical_axioms(s).special


def test_copy_and_delete_on_basis_states():
    s = standard_structure(3)
    assert np.allclose(s.comult @ basis_vector(3, 2), kron(basis_vector(3, 2), basis_vector(3, 2)))
    assert np.allclose(s.counit, np.ones((1, 3)))
    assert np.allclose(s.cup, np.eye(3).reshape(9, 1))


def test_spider_special_cases():
    s = white_structure(fourier_matrix(GroupSpec.parse("Z3")))
    assert np.allclose(spider(s, 2, 1), s.mult)
    assert np.allclose(spider(s, 1, 2), s.comult)
    assert np.allclose(spider(s, 0, 1), s.unit)
    assert np.allclose(spider(s, 1, 0), s.counit)
    assert np.allclose(spider(s, 1, 1), identity(3))


def test_spider_fusion():
    s = standard_structure(2)
    # two 2->1 spiders glued along a wire give the 3->1 spider
    fused = spider(s, 2, 1) @ np.kron(spider(s, 2, 1), identity(2))
    assert np.allclose(fused, spider(s, 3, 1))


@pytest.mark.parametrize("h", [fourier_matrix(GroupSpec.parse("Z4")), fourier_matrix(GroupSpec.parse("Z2xZ2")), butson_c6()],
                         ids=["F4", "F2xF2", "C6"])
def test_hadamard_gives_complementary_pair(h):
    assert check_complementary(standard_structure(h.shape[0]), white_structure(h))


def test_biased_pair_is_not_complementary():
    black = standard_structure(3)
    other = classical_from_onb(random_onb(3, 0))
    assert not check_complementary(black, other)
    assert not check_complementary(black, black)


@pytest.mark.parametrize("spec", ["Z3", "Z4", "Z2xZ2", "Z6"])
def test_fourier_frobenius_algebra_is_group_algebra(spec):
    g = GroupSpec.parse(spec)
    F = fourier_matrix(g)
    d = g.order
    m, unit = group_algebra(cayley_table(g).table)
    algebra = frobenius_from_basis(F)
    assert np.allclose(algebra.mult, m)
    assert np.allclose(algebra.unit, unit)
    # the same map is sqrt(d) times the white merge, with unit |0>
    white = white_structure(F)
    assert np.allclose(np.sqrt(d) * white.mult, m)
    assert np.allclose(white.unit / np.sqrt(d), basis_vector(d, 0))


@pytest.mark.parametrize("name,L", latin_corpus())
def test_ls_composites_unitary_on_corpus(name, L):
    assert check_ls_unitarity(ls_structure(L).mult, standard_structure(L.order)) == (True, True)


def test_ls_composites_action():
    L = nonassociative_6()
    U1, U2 = ls_composites(ls_structure(L).mult, standard_structure(6))
    for a in range(6):
        for b in range(6):
            ket = kron(basis_vector(6, a), basis_vector(6, b))
            assert np.allclose(U1 @ ket, kron(basis_vector(6, L(a, b)), basis_vector(6, b)))
            assert np.allclose(U2 @ ket, kron(basis_vector(6, a), basis_vector(6, L(a, b))))


NON_LATIN = [
    [[0, 0], [0, 0]],
    [[0, 0], [0, 1]],
    [[0, 1, 2], [0, 2, 1], [1, 1, 0]],
    [[1, 1, 1], [1, 1, 1], [1, 1, 1]],
]


@pytest.mark.parametrize("table", NON_LATIN)
def test_ls_composites_fail_for_non_latin(table):
    m, _ = group_algebra(table)
    assert check_ls_unitarity(m, standard_structure(len(table))) == (False, False)


def test_each_composite_tracks_one_direction():
    # repeated columns break U1 only; repeated rows break U2 only
    black = standard_structure(2)
    assert check_ls_unitarity(group_algebra([[0, 1], [0, 1]])[0], black) == (False, True)
    assert check_ls_unitarity(group_algebra([[0, 0], [1, 1]])[0], black) == (True, False)


def test_ls_structure_needs_loop():
    L = isotope(cayley_table(GroupSpec.parse("Z3")), Isotopy((1, 2, 0), (0, 1, 2), (0, 1, 2)))
    with pytest.raises(StructureError):
        ls_structure(L)


@pytest.mark.parametrize("name,L", latin_corpus())
def test_latin_axioms_on_corpus(name, L):
    res = latin_axioms(ls_structure(L), standard_structure(L.order))
    for key in ("dagger", "unitality", "bialgebra", "duality", "ls1", "ls2"):
        assert res[key], key
    assert res["frobenius"] == is_associative(L)


def perms(n):
    return st.permutations(list(range(n))).map(tuple)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["Z6", "nonassoc6", "Z2xZ3"]), perms(6), perms(6), perms(6))
def test_frobenius_iff_associative(base, r, c, s):
    L0 = nonassociative_6() if base == "nonassoc6" else cayley_table(GroupSpec.parse(base))
    L, _ = normalize_to_loop(isotope(L0, Isotopy(r, c, s)))
    st_ = ls_structure(L)
    assert frobenius_law(st_.mult, st_.comult) == is_associative(L)


def test_phase_scaled_mult_breaks_bialgebra_not_unitarity():
    black = standard_structure(3)
    m = np.exp(1j * np.pi / 3) * ls_structure(cayley_table(GroupSpec.parse("Z3"))).mult
    assert not check_bialgebra(m, black)
    assert check_ls_unitarity(m, black) == (True, True)


def test_unitality_fails_for_shifted_unit():
    s = ls_structure(cayley_table(GroupSpec.parse("Z3")))
    broken = type(s)(s.mult, s.comult, basis_vector(3, 1), basis_vector(3, 1).T)
    assert not check_unitality(broken)


def test_duality_needs_real_coefficients():
    black = standard_structure(3)
    m = ls_structure(cayley_table(GroupSpec.parse("Z3"))).mult
    assert check_duality(m, black)
    assert not check_duality(1j * m, black)


def test_hadamard_phase_is_conjugate_entry():
    fam = HadamardFamily.replicate(butson_c6())
    for m in range(6):
        for b in range(6):
            assert np.isclose(hadamard_phase(fam, 2, m, b), np.conj(butson_c6()[m, b]))


def test_generalized_mult_table():
    L = nonassociative_6()
    C = butson_c6()
    gm = generalized_ls_mult(L, HadamardFamily.replicate(C), 0)
    table = gm.table()
    for a in range(6):
        for b in range(6):
            sym, coeff = table[a][b]
            assert sym == L(a, b)
            assert abs(coeff - np.conj(C[a, b])) < 1e-12


def test_generalized_mult_is_quasi_complementary():
    gm = generalized_ls_mult(nonassociative_6(), HadamardFamily.replicate(butson_c6()), 3)
    black = standard_structure(6)
    assert check_ls_unitarity(gm.mult, black) == (True, True)
    assert not check_bialgebra(gm.mult, black)


def test_white_states_are_rows():
    h = butson_c6()
    w = white_structure(h)
    assert np.allclose(np.sqrt(6) * w.state(1).ravel(), h[1])
    assert np.allclose(w.basis, normalized_rows(h))


def test_apply_left_plugs_state():
    s = standard_structure(3)
    assert np.allclose(apply_left(s.mult, basis_vector(3, 1)), np.diag([0, 1, 0]))
    assert is_unitary(np.sqrt(3) * apply_left(white_structure(fourier_matrix(GroupSpec.parse("Z3"))).mult, basis_vector(3, 1)))
