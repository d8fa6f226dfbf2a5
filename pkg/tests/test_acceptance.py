"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import math
import time

import numpy as np

from uebkit.hadamard import C6_P, HadamardFamily, butson_c6, fourier_matrix, is_hadamard
from uebkit.quasigroup import GroupSpec, cayley_table, nonassociative_6
from uebkit.repro import repro_d6
from uebkit.structures import check_bialgebra, check_ls_unitarity, frobenius_law, group_algebra, ls_structure, standard_structure
from uebkit.teleport import sweep
from uebkit.ueb import (
    CANONICAL_PAULI,
    apply_transform,
    d_j_matrix,
    generalized_shift_multiply,
    minimal_shift_multiply,
    mub_basis,
    normalize_d2,
    pauli_basis,
    random_transform,
    shift_multiply,
    minimal_to_mub,
    verify,
)

from corpus import GROUPS, MUB_GROUPS, latin_corpus, sm_cases

TOL = 1e-9
NON_LATIN = [
    [[0, 0], [0, 0]],
    [[0, 0], [0, 1]],
    [[0, 1, 2], [0, 2, 1], [1, 1, 0]],
]


def best_time(fn, repeats=20):
    best = math.inf
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_criterion_01_pauli(report_criterion):
    basis = pauli_basis(0)
    rep = verify(basis)
    defect = max(rep.max_unitarity_defect, rep.max_orthogonality_defect)
    runtime = best_time(lambda: verify(basis))
    ok = rep.is_ueb and defect < 1e-12 and runtime < 1e-3
    report_criterion(1, ok, f"pauli_basis(0) is_ueb={rep.is_ueb} defect={defect:.3g} runtime={runtime * 1e3:.3f} ms")
    assert ok


def test_criterion_02_normalize_d2(report_criterion):
    rng = np.random.default_rng(2024)
    worst = 0.0
    t = time.perf_counter()
    for _ in range(100):
        b = apply_transform(pauli_basis(rng.uniform(0, 2 * math.pi)), random_transform(2, rng))
        out, _ = normalize_d2(b)
        worst = max(worst, float(np.max(np.abs(out.elements - CANONICAL_PAULI.elements))))
    runtime = time.perf_counter() - t
    ok = worst < 1e-9 and runtime < 1.0
    report_criterion(2, ok, f"100 scrambled Pauli bases, max deviation={worst:.3g} runtime={runtime:.3f} s")
    assert ok


def test_criterion_03_shift_multiply_corpus(report_criterion):
    cases = sm_cases()
    squares = {name for name, _ in latin_corpus()}
    t = time.perf_counter()
    worst, failures = 0.0, []
    for name, L, fam in cases:
        rep = verify(shift_multiply(L, fam), TOL)
        worst = max(worst, rep.max_orthogonality_defect)
        if not rep.is_ueb:
            failures.append(name)
    runtime = time.perf_counter() - t
    ok = not failures and worst < 1e-9 and runtime < 5 and len(squares) >= 10
    report_criterion(3, ok, f"{len(squares)} squares, {len(cases)} square/family pairs, max gram defect={worst:.3g} "
                            f"runtime={runtime:.3f} s failures={failures}")
    assert ok


def test_criterion_04_minimal_to_mub(report_criterion):
    devs = {g: float(np.max(np.abs(e.elements - m.elements)))
            for g in MUB_GROUPS for e, m in [minimal_to_mub(GroupSpec.parse(g))]}
    worst = max(devs.values())
    ok = worst < 1e-9
    report_criterion(4, ok, f"groups {','.join(MUB_GROUPS)} max entry deviation={worst:.3g}")
    assert ok


def test_criterion_05_mub_basis(report_criterion):
    worst, ok = 0.0, True
    for g in MUB_GROUPS:
        spec = GroupSpec.parse(g)
        rep = verify(mub_basis(spec), TOL)
        dev = float(np.max(np.abs(rep.gram - spec.order * np.eye(spec.order**2))))
        worst = max(worst, dev)
        ok = ok and rep.is_ueb
    ok = ok and worst < 1e-9
    report_criterion(5, ok, f"groups {','.join(MUB_GROUPS)} max |gram - d I|={worst:.3g}")
    assert ok


def test_criterion_06_ls_composites(report_criterion):
    corpus = latin_corpus()
    positive = all(check_ls_unitarity(ls_structure(L).mult, standard_structure(L.order), TOL) == (True, True)
                   for _, L in corpus)
    negative = [check_ls_unitarity(group_algebra(t)[0], standard_structure(len(t)), TOL) for t in NON_LATIN]
    neg_ok = all(r == (False, False) for r in negative)
    ok = positive and neg_ok and len(NON_LATIN) >= 3
    report_criterion(6, ok, f"LS1/LS2 unitary on {len(corpus)} squares={positive}; "
                            f"both fail on {len(NON_LATIN)} non-latin arrays={neg_ok}")
    assert ok


def test_criterion_07_frobenius(report_criterion):
    z6 = ls_structure(cayley_table(GroupSpec.parse("Z6")))
    na = ls_structure(nonassociative_6())
    holds = frobenius_law(z6.mult, z6.comult, TOL)
    fails = not frobenius_law(na.mult, na.comult, TOL)
    ok = holds and fails
    report_criterion(7, ok, f"Frobenius law holds for Z6={holds}, fails for the non-associative loop={fails}")
    assert ok


def test_criterion_08_generalized_d6(report_criterion):
    fam = HadamardFamily.replicate(butson_c6())
    k = 0
    t = time.perf_counter()
    off_mass, unit_defect = 0.0, 0.0
    for j in range(6):
        D = d_j_matrix(j, fam, k)
        off_mass = max(off_mass, float(np.max(np.abs(D - np.diag(np.diag(D))))))
        unit_defect = max(unit_defect, float(np.max(np.abs(D @ D.conj().T - np.eye(6)))))
    is_ueb = verify(generalized_shift_multiply(nonassociative_6(), fam, k), TOL).is_ueb
    rep = repro_d6(k, TOL)
    runtime = time.perf_counter() - t
    checks = {
        "D_j diagonal": off_mass < 1e-9,
        "D_j unitary": unit_defect < 1e-9,
        "basis is UEB": is_ueb,
        "symbols match": rep.symbols_match,
        "coefficients match after one scale factor": rep.coefficients_match,
        "runtime < 10 s": runtime < 10,
    }
    ok = all(checks.values())
    failed = [name for name, v in checks.items() if not v]
    flagged = ",".join(r + c for r, c in rep.flagged)
    report_criterion(8, ok, f"scale={rep.scale.real:.12g} runtime={runtime:.3f} s failed={failed} flagged entries=[{flagged}]")
    for name, v in checks.items():
        assert v, name


def test_criterion_09_c6(report_criterion):
    hadamard_ok = is_hadamard(butson_c6())
    modulus_err = abs(abs(C6_P) - 1)
    ok = hadamard_ok and modulus_err < 1e-12
    report_criterion(9, ok, f"is_hadamard(C6)={hadamard_ok} ||p|-1|={modulus_err:.3g}")
    assert ok


def constructed_bases():
    yield "pauli", pauli_basis(0)
    for g in GROUPS:
        yield f"minimal {g}", minimal_shift_multiply(GroupSpec.parse(g))
    for g in MUB_GROUPS:
        yield f"mub {g}", mub_basis(GroupSpec.parse(g))
    for name, L, fam in sm_cases():
        yield f"sm {name}", shift_multiply(L, fam)
    fam = HadamardFamily.replicate(butson_c6())
    for k in range(6):
        yield f"gsm k={k}", generalized_shift_multiply(nonassociative_6(), fam, k)
    z2 = HadamardFamily.replicate(fourier_matrix(GroupSpec.parse("Z2")))
    yield "gsm Z2", generalized_shift_multiply(cayley_table(GroupSpec.parse("Z2")), z2, 0)


def test_criterion_10_teleportation(report_criterion):
    min_fid, sum_err, failures, count = 1.0, 0.0, [], 0
    for name, basis in constructed_bases():
        s = sweep(basis, 100, seed=42, tol=TOL)
        count += 1
        min_fid = min(min_fid, s.min_fidelity)
        sum_err = max(sum_err, s.max_probability_sum_error)
        if not s.passed:
            failures.append(name)
    ok = not failures and 1 - min_fid < 1e-9 and sum_err < 1e-9
    report_criterion(10, ok, f"{count} bases x 100 states, min fidelity={min_fid:.12g} "
                             f"max |sum p - 1|={sum_err:.3g} failures={failures}")
    assert ok


def test_criterion_11_bialgebra_negative(report_criterion):
    results = []
    for L in (cayley_table(GroupSpec.parse("Z3")), nonassociative_6()):
        black = standard_structure(L.order)
        m = np.exp(1j * math.pi / 3) * ls_structure(L).mult
        results.append((check_bialgebra(m, black, TOL), check_ls_unitarity(m, black, TOL)))
    ok = all(not bialg and ls == (True, True) for bialg, ls in results)
    report_criterion(11, ok, f"e^(i pi/3)-scaled mult: (bialgebra, (LS1, LS2)) = {results}")
    assert ok
