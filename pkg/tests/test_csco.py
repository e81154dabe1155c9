from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from sympy import Rational
from sympy.physics.quantum.cg import CG

from mubqpd.csco import (
    CscoBasis,
    alphabet_defects,
    build_csco,
    clebsch_gordan,
    clebsch_gordan_q0,
    commutator_defect,
    make_basis,
    orthonormality_defect,
    outcome_alphabet,
    paper_fixture,
    span_residual,
    tensor_diag,
    trace_defect,
    validate_csco,
)
from mubqpd.errors import DimMismatch, InvalidQuantumNumbers, UnsupportedDimension
from mubqpd.fixtures import ALPHA, BETA, PAULI, U_SPIN1
from mubqpd.mub import build_mub

R3, R5 = np.sqrt(3), np.sqrt(5)


def half_integers(hi):
    return st.integers(0, 2 * hi).map(lambda t: Fraction(t, 2))


def sympy_cg(j1, m1, j2, m2, j, m):
    r = lambda x: Rational(Fraction(x).numerator, Fraction(x).denominator)
    return float(CG(r(j1), r(m1), r(j2), r(m2), r(j), r(m)).doit())


@pytest.mark.parametrize("args", [
    (1, 1, 1, 0, 1, 1), (1, 0, 1, 0, 1, 0), (Fraction(1, 2), Fraction(1, 2), 1, 0, Fraction(1, 2), Fraction(1, 2)),
    (Fraction(3, 2), Fraction(3, 2), 2, 0, Fraction(3, 2), Fraction(3, 2)),
    (Fraction(3, 2), Fraction(-1, 2), 3, 0, Fraction(3, 2), Fraction(-1, 2)),
    (2, 1, 1, -1, 1, 0), (Fraction(5, 2), Fraction(3, 2), 2, 1, Fraction(7, 2), Fraction(5, 2)),
])
def test_cg_against_sympy(args):
    assert clebsch_gordan(*args) == pytest.approx(sympy_cg(*args), abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(half_integers(3), half_integers(3), st.data())
def test_cg_random_against_sympy(j1, j2, data):
    m1 = j1 - data.draw(st.integers(0, int(2 * j1)))
    m2 = j2 - data.draw(st.integers(0, int(2 * j2)))
    j = data.draw(st.sampled_from([abs(j1 - j2) + k for k in range(int(j1 + j2 - abs(j1 - j2)) + 1)]))
    m = m1 + m2
    if abs(m) > j:
        with pytest.raises(InvalidQuantumNumbers):
            clebsch_gordan(j1, m1, j2, m2, j, m)
        return
    assert clebsch_gordan(j1, m1, j2, m2, j, m) == pytest.approx(sympy_cg(j1, m1, j2, m2, j, m), abs=1e-12)


def test_cg_spin1_values():
    assert clebsch_gordan_q0(1, 1, 1) == pytest.approx(1 / np.sqrt(2), abs=1e-15)
    assert clebsch_gordan_q0(1, 1, 0) == 0.0
    assert R5 * clebsch_gordan_q0(Fraction(3, 2), 2, Fraction(3, 2)) == pytest.approx(1.0, abs=1e-15)


def test_cg_invalid_numbers():
    with pytest.raises(InvalidQuantumNumbers):
        clebsch_gordan(Fraction(1, 3), 0, 1, 0, 1, 0)
    with pytest.raises(InvalidQuantumNumbers):
        clebsch_gordan_q0(1, 3, 0)
    with pytest.raises(InvalidQuantumNumbers):
        clebsch_gordan(1, 2, 1, 0, 1, 2)


def test_tensor_diag_matches_fixtures():
    assert_allclose(tensor_diag(1, 1).matrix, ALPHA[0], atol=1e-15)
    assert_allclose(tensor_diag(1, 2).matrix, ALPHA[1], atol=1e-15)
    assert_allclose(tensor_diag(Fraction(3, 2), 1).matrix, np.diag([3, 1, -1, -3]) / R5, atol=1e-15)
    assert_allclose(tensor_diag(Fraction(3, 2), 1).matrix, BETA[0], atol=1e-15)
    assert_allclose(tensor_diag(Fraction(3, 2), 3).matrix, np.diag([1, -3, 3, -1]) / R5, atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 11, 13])
def test_generated_basis_is_orthonormal_and_commuting(n):
    b = build_csco(n)
    assert len(b.operators) == n * n - 1
    assert orthonormality_defect(b) < 1e-10
    assert trace_defect(b) < 1e-10
    assert commutator_defect(b) < 1e-10
    assert all(np.allclose(o, o.conj().T, atol=1e-12) for o in b.operators)
    d = alphabet_defects(b.alphabet)
    assert max(d.values()) < 1e-10


def test_qubit_generated_is_pauli():
    b = build_csco(2)
    got = [o for o in b.operators]
    for p in PAULI:
        assert min(min(np.abs(p - g).max(), np.abs(p + g).max()) for g in got) < 1e-14


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7])
def test_generated_basis_validates(n):
    rep = validate_csco(build_csco(n), build_mub(n))
    assert rep.passed, rep.to_dict()
    assert rep.set_to_basis == list(range(1, n + 2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fixture_validates_and_spans_generated(n):
    fix = paper_fixture(n)
    assert validate_csco(fix, build_mub(n)).passed
    assert span_residual(fix, build_csco(n)) < 1e-9


def test_qubit_fixture_ordering():
    rep = validate_csco(paper_fixture(2), build_mub(2))
    # Pauli order (x, y, z); z is the computational basis
    assert rep.set_to_basis == [2, 3, 1]


def test_qutrit_fixture_conjugation():
    u2 = U_SPIN1[0]
    assert_allclose(u2.conj().T @ ALPHA[0] @ u2, ALPHA[2], atol=1e-12)
    assert_allclose(u2.conj().T @ ALPHA[1] @ u2, ALPHA[3], atol=1e-12)
    assert_allclose(build_csco(3).operators[2], ALPHA[2], atol=1e-12)


def test_qutrit_generated_equals_fixture():
    for g, a in zip(build_csco(3).operators, ALPHA):
        assert_allclose(g, a, atol=1e-12)


def test_ququart_fixture_partition():
    fix = paper_fixture(4)
    assert len(fix.sets) == 5 and all(len(s) == 3 for s in fix.sets)
    assert commutator_defect(fix) < 1e-12


def test_alphabets():
    assert_allclose(outcome_alphabet(build_csco(2)), [[1], [-1]], atol=1e-15)
    z3 = [[np.sqrt(1.5), 1 / np.sqrt(2)], [0, -np.sqrt(2)], [-np.sqrt(1.5), 1 / np.sqrt(2)]]
    assert_allclose(outcome_alphabet(build_csco(3)), z3, atol=1e-15)
    z4 = np.array([[3 / R5, 1, 1 / R5], [1 / R5, -1, -3 / R5], [-1 / R5, -1, 3 / R5], [-3 / R5, 1, -1 / R5]])
    assert_allclose(outcome_alphabet(build_csco(4)), z4, atol=1e-15)
    assert_allclose(outcome_alphabet(paper_fixture(4)), z4, atol=1e-15)


def test_swapped_operator_fails_validation():
    sets = [list(s) for s in paper_fixture(3).sets]
    sets[1][0] = ALPHA[4]  # alpha_3 -> alpha_5
    bad = make_basis(3, sets)
    rep = validate_csco(bad, build_mub(3))
    assert not rep.passed
    assert rep.commutator > 0.1


def test_basis_round_trip():
    b = build_csco(3)
    back = CscoBasis.from_dict(b.to_dict())
    for x, y in zip(b.operators, back.operators):
        assert_allclose(x, y, atol=0)
    assert_allclose(back.alphabet, b.alphabet, atol=0)


def test_make_basis_shape_errors():
    with pytest.raises(DimMismatch):
        make_basis(3, [[ALPHA[0]]] * 4)
    with pytest.raises(UnsupportedDimension):
        paper_fixture(5)
    with pytest.raises(DimMismatch):
        validate_csco(build_csco(3), build_mub(2))


def test_basis_immutable():
    b = build_csco(3)
    with pytest.raises(ValueError):
        b.operators[0][0, 0] = 1.0


def test_ququart_generated_equals_fixture():
    for g, b in zip(build_csco(4).operators, BETA):
        assert_allclose(g, b, atol=1e-14)
