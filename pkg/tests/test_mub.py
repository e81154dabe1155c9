import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from mubqpd.errors import IndexOutOfRange, UnsupportedDimension
from mubqpd.fixtures import BETA, MUB4, U_SPIN1
from mubqpd.mub import (
    SUPPORTED_DIMS,
    MubFamily,
    basis_unitary,
    build_mub,
    overlaps,
    ray_match,
    same_rays,
    twist_map_check,
    verify_unbiased,
)
from mubqpd.numerics import joint_eigenbasis


def brute_unbiased(family):
    n = family.dim
    worst = 0.0
    for a, b in itertools.combinations(family.bases, 2):
        for u in a.T:
            for v in b.T:
                worst = max(worst, abs(abs(np.vdot(u, v)) ** 2 - 1 / n))
    return worst


@pytest.mark.parametrize("n", SUPPORTED_DIMS)
def test_family_is_complete_and_unbiased(n):
    f = build_mub(n)
    assert len(f) == n + 1
    for b in f.bases:
        assert_allclose(b.conj().T @ b, np.eye(n), atol=1e-12)
    assert verify_unbiased(f) < 1e-12
    assert brute_unbiased(f) < 1e-12


def test_qubit_overlaps():
    f = build_mub(2)
    assert_allclose(overlaps(f.bases[1], f.bases[2]), 0.5, atol=1e-15)


def test_qutrit_fourier_columns():
    w = np.exp(2j * np.pi / 3)
    b = build_mub(3).bases[1]
    refs = [np.array([1, 1, 1]), np.array([1, w, w * w]), np.array([1, w * w, w])]
    for ref in refs:
        ref = ref / np.sqrt(3)
        assert max(abs(np.vdot(ref, col)) for col in b.T) == pytest.approx(1.0, abs=1e-14)


def test_ququart_matches_fixture_eigenbases():
    # derived independently: joint eigenbases of the stored commuting triples
    f = build_mub(4)
    assert_allclose(overlaps(f.bases[1], f.bases[3]), 0.25, atol=1e-14)
    for i in range(5):
        v = joint_eigenbasis(BETA[3 * i:3 * i + 3])
        assert same_rays(v, f.bases[i])
    for table, b in zip(MUB4, f.bases[1:]):
        assert same_rays(table, b)


def test_basis_unitary_identity_and_spin1_unitaries():
    f = build_mub(3)
    assert_allclose(basis_unitary(f, 1), np.eye(3), atol=0)
    for i, u in enumerate(U_SPIN1, start=2):
        assert_allclose(basis_unitary(f, i), u, atol=1e-14)
    with pytest.raises(IndexOutOfRange):
        basis_unitary(f, 5)


def test_duplicate_basis_is_biased():
    for n in (2, 3, 5):
        f = build_mub(n)
        dup = MubFamily(n, (f.bases[0], f.bases[0], *f.bases[2:]))
        assert verify_unbiased(dup) == pytest.approx(1 - 1 / n, abs=1e-14)


def test_unsupported_dimension():
    for n in (1, 6, 8, 9, 17):
        with pytest.raises(UnsupportedDimension):
            build_mub(n)


def test_twist_maps():
    f = build_mub(3)
    ok, res = twist_map_check(f)
    assert ok and res < 1e-12
    assert twist_map_check(f, 2 * np.pi / 3)[0]
    assert twist_map_check(f, 4 * np.pi / 3)[0]
    ok, res = twist_map_check(f, np.pi)
    assert not ok and res > 0.1
    with pytest.raises(UnsupportedDimension):
        twist_map_check(build_mub(5))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_rays_invariant_under_phase_and_permutation(n, data):
    b = build_mub(n).bases[-1]
    phases = np.exp(1j * np.array(data.draw(st.lists(st.floats(-np.pi, np.pi), min_size=n, max_size=n))))
    perm = data.draw(st.permutations(range(n)))
    moved = (b * phases)[:, perm]
    assert same_rays(b, moved)
    got, deficit = ray_match(moved, b)
    assert got == list(perm) and deficit < 1e-12


def test_different_bases_are_not_same_rays():
    f = build_mub(3)
    assert not same_rays(f.bases[0], f.bases[1])
    assert not same_rays(f.bases[0], np.eye(2))
