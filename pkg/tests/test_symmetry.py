import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from su3forge.dod import DodParams, compose_dod, match_table1, table1_params
from su3forge.errors import DegenerateSpectrum, NoRelationFound
from su3forge.mat3 import frobenius_distance, haar_random_unitary, is_unitary
from su3forge.symmetry import (
    WH_THETA_LABELS,
    commutant,
    conjugate_decomposition,
    relate_solutions,
    wh_family_theta,
    wh_symmetry,
)
from tests.strategies import seeds

thetas = st.tuples(*[st.floats(-np.pi, np.pi, allow_nan=False)] * 3)


@given(thetas)
def test_commutant_commutes_with_wh(th):
    from su3forge.gates import walsh_hadamard, wh_hamiltonian

    w, h = walsh_hadamard(), wh_hamiltonian()
    t = commutant(w).sample(th)
    assert is_unitary(t, 1e-12)
    assert frobenius_distance(t @ w, w @ t) <= 1e-10
    assert frobenius_distance(t @ h, h @ t) <= 1e-10


@given(seeds, thetas)
def test_commutant_of_random_unitary(seed, th):
    u = haar_random_unitary(seed)
    t = commutant(u).sample(th)
    assert frobenius_distance(t @ u, u @ t) <= 1e-10


def test_commutant_at_zero_is_identity(W):
    assert np.allclose(commutant(W).sample((0, 0, 0)), np.eye(3), atol=1e-14)


def test_commutant_degenerate(S):
    with pytest.raises(DegenerateSpectrum):
        commutant(S)


def test_swap_is_a_commutant_element(W, S):
    # eigenvalue order of W is (1, i, -1); S flips the sign of the i-eigenvector
    assert frobenius_distance(commutant(W).sample((0, np.pi, 0)), S) <= 1e-10


def test_closed_form_family_at_pi_0_0_is_swap(S):
    assert frobenius_distance(wh_symmetry((np.pi, 0, 0)), S) <= 1e-10
    assert np.allclose(wh_family_theta((np.pi, 0, 0)), (0, -np.pi, 0))


@given(thetas)
def test_closed_form_matches_eigenframe_family(th):
    from su3forge.gates import walsh_hadamard

    fam = commutant(walsh_hadamard())
    assert frobenius_distance(wh_symmetry(th), fam.sample(wh_family_theta(th))) <= 1e-10


def test_printed_closed_form_does_not_commute(W):
    t0 = wh_symmetry((0, 0, 0), as_printed=True)
    # (0,0) entry is 1/sqrt(3) instead of 1
    assert frobenius_distance(t0, np.eye(3)) == pytest.approx(1 - 1 / np.sqrt(3), abs=1e-12)
    t = wh_symmetry((0.4, 1.0, -2.0), as_printed=True)
    assert frobenius_distance(t @ W, W @ t) > 0.1


def test_theta_labels_reject_unknown_eigenvalue(W):
    with pytest.raises(ValueError):
        commutant(W).theta_for_labels((1j, 1j, 1), (0, 0, 0))
    assert len(WH_THETA_LABELS) == 3


def test_conjugate_set3_by_swap_gives_set4(S):
    sets = table1_params()
    r = conjugate_decomposition(S, sets[2])
    assert r.still_dod_form
    assert match_table1(r.params) == 4


def test_conjugate_by_identity_is_noop():
    p = table1_params()[0]
    r = conjugate_decomposition(np.eye(3), p)
    assert r.still_dod_form and r.params == p


def test_generic_commutant_element_breaks_dod_form(W):
    p = table1_params()[0]
    t = commutant(W).sample((0.3, 0.1, 0.7))
    r = conjugate_decomposition(t, p)
    assert not r.still_dod_form and r.params is None
    v = compose_dod(p)
    assert frobenius_distance(r.factors[0] @ r.factors[1], t @ v @ t.conj().T) <= 1e-12
    assert frobenius_distance(r.factors[0] @ r.factors[1], W) <= 5e-3


@given(seeds, thetas)
def test_conjugated_factors_preserve_product(seed, th):
    u = haar_random_unitary(seed)
    t = commutant(u).sample(th)
    p = DodParams((0.1, 0.2, 0.3), 0.5j, 0.1, -0.2)
    r = conjugate_decomposition(t, p)
    v = compose_dod(p)
    assert frobenius_distance(r.factors[0] @ r.factors[1], t @ v @ t.conj().T) <= 1e-12


def test_relate_sets_5_and_2(W):
    sets = table1_params()
    rel = relate_solutions(sets[4], sets[1], W)
    assert rel.scale == -2
    assert rel.conjugator == (0, 1, 2)
    a, b, c = sorted(rel.fixed_point_eigenvalues)
    assert a == pytest.approx(-4 * np.pi / 9, abs=1e-3)
    assert b == pytest.approx(2 * np.pi / 9, abs=1e-3) and c == pytest.approx(2 * np.pi / 9, abs=1e-3)
    # measured eigenvalues of set 5's generator agree with the fixed points
    assert np.allclose(sorted(rel.eigenvalues_a), [a, b, c], atol=1e-3)
    assert np.allclose(rel.diagonal_shift, [-4 * np.pi / 3, 2 * np.pi / 3, 2 * np.pi / 3])


def test_relate_sets_2_and_5_inverse_scale(W):
    sets = table1_params()
    rel = relate_solutions(sets[1], sets[4], W)
    assert rel.scale == -0.5


def test_relate_sets_3_and_4_is_swap(W):
    sets = table1_params()
    rel = relate_solutions(sets[2], sets[3], W)
    assert rel.conjugator == (0, 2, 1)
    assert rel.scale == 1 and rel.shifts == (0.0, 0.0, 0.0)
    assert rel.residual <= 1e-3


def test_relate_set_to_itself(W):
    p = table1_params()[0]
    rel = relate_solutions(p, p, W)
    assert rel.conjugator == (0, 1, 2) and rel.scale == 1 and rel.residual == 0


def test_unrelated_sets(W):
    sets = table1_params()
    with pytest.raises(NoRelationFound):
        relate_solutions(sets[0], sets[1], W)


def test_relate_requires_valid_decompositions(W):
    with pytest.raises(ValueError):
        relate_solutions(DodParams.zero(), table1_params()[0], W)
