import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from su3forge.dod import (
    DodParams,
    SolveConfig,
    branch_vectors,
    compose_dod,
    match_table1,
    offdiag_cost,
    params_distance,
    phase_residual,
    phase_sum_check,
    solve_dod,
    table1_params,
)
from su3forge.errors import NotUnitary
from su3forge.mat3 import expm_hermitian_generator, frobenius_distance, haar_random_unitary
from tests.strategies import seeds

FAST = SolveConfig(starts=4, branch_range=0)


@pytest.fixture(scope="module")
def wh_solutions():
    from su3forge.gates import walsh_hadamard

    return solve_dod(walsh_hadamard(), SolveConfig(starts=8, branch_range=1))


def test_compose_zero_is_identity():
    assert np.allclose(compose_dod(DodParams.zero()), np.eye(3))


def test_compose_matches_scipy_expm():
    import scipy.linalg as sla

    p = DodParams((0.3, -1.0, 2.0), 0.2 + 0.1j, -0.4j, 0.7)
    want = sla.expm(-1j * p.diagonal_generator()) @ sla.expm(-1j * p.off_diagonal_generator())
    assert frobenius_distance(compose_dod(p), want) <= 1e-12


def test_generators_shape():
    p = DodParams((1, 2, 3), 1 + 1j, 2j, 3)
    g = p.off_diagonal_generator()
    assert np.allclose(np.diagonal(g), 0)
    assert np.allclose(g, g.conj().T)
    assert g[1, 0] == 1 - 1j


def test_dict_round_trip():
    p = DodParams((1.5, 2.5, 0.1), 1 + 1j, -2j, 0.3)
    assert DodParams.from_dict(p.to_dict()) == p


def test_params_distance_on_circle():
    a = DodParams((0.0, 0.0, 0.0))
    b = DodParams((2 * np.pi, -2 * np.pi, 4 * np.pi))
    assert params_distance(a, b) == pytest.approx(0, abs=1e-12)


def test_branch_vectors():
    ks = branch_vectors(1)
    assert len(ks) == 19 and (0, 0, 0) in ks
    assert all(abs(sum(k)) <= 1 for k in ks)
    assert branch_vectors(0) == [(0, 0, 0)]


@pytest.mark.parametrize("kwargs", [dict(starts=1), dict(tol=0), dict(branch_range=-1)])
def test_solve_config_validation(kwargs):
    with pytest.raises(ValueError):
        SolveConfig(**kwargs)


def test_table1_reconstructs_wh(W):
    for p in table1_params():
        assert frobenius_distance(compose_dod(p), W) <= 5e-3


def test_phase_residual_vanishes_at_printed_sets(W):
    # 4-decimal inputs leave a residual of order 1e-5 on the best branch
    for p in table1_params():
        best = min(np.max(np.abs(phase_residual(p.phi, W, k))) for k in branch_vectors(1))
        assert best <= 1e-4
    # exact solutions make it vanish to machine precision on some branch
    exact = solve_dod(W, FAST)
    for p, k in zip(exact.solutions, exact.branches):
        assert np.max(np.abs(phase_residual(p.phi, W, k))) <= 1e-9


def test_phase_residual_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        phase_residual((0, 0, 0), 2 * np.eye(3))


def test_solve_identity_includes_trivial_solution():
    sols = solve_dod(np.eye(3), FAST)
    assert any(params_distance(p, DodParams.zero()) <= 1e-8 for p in sols)


def test_solve_diagonal_gate():
    phi = (0.4, 1.3, 5.0)
    sols = solve_dod(np.diag(np.exp(-1j * np.array(phi))), FAST)
    assert any(params_distance(p, DodParams(phi)) <= 1e-8 for p in sols)


def test_solve_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        solve_dod(np.ones((3, 3)))


def test_wh_solutions_cover_table1(wh_solutions):
    assert len(wh_solutions) >= 5
    assert max(wh_solutions.residuals) <= 1e-9
    matched = {match_table1(p) for p in wh_solutions} - {None}
    assert matched == {1, 2, 3, 4, 5}
    # cheapest five off-diagonal generators are exactly the printed sets
    assert sorted(match_table1(p) for p in wh_solutions.solutions[:5]) == [1, 2, 3, 4, 5]
    costs = [offdiag_cost(p) for p in wh_solutions]
    assert costs == sorted(costs)


def test_wh_phase_sum_law(wh_solutions, W):
    for p in wh_solutions:
        assert np.angle(np.exp(1j * (sum(p.phi) - np.pi / 2))) == pytest.approx(0, abs=1e-6)
        assert abs(phase_sum_check(p, W)) <= 1e-9


def test_solutions_are_distinct(wh_solutions):
    sols = wh_solutions.solutions
    for i in range(len(sols)):
        for j in range(i):
            assert params_distance(sols[i], sols[j]) >= 1e-6


def test_seeded_solve_is_deterministic():
    u = haar_random_unitary(11)
    cfg = SolveConfig(starts=3, branch_range=0, seed=5)
    a, b = solve_dod(u, cfg), solve_dod(u, cfg)
    assert [p.as_vector().tolist() for p in a] == [p.as_vector().tolist() for p in b]


def test_threads_give_same_answer():
    u = haar_random_unitary(2)
    a = solve_dod(u, SolveConfig(starts=4, branch_range=1, threads=1))
    b = solve_dod(u, SolveConfig(starts=4, branch_range=1, threads=4))
    assert len(a) == len(b)
    for p, q in zip(a, b):
        assert params_distance(p, q) <= 1e-9


@settings(max_examples=15)
@given(seeds)
def test_random_unitaries_decompose(seed):
    u = haar_random_unitary(seed)
    sols = solve_dod(u, FAST)
    assert len(sols) >= 1
    for p, r in zip(sols.solutions, sols.residuals):
        assert r <= 1e-9
        assert abs(np.exp(-1j * sum(p.phi)) - np.linalg.det(u)) <= 1e-9
        g = p.off_diagonal_generator()
        assert np.allclose(np.diagonal(g), 0)
        assert frobenius_distance(np.diag(np.exp(-1j * np.array(p.phi))) @ expm_hermitian_generator(g), u) <= 1e-9


def test_to_dict_serializes(wh_solutions):
    d = wh_solutions.to_dict()
    assert len(d["solutions"]) == len(wh_solutions)
    assert set(d["solutions"][0]) >= {"phi", "m01", "m02", "m12", "residual", "branch"}
