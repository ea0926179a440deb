"""Minimax oracle: objective, certified minimizer, POVM recovery, samplers."""

import math

import numpy as np
import pytest

import qsd
from qsd import BlochVector, ConvergenceError, MinimaxSolution
from qsd.oracle import (
    classical_diagonal_oracle,
    minimax_common_point,
    minimax_objective,
    pair_lower_bound,
    random_povm_sample,
    recover_povm,
    solve_oracle,
)
from helpers import assert_result_valid, random_ensemble


def antipodal():
    return qsd.validate_ensemble([(0.5, (0, 0, 1)), (0.5, (0, 0, -1))])


def trine():
    return qsd.cone_ensemble(3, 1.0, 0.5 * math.pi)


def boundary_triple():
    return qsd.validate_ensemble(
        [(0.9, (0, 0, 1)), (0.05, (0, 0, -1)), (0.05, (1, 0, 0))]
    )


def test_objective_values():
    ens = antipodal()
    assert minimax_objective(ens, BlochVector(0, 0, 0)) == pytest.approx(1.0)
    assert minimax_objective(ens, BlochVector(0, 0, 0.5)) == pytest.approx(1.5)


def test_minimax_antipodal():
    sol = minimax_common_point(antipodal())
    assert sol.converged
    assert sol.p_star == pytest.approx(1.0, abs=1e-10)
    assert sol.r_star.norm() <= 1e-9
    assert len(sol.active_set) >= 2


def test_minimax_trine():
    sol = minimax_common_point(trine())
    assert sol.converged
    assert sol.p_star == pytest.approx(2.0 / 3.0, abs=1e-10)
    assert sol.r_star.norm() <= 1e-8
    assert len(sol.active_set) >= 2


def test_minimax_boundary_triple():
    sol = minimax_common_point(boundary_triple())
    assert sol.p_star == pytest.approx(0.95, abs=1e-10)
    assert np.allclose(sol.r_star.as_array(), [0, 0, 0.85], atol=1e-8)


def test_minimax_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        minimax_common_point(trine(), tol=0.0)


def test_pair_lower_bound():
    assert pair_lower_bound(antipodal()) == pytest.approx(1.0, abs=1e-15)
    assert pair_lower_bound(boundary_triple()) == pytest.approx(0.95, abs=1e-15)
    # bound never exceeds the optimum
    rng = np.random.default_rng(11)
    for _ in range(20):
        ens = random_ensemble(rng, int(rng.integers(2, 6)))
        assert pair_lower_bound(ens) <= solve_oracle(ens).p_opt + 1e-9


def test_determinism():
    rng = np.random.default_rng(3)
    ens = random_ensemble(rng, 5)
    a = minimax_common_point(ens, tol=1e-10, seed=42)
    b = minimax_common_point(ens, tol=1e-10, seed=42)
    assert a.p_star == b.p_star
    assert a.r_star == b.r_star
    assert a.active_set == b.active_set


def test_objective_convexity():
    rng = np.random.default_rng(5)
    for _ in range(10):
        ens = random_ensemble(rng, int(rng.integers(2, 7)))
        for _ in range(50):
            r1 = rng.normal(size=3)
            r2 = rng.normal(size=3)
            t = rng.uniform()
            lhs = minimax_objective(ens, t * r1 + (1.0 - t) * r2)
            rhs = t * minimax_objective(ens, r1) + (1.0 - t) * minimax_objective(ens, r2)
            assert lhs <= rhs + 1e-12


def test_recover_povm_boundary_triple():
    ens = boundary_triple()
    povm, cert = recover_povm(ens, minimax_common_point(ens))
    assert povm.elements[2].a == 0.0
    assert not cert.pure_mask[2]
    assert cert.pure_mask[0] and cert.pure_mask[1]
    np.testing.assert_allclose(povm.elements[0].v.as_array(), [0, 0, 0.5], atol=1e-8)


def test_recover_povm_guess_regime():
    ens = qsd.validate_ensemble([(0.98, (0, 0, 0)), (0.02, (0, 0, 0.1))])
    povm, cert = recover_povm(ens, minimax_common_point(ens))
    assert cert.degenerate
    assert cert.p == pytest.approx(0.98, abs=1e-12)
    assert povm.elements[0].a == 1.0
    assert all(lam == 0.0 for lam in cert.lambdas)


def test_recover_povm_requires_convergence():
    sol = MinimaxSolution(
        p_star=0.5,
        r_star=BlochVector(0, 0, 0),
        active_set=(0,),
        iterations=1,
        converged=False,
    )
    with pytest.raises(ConvergenceError):
        recover_povm(trine(), sol)


def test_solve_oracle_full_certificates():
    rng = np.random.default_rng(13)
    for _ in range(10):
        ens = random_ensemble(rng, int(rng.integers(2, 7)))
        result = solve_oracle(ens)
        assert result.method == "oracle"
        assert_result_valid(ens, result)


def test_classical_diagonal_oracle_values():
    ens = qsd.validate_ensemble(
        [(0.5, (0, 0, 0.8)), (0.3, (0, 0, -0.5)), (0.2, (0, 0, 0.1))]
    )
    assert classical_diagonal_oracle(ens) == 0.675
    poles = antipodal()
    assert classical_diagonal_oracle(poles) == pytest.approx(1.0, abs=1e-15)
    dominant = qsd.validate_ensemble(
        [(0.98, (0, 0, 1)), (0.01, (0, 0, -1)), (0.01, (0, 0, 0))]
    )
    assert classical_diagonal_oracle(dominant) == pytest.approx(0.99, abs=1e-15)


def test_classical_diagonal_oracle_rejects_offaxis():
    with pytest.raises(ValueError):
        classical_diagonal_oracle(trine())


def test_random_povm_sample_bound_and_determinism():
    ens = trine()
    best = random_povm_sample(ens, 10_000, seed=1)
    assert best <= 2.0 / 3.0 + 1e-8
    assert best > 1.0 / 3.0  # beats blind guessing on this ensemble
    assert best == random_povm_sample(ens, 10_000, seed=1)


def test_random_povm_sample_count_validation():
    with pytest.raises(ValueError):
        random_povm_sample(trine(), 0)
