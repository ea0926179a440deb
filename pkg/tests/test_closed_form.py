"""Closed-form solvers: two-state, diagonal, symmetric shell, cone, dispatch."""

import math

import numpy as np
import pytest

import qsd
from qsd import (
    BlochVector,
    Povm,
    PovmElement,
    WeightSystemInfeasible,
    cone_ensemble,
    solve_auto,
    solve_cone,
    solve_diagonal,
    solve_oracle,
    solve_symmetric_shell,
    solve_two_state,
)
from qsd.oracle import classical_diagonal_oracle
from qsd.platonic import PlatonicSolid, platonic_ensemble
from helpers import assert_result_valid, random_diagonal_ensemble, random_ensemble


# ---------------------------------------------------------------------------
# two states


def test_two_state_orthogonal_pair():
    ens = qsd.validate_ensemble([(0.5, (0, 0, 1)), (0.5, (0, 0, -1))])
    result = solve_two_state(ens)
    assert result.p_opt == pytest.approx(1.0, abs=1e-15)
    assert result.method == "two-state"
    np.testing.assert_allclose(result.povm.elements[0].v.as_array(), [0, 0, 0.5], atol=1e-12)
    np.testing.assert_allclose(result.povm.elements[1].v.as_array(), [0, 0, -0.5], atol=1e-12)
    assert_result_valid(ens, result)


def test_two_state_identical_states_canonical():
    ens = qsd.validate_ensemble([(0.5, (0, 0, 0.5)), (0.5, (0, 0, 0.5))])
    result = solve_two_state(ens)
    assert result.p_opt == 0.5
    assert result.certificate.degenerate
    for el in result.povm.elements:
        assert el.a == 0.5 and el.v.norm() == 0.0
    conj = result.certificate.conjugates
    np.testing.assert_allclose(conj[0].as_array(), [0, 0, 1])
    np.testing.assert_allclose(conj[1].as_array(), [0, 0, -1])
    assert result.certificate.lambdas == (0.0, 0.0)


def test_two_state_skewed_formula():
    ens = qsd.validate_ensemble([(0.3, (1, 0, 0)), (0.7, (0, 1, 0))])
    result = solve_two_state(ens)
    assert result.p_opt == pytest.approx(0.5 * (1.0 + math.sqrt(0.58)), abs=1e-15)
    assert abs(result.p_opt - solve_oracle(ens).p_opt) <= 1e-9
    assert_result_valid(ens, result)


def test_two_state_lambda_closed_form_exact():
    ens = qsd.validate_ensemble([(0.3, (1, 0, 0)), (0.7, (0, 1, 0))])
    result = solve_two_state(ens)
    p = result.p_opt
    cert = result.certificate
    # multipliers are literally (1 - p_i/p)/4
    assert cert.lambdas[0] == (1.0 - 0.3 / p) / 4.0
    assert cert.lambdas[1] == (1.0 - 0.7 / p) / 4.0
    aggregate = math.fsum(
        lam * c.norm() ** 2 / (1.0 - t)
        for lam, c, t in zip(cert.lambdas, cert.conjugates, cert.scaled_priors)
    )
    assert abs(aggregate - 0.5) <= 1e-12


def test_two_state_guess_regime():
    ens = qsd.validate_ensemble([(0.98, (0, 0, 0)), (0.02, (0, 0, 0.1))])
    result = solve_two_state(ens)
    assert result.p_opt == 0.98
    assert result.certificate.degenerate
    assert_result_valid(ens, result)


def test_two_state_conjugates_antipodal_unit():
    rng = np.random.default_rng(2)
    for _ in range(25):
        ens = random_ensemble(rng, 2)
        result = solve_two_state(ens)
        if result.certificate.degenerate:
            continue
        c1, c2 = result.certificate.conjugates
        assert c1.norm() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(c2.as_array(), -c1.as_array(), atol=1e-12)


def test_two_state_wrong_size():
    with pytest.raises(ValueError):
        solve_two_state(qsd.cone_ensemble(3, 1.0, 0.5 * math.pi))


# ---------------------------------------------------------------------------
# diagonal ensembles


def test_diagonal_worked_example():
    ens = qsd.validate_ensemble(
        [(0.5, (0, 0, 0.8)), (0.3, (0, 0, -0.5)), (0.2, (0, 0, 0.1))]
    )
    result = solve_diagonal(ens)
    assert result.p_opt == 0.675
    assert result.p_opt == classical_diagonal_oracle(ens)
    assert result.method == "diagonal"
    # winner: state 1 up, state 2 down
    assert result.povm.elements[0].a == 0.5
    np.testing.assert_allclose(result.povm.elements[0].v.as_array(), [0, 0, 0.5], atol=1e-15)
    assert result.povm.elements[1].a == 0.5
    np.testing.assert_allclose(result.povm.elements[1].v.as_array(), [0, 0, -0.5], atol=1e-15)
    assert result.povm.elements[2].a == 0.0
    assert_result_valid(ens, result)


def test_diagonal_two_poles():
    ens = qsd.validate_ensemble([(0.5, (0, 0, 1)), (0.5, (0, 0, -1))])
    result = solve_diagonal(ens)
    assert result.p_opt == pytest.approx(1.0, abs=1e-15)


def test_diagonal_dominant_prior_guess():
    ens = qsd.validate_ensemble(
        [(0.98, (0, 0, 1)), (0.01, (0, 0, -1)), (0.01, (0, 0, 0))]
    )
    result = solve_diagonal(ens)
    # up-guess on state 1 plus down-guess on state 2: not a guess strategy
    assert result.p_opt == classical_diagonal_oracle(ens)
    assert result.p_opt == pytest.approx(0.99, abs=1e-15)
    assert_result_valid(ens, result)


def test_diagonal_guess_regime_exact():
    ens = qsd.validate_ensemble(
        [(0.98, (0, 0, 0.1)), (0.01, (0, 0, 0.2)), (0.01, (0, 0, -0.1))]
    )
    result = solve_diagonal(ens)
    assert result.certificate.degenerate
    assert result.p_opt == classical_diagonal_oracle(ens)
    assert_result_valid(ens, result)


def test_diagonal_equal_z_reduces_to_guess():
    ens = qsd.validate_ensemble(
        [(0.5, (0, 0, 0.5)), (0.3, (0, 0, 0.5)), (0.2, (0, 0, 0.5))]
    )
    result = solve_diagonal(ens)
    assert result.p_opt == classical_diagonal_oracle(ens)
    assert result.p_opt >= ens.priors.max() - 1e-15


def test_diagonal_matches_classical_on_random_draws():
    rng = np.random.default_rng(17)
    for _ in range(200):
        ens = random_diagonal_ensemble(rng, int(rng.integers(2, 7)))
        result = solve_diagonal(ens)
        assert result.p_opt == classical_diagonal_oracle(ens)


def test_diagonal_rejects_offaxis():
    with pytest.raises(ValueError):
        solve_diagonal(qsd.cone_ensemble(3, 1.0, 0.5 * math.pi))


# ---------------------------------------------------------------------------
# symmetric shell


def test_shell_tetrahedron_unit():
    ens, _ = platonic_ensemble(PlatonicSolid("tetrahedron", 1.0))
    result = solve_symmetric_shell(ens)
    assert result.p_opt == pytest.approx(0.5, abs=1e-12)
    w = 2.0 * result.povm.a_values()
    np.testing.assert_allclose(w, 0.5, atol=1e-9)
    assert_result_valid(ens, result)


def test_shell_octahedron_half_radius():
    ens, _ = platonic_ensemble(PlatonicSolid("octahedron", 0.5))
    result = solve_symmetric_shell(ens)
    assert result.p_opt == pytest.approx(0.25, abs=1e-12)
    assert_result_valid(ens, result)


def test_shell_zero_radius_guess():
    n = 4
    ens = qsd.validate_ensemble([(0.25, (0, 0, 0))] * n)
    result = solve_symmetric_shell(ens)
    assert result.p_opt == pytest.approx(1.0 / n, abs=1e-15)
    assert result.certificate.degenerate


def test_shell_requires_equiprobable():
    ens = qsd.validate_ensemble(
        [(0.4, (0, 0, 1)), (0.3, (1, 0, 0)), (0.3, (0, 1, 0))]
    )
    with pytest.raises(ValueError):
        solve_symmetric_shell(ens)


def test_shell_requires_common_norm():
    ens = qsd.validate_ensemble(
        [(0.5, (0, 0, 1)), (0.5, (0.5, 0, 0))]
    )
    with pytest.raises(ValueError):
        solve_symmetric_shell(ens)


def test_shell_half_space_infeasible():
    third = 1.0 / 3.0
    ens = qsd.validate_ensemble(
        [
            (third, (0.6, 0.0, 0.8)),
            (third, (-0.6, 0.0, 0.8)),
            (third, (0.0, 0.6, 0.8)),
        ]
    )
    with pytest.raises(WeightSystemInfeasible):
        solve_symmetric_shell(ens)


# ---------------------------------------------------------------------------
# cone


def test_cone_trine():
    result = solve_cone(3, 1.0, 0.5 * math.pi)
    assert result.p_opt == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert result.method == "cone"


def test_cone_four_state_formula():
    result = solve_cone(4, 0.8, math.pi / 3.0)
    expected = (1.0 + 0.8 * math.sin(math.pi / 3.0)) / 4.0
    assert result.p_opt == pytest.approx(expected, abs=1e-15)
    assert result.p_opt == pytest.approx(0.4232050807568877, abs=1e-12)
    ens = cone_ensemble(4, 0.8, math.pi / 3.0)
    assert abs(result.p_opt - solve_oracle(ens).p_opt) <= 1e-8
    assert_result_valid(ens, result)


def test_cone_polar_collapse():
    result = solve_cone(4, 0.7, 0.0)
    assert result.p_opt == pytest.approx(0.25, abs=1e-15)
    assert result.certificate.degenerate


def test_cone_half_plane_infeasible():
    with pytest.raises(WeightSystemInfeasible):
        solve_cone(3, 1.0, 0.5 * math.pi, phis=(0.0, 0.3, 0.6))


def test_cone_parameter_validation():
    with pytest.raises(ValueError):
        cone_ensemble(1, 1.0, 0.5)
    with pytest.raises(ValueError):
        cone_ensemble(3, 1.2, 0.5)
    with pytest.raises(ValueError):
        cone_ensemble(3, 0.5, 4.0)
    with pytest.raises(ValueError):
        cone_ensemble(3, 0.5, 0.5, phis=(0.0, 1.0))


# ---------------------------------------------------------------------------
# dispatch


def test_auto_two_state_tag():
    ens = qsd.validate_ensemble([(0.3, (1, 0, 0)), (0.7, (0, 1, 0))])
    assert solve_auto(ens).method == "two-state"


def test_auto_diagonal_tag():
    ens = qsd.validate_ensemble(
        [(0.5, (0, 0, 0.8)), (0.3, (0, 0, -0.5)), (0.2, (0, 0, 0.1))]
    )
    assert solve_auto(ens).method == "diagonal"


def test_auto_three_state_tag():
    ens = qsd.validate_ensemble(
        [(0.9, (0, 0, 1)), (0.05, (0, 0, -1)), (0.05, (1, 0, 0))]
    )
    assert solve_auto(ens).method == "three-state-boundary"


def test_auto_shell_tag():
    ens, _ = platonic_ensemble(PlatonicSolid("tetrahedron", 0.7))
    result = solve_auto(ens)
    assert result.method == "symmetric-shell"
    assert result.p_opt == pytest.approx(1.7 / 4.0, abs=1e-12)


def test_auto_cone_tag():
    ens = cone_ensemble(4, 0.8, math.pi / 3.0)
    assert solve_auto(ens).method == "cone"


def test_auto_oracle_fallback():
    rng = np.random.default_rng(23)
    ens = random_ensemble(rng, 5)
    result = solve_auto(ens)
    assert result.method == "oracle"
    assert_result_valid(ens, result)


def test_auto_half_space_shell_falls_to_oracle():
    # equal norms but mixed polar angles (not a cone), all states in the
    # upper half space: the shell weight system is infeasible
    ens = qsd.validate_ensemble(
        [
            (0.25, (0.6, 0.0, 0.8)),
            (0.25, (-0.6, 0.0, 0.8)),
            (0.25, (0.0, 0.6, 0.8)),
            (0.25, (0.0, 0.0, 1.0)),
        ]
    )
    result = solve_auto(ens)
    assert result.method == "oracle"
    assert_result_valid(ens, result)
