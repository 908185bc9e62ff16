import numpy as np
import pytest

from channelforge import (
    ChiMatrix,
    ChoiMatrix,
    ConventionError,
    DensityMatrix,
    DomainError,
    KrausRep,
    ROW,
    ShapeError,
    StinespringRep,
    SuperOp,
    VecConvention,
    apply_channel,
    apply_chi,
    apply_choi,
    apply_kraus,
    apply_superop,
    apply_sysenv,
    bell_state,
    elementary_basis,
    hp_residual,
    is_cp,
    is_hp,
    is_tp,
    kraus_to_choi,
    kraus_to_superop,
    min_choi_eigenvalue,
    pauli_basis,
    superop_change_basis,
    tp_residual,
)
from channelforge.sampling import random_isometry, random_state

from conftest import DEPHASING, PLUS, TRANSPOSE_SUPEROP, crandn, random_hermitian, random_kraus

SIGMA = [np.eye(2), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
IDENTITY_CHOI = np.outer(bell_state(2), bell_state(2))


def choi_loop_oracle(lam, rho, dx, dy):
    t = lam.reshape(dx, dy, dx, dy)
    out = np.zeros((dy, dy), dtype=complex)
    for mu in range(dy):
        for nu in range(dy):
            for m in range(dx):
                for n in range(dx):
                    out[mu, nu] += rho[m, n] * t[m, mu, n, nu]
    return out


# --- DensityMatrix -----------------------------------------------------------

def test_density_matrix_validation():
    DensityMatrix(PLUS)
    with pytest.raises(DomainError):
        DensityMatrix(np.eye(2))
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(DomainError):
        DensityMatrix(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(ShapeError):
        DensityMatrix(np.ones((2, 3)))
    assert DensityMatrix(np.eye(2), normalized=False).dim == 2
    DensityMatrix(np.diag([1.5, -0.5]), validate=False)


def test_density_matrix_is_immutable():
    rho = DensityMatrix(PLUS)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1


def test_representation_shape_errors():
    with pytest.raises(ShapeError):
        KrausRep([])
    with pytest.raises(ShapeError):
        KrausRep([np.eye(2), np.eye(3)])
    with pytest.raises(ShapeError):
        SuperOp(np.eye(4), 2, 3)
    with pytest.raises(ShapeError):
        ChoiMatrix(np.eye(4), 2, 3)
    with pytest.raises(ConventionError):
        ChoiMatrix(np.eye(4), 2, 2, "diag")
    with pytest.raises(ShapeError):
        ChiMatrix(np.eye(3), pauli_basis(1))
    with pytest.raises(ShapeError):
        StinespringRep(np.eye(3), 2)
    with pytest.raises(ConventionError):
        SuperOp(np.ones((4, 1)), 1, 2, VecConvention.of(pauli_basis(1)))


def test_stinespring_from_unitary(cnot_sysenv):
    a = cnot_sysenv.a
    assert a.shape == (4, 2)
    assert (cnot_sysenv.dx, cnot_sysenv.dy, cnot_sysenv.denv) == (2, 2, 2)
    expected = np.zeros((4, 2))
    expected[0, 0] = expected[3, 1] = 1
    np.testing.assert_array_equal(a, expected)
    with pytest.raises(DomainError):
        StinespringRep.from_unitary(np.eye(4), [1, 1])


# --- apply_kraus --------------------------------------------------------------

def test_apply_kraus_identity(qubit_state):
    np.testing.assert_array_equal(apply_kraus(KrausRep([np.eye(2)]), qubit_state), qubit_state)


def test_apply_kraus_dephasing():
    np.testing.assert_allclose(apply_kraus(KrausRep(DEPHASING), PLUS), np.eye(2) / 2)


def test_apply_kraus_full_depolarization(qubit_state):
    k = KrausRep([s / 2 for s in SIGMA])
    twirl = sum(s @ qubit_state @ s.conj().T for s in SIGMA) / 4
    np.testing.assert_allclose(twirl, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(apply_kraus(k, qubit_state), twirl, atol=1e-15)


def test_apply_shape_mismatch():
    with pytest.raises(ShapeError):
        apply_kraus(KrausRep([np.eye(2)]), np.eye(3) / 3)
    with pytest.raises(ShapeError):
        apply_choi(ChoiMatrix(IDENTITY_CHOI, 2, 2), np.eye(3) / 3)
    with pytest.raises(TypeError):
        apply_channel(np.eye(2), PLUS)


# --- apply_superop ------------------------------------------------------------

def test_apply_superop_identity(qubit_state):
    np.testing.assert_array_equal(apply_superop(SuperOp(np.eye(4), 2, 2), qubit_state), qubit_state)


def test_apply_superop_swap_is_transpose(rng):
    a = crandn(rng, 2, 2)
    np.testing.assert_array_equal(apply_superop(SuperOp(TRANSPOSE_SUPEROP, 2, 2), a), a.T)


def test_apply_superop_matches_kraus(rng):
    k = random_kraus(3, 3, 2, 4)
    rho = random_state(3, seed=4).mat
    np.testing.assert_allclose(apply_superop(kraus_to_superop(k), rho), apply_kraus(k, rho),
                               atol=1e-14)


def test_apply_superop_in_other_conventions(rng):
    k = random_kraus(5, 2)
    rho = random_state(2, seed=6).mat
    s = kraus_to_superop(k)
    for conv in (ROW, VecConvention.of(pauli_basis(1))):
        s2 = superop_change_basis(s, conv)
        np.testing.assert_allclose(apply_superop(s2, rho), apply_kraus(k, rho), atol=1e-14)


# --- apply_choi ---------------------------------------------------------------

def test_apply_choi_identity(qubit_state):
    np.testing.assert_allclose(apply_choi(ChoiMatrix(IDENTITY_CHOI, 2, 2), qubit_state), qubit_state)


def test_apply_choi_identity_matrix_is_depolarizing(rng):
    a = crandn(rng, 2, 2)
    out = apply_choi(ChoiMatrix(np.eye(4), 2, 2), a)
    np.testing.assert_allclose(out, choi_loop_oracle(np.eye(4), a, 2, 2))
    np.testing.assert_allclose(out, np.trace(a) * np.eye(2))


def test_apply_choi_loop_oracle_rectangular(rng):
    lam = random_hermitian(rng, 6)
    a = crandn(rng, 3, 3)
    np.testing.assert_allclose(apply_choi(ChoiMatrix(lam, 3, 2), a), choi_loop_oracle(lam, a, 3, 2),
                               atol=1e-13)


def test_apply_choi_matches_kraus_both_conventions():
    k = random_kraus(8, 2, 3)
    rho = random_state(2, seed=9).mat
    lam = kraus_to_choi(k)
    np.testing.assert_allclose(apply_choi(lam, rho), apply_kraus(k, rho), atol=1e-14)
    np.testing.assert_allclose(apply_choi(lam.as_row(), rho), apply_kraus(k, rho), atol=1e-14)


# --- apply_chi ----------------------------------------------------------------

def test_apply_chi_identity_pauli(qubit_state):
    chi = ChiMatrix(np.diag([2, 0, 0, 0]), pauli_basis(1))
    np.testing.assert_allclose(apply_chi(chi, qubit_state), qubit_state, atol=1e-15)


def test_apply_chi_elementary_col_equals_choi(rng):
    lam = random_hermitian(rng, 4)
    a = crandn(rng, 2, 2)
    chi = ChiMatrix(lam, elementary_basis(2))
    np.testing.assert_allclose(apply_chi(chi, a), apply_choi(ChoiMatrix(lam, 2, 2), a), atol=1e-14)


def test_apply_chi_zero(qubit_state):
    out = apply_chi(ChiMatrix(np.zeros((4, 4)), pauli_basis(1)), qubit_state)
    np.testing.assert_array_equal(out, np.zeros((2, 2)))


# --- apply_sysenv -------------------------------------------------------------

def test_apply_sysenv_trivial_environment(qubit_state):
    se = StinespringRep(np.eye(2), 1)
    np.testing.assert_array_equal(apply_sysenv(se, qubit_state), qubit_state)


def test_apply_sysenv_cnot_dephases(cnot_sysenv, qubit_state):
    np.testing.assert_allclose(apply_sysenv(cnot_sysenv, qubit_state), np.diag(np.diag(qubit_state)))


def test_apply_sysenv_random_isometry_preserves_trace():
    se = StinespringRep(random_isometry(9, 2, seed=10), 3)
    out = apply_sysenv(se, random_state(2, seed=11))
    assert abs(np.trace(out) - 1) < 1e-14
    np.testing.assert_allclose(out, out.conj().T, atol=1e-15)


def test_apply_channel_dispatch(cnot_sysenv, qubit_state):
    expected = np.diag(np.diag(qubit_state))
    for rep in (KrausRep(DEPHASING), cnot_sysenv, SuperOp(np.diag([1, 0, 0, 1]), 2, 2),
                ChoiMatrix(kraus_to_choi(KrausRep(DEPHASING)).mat, 2, 2)):
        np.testing.assert_allclose(apply_channel(rep, qubit_state), expected, atol=1e-15)


# --- predicates ---------------------------------------------------------------

def test_transpose_map_predicates():
    s = SuperOp(TRANSPOSE_SUPEROP, 2, 2)
    assert is_hp(s) and is_tp(s) and not is_cp(s)
    assert min_choi_eigenvalue(s) == pytest.approx(-1, abs=1e-12)
    assert np.allclose(np.linalg.eigvalsh(TRANSPOSE_SUPEROP), [-1, 1, 1, 1])


def test_identity_choi_predicates():
    lam = ChoiMatrix(IDENTITY_CHOI, 2, 2)
    assert is_hp(lam) and is_tp(lam) and is_cp(lam)
    assert tp_residual(lam) == 0 and hp_residual(lam) == 0


def test_random_kraus_is_tp():
    k = random_kraus(12, 3, 2, 5)
    assert is_tp(k) and is_cp(k) and is_hp(k)
    assert tp_residual(k) < 1e-14


def test_non_tp_and_non_hp_detection(rng):
    k = KrausRep([0.5 * np.eye(2)])
    assert not is_tp(k)
    assert not is_tp(kraus_to_choi(k))
    assert not is_tp(kraus_to_superop(k))
    s = SuperOp(crandn(rng, 4, 4), 2, 2)
    assert not is_hp(s) and not is_cp(s)
    lam = ChoiMatrix(crandn(rng, 4, 4), 2, 2)
    assert not is_hp(lam) and not is_cp(lam)


def test_predicates_agree_across_conventions():
    k = random_kraus(13, 2)
    s = kraus_to_superop(k)
    reps = [s, superop_change_basis(s, ROW), superop_change_basis(s, pauli_basis(1)),
            kraus_to_choi(k), kraus_to_choi(k).as_row(), ChiMatrix(kraus_to_choi(k).mat, elementary_basis(2))]
    for rep in reps:
        assert is_tp(rep) and is_hp(rep) and is_cp(rep), rep


def test_superop_hp_criterion_matches_definition(rng):
    # an HP map sends Hermitian inputs to Hermitian outputs
    k = random_kraus(14, 2, 3)
    s = kraus_to_superop(k)
    h = random_hermitian(rng, 2)
    out = apply_superop(s, h)
    np.testing.assert_allclose(out, out.conj().T, atol=1e-14)
    assert hp_residual(s) < 1e-14


def test_min_choi_eigenvalue_same_for_all_routes(cnot_sysenv):
    k = KrausRep(DEPHASING)
    for rep in (k, cnot_sysenv, kraus_to_superop(k), kraus_to_choi(k)):
        assert min_choi_eigenvalue(rep) == pytest.approx(0, abs=1e-15)
