import numpy as np
import pytest

from qutritsim import su3


def test_orthogonality_all_pairs():
    overlaps = np.einsum("aij,bji->ab", su3.C, su3.C)
    assert np.max(np.abs(overlaps - 2.0 * np.eye(9))) < 1e-13


def test_traces():
    for a in range(1, 9):
        assert abs(np.trace(su3.C[a])) < 1e-13
    assert abs(np.trace(su3.C[0]) - np.sqrt(6.0)) < 1e-13


def test_hermiticity():
    for a in range(9):
        assert np.max(np.abs(su3.C[a] - su3.C[a].conj().T)) == 0.0


def test_basis_matrix_values():
    assert np.allclose(su3.basis_matrix(3), np.diag([1.0, 0.0, -1.0]))
    assert np.allclose(su3.basis_matrix(0), np.sqrt(2.0 / 3.0) * np.eye(3))
    c8 = su3.basis_matrix(8)
    expected = np.zeros((3, 3))
    expected[0, 2] = expected[2, 0] = 1.0
    assert np.allclose(c8, expected)


def test_basis_matrix_range():
    with pytest.raises(ValueError):
        su3.basis_matrix(9)
    with pytest.raises(ValueError):
        su3.basis_matrix(-1)


def test_structure_constant_values():
    assert su3.structure_e(1, 2, 3) == pytest.approx(0.5)
    assert su3.structure_e(3, 4, 8) == pytest.approx(-1.0)
    assert su3.structure_e(1, 1, 5) == 0.0
    assert su3.structure_g(6, 6, 6) == pytest.approx(-1.0 / np.sqrt(3.0))
    assert su3.structure_g(1, 1, 8) == pytest.approx(0.5)
    assert su3.structure_g(1, 2, 3) == 0.0


def test_structure_constant_range():
    with pytest.raises(ValueError):
        su3.structure_e(0, 1, 2)
    with pytest.raises(ValueError):
        su3.structure_g(1, 2, 9)


def test_tables_match_trace_formulas():
    e_calc, g_calc = su3._tables_from_traces()
    assert np.max(np.abs(su3.E_TABLE[1:, 1:, 1:] - e_calc.real)) < 1e-13
    assert np.max(np.abs(su3.G_TABLE[1:, 1:, 1:] - g_calc.real)) < 1e-13


def test_table_symmetries():
    e, g = su3.E_TABLE, su3.G_TABLE
    assert np.max(np.abs(e + np.transpose(e, (1, 0, 2)))) == 0.0
    assert np.max(np.abs(e + np.transpose(e, (0, 2, 1)))) == 0.0
    assert np.max(np.abs(g - np.transpose(g, (1, 0, 2)))) == 0.0
    assert np.max(np.abs(g - np.transpose(g, (0, 2, 1)))) == 0.0


def test_commutator_and_anticommutator_identities():
    # [C1, C2] = 2i e_123 C3 and {C3, C3} = 4/3 E + 2 g_336 C6
    comm = su3.C[1] @ su3.C[2] - su3.C[2] @ su3.C[1]
    assert np.max(np.abs(comm - 2j * su3.structure_e(1, 2, 3) * su3.C[3])) < 1e-14
    anti = 2.0 * su3.C[3] @ su3.C[3]
    expected = (4.0 / 3.0) * np.eye(3) + 2.0 * su3.structure_g(3, 3, 6) * su3.C[6]
    assert np.max(np.abs(anti - expected)) < 1e-14


def test_spin_commutation():
    report = su3.verify_algebra()
    assert report["spin_commutation"] < 1e-13


def test_gellmann_decomposition_listed_values():
    c4 = su3.gellmann_decompose(4)
    expected = np.zeros(8)
    expected[4] = 1.0  # lambda_5
    assert np.allclose(c4, expected, atol=1e-14)
    c1 = su3.gellmann_decompose(1)
    expected = np.zeros(8)
    expected[0] = expected[5] = 1.0 / np.sqrt(2.0)  # (lambda_1 + lambda_6)/sqrt(2)
    assert np.allclose(c1, expected, atol=1e-14)


def test_gellmann_reconstruction():
    for a in range(1, 9):
        coeff = su3.gellmann_decompose(a)
        recon = np.einsum("a,aij->ij", coeff, su3.GELLMANN)
        assert np.max(np.abs(recon - su3.C[a])) < 1e-14


def test_verify_algebra_under_tolerance():
    report = su3.verify_algebra()
    assert all(v < 1e-13 for v in report.values()), report
