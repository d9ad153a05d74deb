import itertools

import numpy as np
import pytest

from qutritsim import biqutrit as bq
from qutritsim import chain, entanglement as ent


def test_size_validation():
    with pytest.raises(ValueError):
        chain.hamiltonian_n(1, 0.1)
    with pytest.raises(ValueError):
        chain.hamiltonian_n(7, 0.1)
    with pytest.raises(ValueError):
        chain.ghz_state(7)


def test_two_site_reduction_to_pair_hamiltonian():
    field = (0.2, -0.4, 0.9)
    h_chain = chain.hamiltonian_n(2, 0.3, field)
    h_pair = bq.hamiltonian2_from_fields(field, field, 0.3)
    assert np.max(np.abs(h_chain - h_pair)) < 1e-13


def test_hamiltonian_hermitian_and_field_spectrum():
    h = chain.hamiltonian_n(3, 0.1, (0.3, 0.2, -0.5))
    assert np.max(np.abs(h - h.conj().T)) < 1e-13


def test_exchange_commutes_with_total_spin():
    n = 3
    h = chain.hamiltonian_n(n, 0.25)
    from qutritsim import su3

    total_s3 = sum(chain.site_operator(su3.C[3], s, n) for s in range(n))
    assert np.max(np.abs(h @ total_s3 - total_s3 @ h)) < 1e-12


def _permutation_matrix(perm, n):
    dim = 3**n
    p = np.zeros((dim, dim))
    for idx in range(dim):
        digits = [(idx // 3**s) % 3 for s in range(n)]  # site s digit
        new_digits = [0] * n
        for s in range(n):
            new_digits[perm[s]] = digits[s]
        new_idx = sum(d * 3**s for s, d in enumerate(new_digits))
        p[new_idx, idx] = 1.0
    return p


def test_permutation_invariance():
    n = 3
    h = chain.hamiltonian_n(n, 0.2, (0.1, 0.0, 0.4))
    for perm in itertools.permutations(range(n)):
        p = _permutation_matrix(perm, n)
        assert np.max(np.abs(p @ h @ p.T - h)) < 1e-12


def test_ghz_state_norm_and_pair_identity():
    for n in range(2, 7):
        psi = chain.ghz_state(n)
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-14
    assert np.max(np.abs(chain.ghz_state(2) - bq.ghz_pair_state())) == 0.0


def test_symmetric_state_measure_value():
    psi = chain.symmetric_state_2()
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-14
    rho = np.outer(psi, psi.conj())
    m = ent.m_sm(bq.tensor_from_density(rho))
    assert m == pytest.approx(np.sqrt(23.0 / 32.0), abs=1e-12)


def test_evolve_identity_at_t0():
    h = chain.hamiltonian_n(3, 0.1)
    psi = chain.ghz_state(3)
    assert np.max(np.abs(chain.evolve_chain(psi, 0.0, h) - psi)) < 1e-12


def test_evolve_norm_preservation():
    for n in (4, 5, 6):
        h = chain.hamiltonian_n(n, 0.1)
        psi = chain.evolve_chain(chain.ghz_state(n), 100.0, h)
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-10


def test_evolve_dimension_mismatch():
    h = chain.hamiltonian_n(2, 0.1)
    with pytest.raises(ValueError):
        chain.evolve_chain(chain.ghz_state(3), 1.0, h)


def test_evolve_matches_pair_solution_at_zero_field():
    j = 0.2
    h = chain.hamiltonian_n(2, j)
    psi0 = chain.ghz_state(2)
    cfg = bq.PairConfig(omega1=0.0, omega=1.0, omega0=0.0, varpi1=0.0, varpi0=0.0, k=0.0, J=j)
    for t in (1.3, 7.7, 20.0):
        psi_t = chain.evolve_chain(psi0, t, h)
        rho_chain = np.outer(psi_t, psi_t.conj())
        rho_pair = bq.exact_solution_circular(np.outer(psi0, psi0.conj()), t, cfg)
        assert np.max(np.abs(rho_chain - rho_pair)) < 1e-11


def test_evolve_density_variant():
    h = chain.hamiltonian_n(2, 0.15)
    psi0 = chain.ghz_state(2)
    rho0 = np.outer(psi0, psi0.conj())
    t = 4.2
    rho_t = chain.evolve_chain(rho0, t, h)
    psi_t = chain.evolve_chain(psi0, t, h)
    assert np.max(np.abs(rho_t - np.outer(psi_t, psi_t.conj()))) < 1e-12


def test_lanczos_against_dense_eigendecomposition():
    rng = np.random.default_rng(17)
    n = 5
    h = chain.hamiltonian_n(n, 0.1, (0.05, 0.0, 0.2))
    psi0 = rng.normal(size=3**n) + 1j * rng.normal(size=3**n)
    psi0 /= np.linalg.norm(psi0)
    t = 8.0
    via_lanczos = chain._lanczos_expm(h, psi0, t)
    evals, vecs = np.linalg.eigh(h)
    direct = vecs @ (np.exp(-1j * evals * t) * (vecs.conj().T @ psi0))
    assert np.max(np.abs(via_lanczos - direct)) < 1e-9


def test_reduced_eigenvalues_at_t0():
    for n in range(2, 7):
        r1, r3 = chain.reduced_eigenvalues_analytic(n, 0.0)
        assert r1 == pytest.approx(1.0 / 3.0, abs=1e-14)
        assert r3 == pytest.approx(1.0 / 3.0, abs=1e-14)


def test_reduced_eigenvalue_sum_rule():
    jt = np.linspace(0.0, 30.0, 400)
    for n in range(2, 7):
        r1, r3 = chain.reduced_eigenvalues_analytic(n, jt)
        assert np.max(np.abs(2.0 * r1 + r3 - 1.0)) < 1e-13


def test_reduced_eigenvalues_match_numeric_partial_trace():
    rng = np.random.default_rng(23)
    j = 0.1
    for n in (3, 4, 5, 6):
        h = chain.hamiltonian_n(n, j)
        psi0 = chain.ghz_state(n)
        for jt in rng.uniform(0.0, 10.0, 5):
            psi = chain.evolve_chain(psi0, jt / j, h)
            rho1 = chain.reduced_site_matrix(psi, 0, n)
            eigs = ent.hermitian_eigenvalues(rho1)
            r1, r3 = chain.reduced_eigenvalues_analytic(n, jt)
            assert np.max(np.abs(eigs - np.sort([r1, r1, r3]))) < 1e-9


def test_all_site_reductions_equal():
    j, n = 0.1, 4
    h = chain.hamiltonian_n(n, j)
    psi = chain.evolve_chain(chain.ghz_state(n), 13.0, h)
    base = chain.reduced_site_matrix(psi, 0, n)
    for s in range(1, n):
        assert np.max(np.abs(chain.reduced_site_matrix(psi, s, n) - base)) < 1e-10


def test_reduced_site_matrix_product_state():
    # site ordering: site 0 is the fastest index; check with an asymmetric product
    a = np.array([1.0, 0.0, 0.0], dtype=complex)  # site 1 (slow factor)
    b = np.array([0.0, 1.0, 0.0], dtype=complex)  # site 0 (fast factor)
    psi = np.kron(a, b)
    rho_site0 = chain.reduced_site_matrix(psi, 0, 2)
    rho_site1 = chain.reduced_site_matrix(psi, 1, 2)
    assert np.allclose(rho_site0, np.outer(b, b.conj()))
    assert np.allclose(rho_site1, np.outer(a, a.conj()))


def test_eta_chain_sign_invariance():
    ts = np.linspace(0.0, 40.0, 100)
    for n in range(2, 7):
        plus = chain.eta_chain(n, 0.1, ts)
        minus = chain.eta_chain(n, -0.1, ts)
        assert np.max(np.abs(plus - minus)) < 1e-14


def test_eta_chain_numeric_sign_invariance():
    n, j = 3, 0.1
    hp = chain.hamiltonian_n(n, j)
    hm = chain.hamiltonian_n(n, -j)
    psi0 = chain.ghz_state(n)
    for t in (3.0, 11.0):
        ep = ent.eta_n(ent.hermitian_eigenvalues(
            chain.reduced_site_matrix(chain.evolve_chain(psi0, t, hp), 0, n)))
        em = ent.eta_n(ent.hermitian_eigenvalues(
            chain.reduced_site_matrix(chain.evolve_chain(psi0, t, hm), 0, n)))
        assert ep == pytest.approx(em, abs=1e-10)


def test_eta3_range():
    jt = np.linspace(0.0, 2.0 * np.pi, 100001)
    eta3 = chain.eta_chain(3, 1.0, jt)
    assert eta3.max() == pytest.approx(1.0, abs=1e-9)
    assert eta3.min() == pytest.approx(0.889, abs=1e-3)
