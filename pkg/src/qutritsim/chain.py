"""Qutrit chains (2..6 sites) with complete pairwise isotropic exchange.

The Hamiltonian sums a uniform field term over every site and the exchange
J S.S over every *pair* of sites (the coupling graph is complete, not
nearest-neighbor -- that is what the defining sum over positions produces,
and the analytic reduced-eigenvalue formulas below belong to exactly this
operator).

Site convention: states are 3^N amplitude vectors with site 0 as the fastest
(little-endian) index, so an operator on site s is
kron(I_{3^(N-1-s)}, kron(op, I_{3^s})).  Tensor-factor utilities in
:mod:`qutritsim.entanglement` index factors left to right; site s of a chain
is factor N-1-s there.  All chain scenarios here are permutation symmetric,
which makes every single-site reduction identical.

Evolution keeps pure states as vectors (729 amplitudes at N = 6 instead of a
531441-entry density matrix): dense eigendecomposition up to N = 4, Lanczos
propagation in a Krylov subspace for N = 5, 6.
"""

import math

import numpy as np

from . import su3

_MAX_SITES = 6


def _check_sites(n):
    if not 2 <= n <= _MAX_SITES:
        raise ValueError(f"chain size must be in 2..{_MAX_SITES}, got {n}")


def site_operator(op, site, n_sites):
    """Embed a 3x3 operator on the given site of an n-site chain."""
    _check_sites(n_sites)
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} out of range for {n_sites} sites")
    left = np.eye(3 ** (n_sites - 1 - site))
    right = np.eye(3**site)
    return np.kron(left, np.kron(op, right))


def hamiltonian_n(n_sites, J, field=(0.0, 0.0, 0.0)):
    """Uniform-field plus all-pairs exchange Hamiltonian on n_sites qutrits."""
    _check_sites(n_sites)
    dim = 3**n_sites
    h = np.zeros((dim, dim), dtype=complex)
    spins = [[site_operator(su3.C[a], s, n_sites) for a in (1, 2, 3)] for s in range(n_sites)]
    for s in range(n_sites):
        for a in range(3):
            if field[a] != 0.0:
                h += field[a] * spins[s][a]
    for s in range(n_sites):
        for s2 in range(s + 1, n_sites):
            for a in range(3):
                h += J * (spins[s][a] @ spins[s2][a])
    return h


def ghz_state(n_sites):
    """(1/sqrt(3)) sum_i |i>^{x n}, the maximally entangled symmetric state."""
    _check_sites(n_sites)
    dim = 3**n_sites
    psi = np.zeros(dim, dtype=complex)
    stride = (dim - 1) // 2  # indices 0, (d-1)/2, d-1 are the aligned levels
    psi[[0, stride, dim - 1]] = 1.0 / math.sqrt(3.0)
    return psi


def symmetric_state_2():
    """Normalized uniform superposition of the six two-site states with i != j."""
    psi = np.zeros(9, dtype=complex)
    for i in range(3):
        for j in range(3):
            if i != j:
                psi[3 * i + j] = 1.0
    return psi / math.sqrt(6.0)


def _lanczos_expm(h, v, t, m=30, tol=1e-12):
    """exp(-i h t) v by Lanczos with full reorthogonalization.

    Splits the time step in half recursively when the subspace residual
    exceeds ``tol``; exchange-only chain states span a handful of Krylov
    vectors, so a single step almost always suffices.
    """
    norm0 = np.linalg.norm(v)
    if norm0 == 0.0:
        return v.copy()
    basis = [v / norm0]
    alphas, betas = [], []
    breakdown = False
    for _ in range(m):
        w = h @ basis[-1]
        a = float(np.vdot(basis[-1], w).real)
        alphas.append(a)
        w = w - a * basis[-1]
        if len(basis) > 1:
            w = w - betas[-1] * basis[-2]
        for b in basis:  # full reorthogonalization; m is small
            w = w - np.vdot(b, w) * b
        beta = np.linalg.norm(w)
        if beta < 1e-14 * norm0:
            breakdown = True
            break
        betas.append(float(beta))
        basis.append(w / beta)
    kdim = len(alphas)
    tmat = np.diag(alphas)
    if kdim > 1:
        off = np.array(betas[: kdim - 1])
        tmat += np.diag(off, 1) + np.diag(off, -1)
    evals, evecs = np.linalg.eigh(tmat)
    coeff = evecs @ (np.exp(-1j * evals * t) * evecs[0, :])
    if not breakdown:
        resid = abs(betas[-1] * coeff[-1]) if len(betas) >= kdim else 0.0
        if resid > tol:
            half = _lanczos_expm(h, v, 0.5 * t, m, tol)
            return _lanczos_expm(h, half, 0.5 * t, m, tol)
    vmat = np.array(basis[:kdim]).T
    return norm0 * (vmat @ coeff)


def evolve_chain(state, t, h):
    """Propagate a chain state (vector or density matrix) for time t under h.

    Vectors of dimension <= 81 and all density matrices go through a dense
    eigendecomposition; larger vectors use Lanczos propagation.
    """
    state = np.asarray(state, dtype=complex)
    dim = h.shape[0]
    if state.shape not in ((dim,), (dim, dim)):
        raise ValueError(f"state shape {state.shape} does not match dimension {dim}")
    if state.ndim == 1 and dim > 81:
        return _lanczos_expm(h, state, t)
    evals, vecs = np.linalg.eigh(h)
    u = (vecs * np.exp(-1j * evals * t)) @ vecs.conj().T
    if state.ndim == 1:
        return u @ state
    return u @ state @ u.conj().T


# (denominator, constant, [(cosine coefficient, frequency multiple of Jt), ...])
_REDUCED_TABLES = {
    3: ((75.0, 29.0, [(-4.0, 5.0)]), (75.0, 17.0, [(8.0, 5.0)])),
    4: (
        (2205.0, 905.0, [(-98.0, 3.0), (-72.0, 7.0)]),
        (2205.0, 395.0, [(196.0, 3.0), (144.0, 7.0)]),
    ),
    5: (
        (42525.0, 16919.0, [(-1944.0, 5.0), (-800.0, 9.0)]),
        (42525.0, 8687.0, [(3888.0, 5.0), (1600.0, 9.0)]),
    ),
    6: (
        (53361.0, 21977.0, [(-1694.0, 3.0), (-1936.0, 7.0), (-560.0, 11.0)]),
        (53361.0, 9407.0, [(3388.0, 3.0), (3872.0, 7.0), (1120.0, 11.0)]),
    ),
}


def reduced_eigenvalues_analytic(n_sites, jt):
    """Closed-form single-site reduced eigenvalues (r1 = r2, r3) of the
    evolved maximally entangled chain state at zero field.

    ``jt`` is the product J*t; all entries are even in it, so the result is
    independent of the sign of the exchange constant.
    """
    _check_sites(n_sites)
    jt = np.asarray(jt, dtype=float)
    if n_sites == 2:
        r1 = (5.0 + 4.0 * np.cos(3.0 * jt)) / 27.0
        r3 = (17.0 - 8.0 * np.cos(3.0 * jt)) / 27.0
    else:
        spec1, spec3 = _REDUCED_TABLES[n_sites]

        def evaluate(spec):
            denom, const, cosines = spec
            total = const * np.ones_like(jt)
            for coeff, mult in cosines:
                total = total + coeff * np.cos(mult * jt)
            return total / denom

        r1, r3 = evaluate(spec1), evaluate(spec3)
    if jt.ndim == 0:
        return float(r1), float(r3)
    return r1, r3


def reduced_site_matrix(state, site, n_sites):
    """Single-site reduced density matrix of a pure chain state vector."""
    _check_sites(n_sites)
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} out of range for {n_sites} sites")
    psi = np.asarray(state, dtype=complex).reshape((3,) * n_sites)
    axis = n_sites - 1 - site  # little-endian: site 0 is the last reshape axis
    mat = np.moveaxis(psi, axis, 0).reshape(3, -1)
    return np.einsum("ia,ja->ij", mat, mat.conj())


def eta_chain(n_sites, j, t):
    """Entropy measure of the evolved maximally entangled chain, closed form."""
    from .entanglement import eta_n

    r1, r3 = reduced_eigenvalues_analytic(n_sites, j * t)
    if np.ndim(r1) == 0:
        return eta_n(np.array([r1, r1, r3]))
    return np.array([eta_n(np.array([a, a, b])) for a, b in zip(r1, r3)])
