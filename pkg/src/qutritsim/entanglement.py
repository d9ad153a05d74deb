"""Entanglement measures for qutrit pairs and chains, plus their primitives.

Four measures are provided:

* ``negativity_mvw``   -- absolute sum of the negative eigenvalues of the
  partially transposed pair state (Vidal-Werner negativity).
* ``m_sm``             -- Schlienz-Mahler root-mean-square of the correlation
  residuals R_ij - R_i0 R_0j over the Latin indices 1..8.
* ``eta_n``            -- base-3 von Neumann entropy of single-site reduced
  eigenvalues (normalized so the maximally mixed qutrit gives 1).
* ``i_concurrence``    -- sqrt(3)/2 * sqrt(2 (1 - Tr rho1^2)) of a reduced
  single-site matrix.

Closed-form time dependences for the driven maximally entangled pair, the
six-term symmetric pair state, and the anisotropic zero-field pair are in
``m_sm_closed_forms``; they double as oracles for the dynamic code paths.

Conventions: ``partial_trace`` indexes tensor factors left to right, so for
``kron(a, b)`` the factor ``a`` is index 0.  Eigenvalues come from a cyclic
Jacobi rotation solver for complex Hermitian matrices -- dimensions here are
at most 81, where that is simple and robust.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import su3

_LOG3 = math.log(3.0)


@dataclass(frozen=True)
class MeasureReport:
    """All four pair measures evaluated on one state at time t."""

    m_vw: float
    m_sm: float
    eta: float
    m_i: float
    t: float


def _site_count(dim):
    n = round(math.log(dim, 3))
    if 3**n != dim:
        raise ValueError(f"matrix dimension {dim} is not a power of 3")
    return n


def partial_trace(rho, keep, n_sites=None):
    """Reduced 3x3 matrix of tensor factor ``keep`` (leftmost factor is 0)."""
    rho = np.asarray(rho)
    dim = rho.shape[0]
    n = _site_count(dim) if n_sites is None else n_sites
    if 3**n != dim:
        raise ValueError(f"dimension {dim} inconsistent with {n} sites")
    if not 0 <= keep < n:
        raise ValueError(f"site index {keep} out of range for {n} sites")
    t = rho.reshape((3,) * (2 * n))
    t = np.moveaxis(t, (keep, n + keep), (0, 1))
    m = 3 ** (n - 1)
    return np.einsum("ijaa->ij", t.reshape(3, 3, m, m))


def partial_trace_vector(psi, keep, n_sites=None):
    """Reduced 3x3 matrix of one factor of a pure state vector."""
    psi = np.asarray(psi)
    n = _site_count(psi.size) if n_sites is None else n_sites
    t = np.moveaxis(psi.reshape((3,) * n), keep, 0).reshape(3, -1)
    return np.einsum("ia,ja->ij", t, t.conj())


def partial_transpose(rho):
    """Transpose the first factor of a 9x9 bipartite state."""
    rho = np.asarray(rho)
    if rho.shape != (9, 9):
        raise ValueError("partial transpose is defined here for 9x9 pair states")
    return np.swapaxes(rho.reshape(3, 3, 3, 3), 0, 2).reshape(9, 9)


def hermitian_eigenvalues(mat, herm_tol=1e-10):
    """Eigenvalues of a complex Hermitian matrix, ascending, by cyclic Jacobi.

    Rotations are applied in sweeps until the off-diagonal Frobenius mass
    falls below 1e-14 of the matrix norm.  Raises on inputs whose Hermiticity
    residual exceeds ``herm_tol``.
    """
    a = np.array(mat, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if np.max(np.abs(a - a.conj().T)) > herm_tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(60):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= 1e-14 * scale:
            break
        thresh = 0.1 * off / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                w = a[p, q]
                absw = abs(w)
                if absw <= 1e-300 or absw < 1e-2 * thresh / n:
                    continue
                phase = w / absw
                tau = (a[q, q].real - a[p, p].real) / (2.0 * absw)
                sign = 1.0 if tau >= 0.0 else -1.0
                tt = sign / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + tt * tt)
                s = tt * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * phase * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * np.conj(phase) * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise RuntimeError("Jacobi eigenvalue sweeps failed to converge")
    return np.sort(a.diagonal().real)


def negativity_mvw(rho):
    """Vidal-Werner negativity: |sum of negative eigenvalues| of the partial transpose."""
    eigs = hermitian_eigenvalues(partial_transpose(rho))
    return float(-np.sum(np.minimum(eigs, 0.0)))


def tensor_from_density(rho):
    """Pair coefficient tensor R_ab = (3/2) Tr(rho C_a x C_b), shape (9, 9)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (9, 9):
        raise ValueError("expected a 9x9 pair density matrix")
    t = rho.reshape(3, 3, 3, 3)
    return 1.5 * np.einsum("ikjl,aji,blk->ab", t, su3.C, su3.C).real


def m_sm(r_tensor):
    """Schlienz-Mahler measure from the pair coefficient tensor."""
    r = np.asarray(r_tensor, dtype=float)
    resid = r[1:, 1:] - np.outer(r[1:, 0], r[0, 1:])
    return float(np.sqrt(np.sum(resid**2) / 8.0))


def _ghz_series(jt):
    return np.sqrt(
        4457.0
        + 2776.0 * np.cos(3.0 * jt)
        - 632.0 * np.cos(6.0 * jt)
        - 56.0 * np.cos(9.0 * jt)
        + 16.0 * np.cos(12.0 * jt)
    ) / math.sqrt(6561.0)


def _sym_series(jt):
    return np.sqrt(
        102679.0
        + 19136.0 * np.cos(3.0 * jt)
        + 29312.0 * np.cos(6.0 * jt)
        - 1024.0 * np.cos(9.0 * jt)
        + 800.0 * np.cos(12.0 * jt)
    ) / math.sqrt(209952.0)


def _aniso_series(t, j, q):
    w2 = 9.0 * j**2 + 8.0 * q * j + 16.0 * q**2
    w = math.sqrt(w2)
    q0 = (
        4457.0 * j**8
        + 11616.0 * q * j**7
        + 47392.0 * q**2 * j**6
        + 85888.0 * q**3 * j**5
        + 163072.0 * q**4 * j**4
        + 194560.0 * q**5 * j**3
        + 221184.0 * q**6 * j**2
        + 131072.0 * q**7 * j
        + 65536.0 * q**8
    )
    q1 = 8.0 * j**2 * (j + 2 * q) ** 2 * (
        347.0 * j**4 + 518.0 * q * j**3 + 1440.0 * q**2 * j**2 + 1504.0 * q**3 * j + 1024.0 * q**4
    )
    q2 = -8.0 * j**2 * (j + 2 * q) ** 2 * (
        79.0 * j**4 + 76.0 * q * j**3 + 320.0 * q**2 * j**2 + 448.0 * q**3 * j + 256.0 * q**4
    )
    q3 = -8.0 * j**3 * (7.0 * j - 4.0 * q) * (j + 2 * q) ** 3 * (j + 4.0 * q)
    q4 = 16.0 * j**4 * (j + 2 * q) ** 4
    t = np.asarray(t, dtype=float)
    total = (
        q0
        + q1 * np.cos(w * t)
        + q2 * np.cos(2.0 * w * t)
        + q3 * np.cos(3.0 * w * t)
        + q4 * np.cos(4.0 * w * t)
    )
    return np.sqrt(np.maximum(total, 0.0)) / w2**2


def m_sm_closed_forms(which, t, j, q=0.0):
    """Closed-form Schlienz-Mahler time dependence for three pair scenarios.

    which = 'ghz'   : maximally entangled initial pair under the resonant
                      drive (depends only on the product J t)
    which = 'sym'   : the six-term symmetric initial state, same conditions
    which = 'aniso' : zero field with equal anisotropy constants q on both
                      sites and exchange j

    Accepts scalar or array t.
    """
    t = np.asarray(t, dtype=float)
    if which == "ghz":
        out = _ghz_series(j * t)
    elif which == "sym":
        out = _sym_series(j * t)
    elif which == "aniso":
        out = _aniso_series(t, j, q)
    else:
        raise ValueError(f"unknown closed-form label {which!r}")
    return float(out) if out.ndim == 0 else out


def negativity_closed_form(t, j):
    """Negativity of the driven maximally entangled pair (function of J t)."""
    jt = np.asarray(j * np.asarray(t, dtype=float))
    eps12 = -np.sqrt(69.0 + 28.0 * np.cos(3.0 * jt) - 16.0 * np.cos(6.0 * jt)) / 27.0
    eps3 = -(5.0 + 4.0 * np.cos(3.0 * jt)) / 27.0
    out = np.abs(2.0 * eps12 + eps3)
    return float(out) if out.ndim == 0 else out


def reduced_eigenvalues_pair(t, j):
    """Closed-form single-site eigenvalues of the driven entangled pair."""
    jt = np.asarray(j * np.asarray(t, dtype=float))
    lam12 = (5.0 + 4.0 * np.cos(3.0 * jt)) / 27.0
    lam3 = (17.0 - 8.0 * np.cos(3.0 * jt)) / 27.0
    return lam12, lam3


def eta_n(reduced_eigs):
    """Base-3 entropy of single-site reduced eigenvalues, with 0 log 0 := 0.

    Eigenvalues must be nonnegative up to -1e-10 (solver noise in that window
    is clamped to zero) and sum to 1 within 1e-9.
    """
    r = np.asarray(reduced_eigs, dtype=float)
    if np.any(r < -1e-10):
        raise ValueError(f"negative reduced eigenvalue {r.min():.3e}")
    r = np.maximum(r, 0.0)
    if abs(r.sum() - 1.0) > 1e-9:
        raise ValueError(f"reduced eigenvalues sum to {r.sum():.12g}, not 1")
    mask = r > 0.0
    return float(-np.sum(r[mask] * np.log(r[mask]) / _LOG3))


def eta2_closed_form(t, j):
    """Entropy measure of the driven entangled pair from the closed-form eigenvalues."""
    lam12, lam3 = reduced_eigenvalues_pair(t, j)
    lam12 = np.maximum(np.asarray(lam12), 1e-300)
    lam3 = np.maximum(np.asarray(lam3), 1e-300)
    out = -(2.0 * lam12 * np.log(lam12) + lam3 * np.log(lam3)) / _LOG3
    return float(out) if out.ndim == 0 else out


def i_concurrence(rho1):
    """Normalized I-concurrence of a reduced single-site matrix."""
    rho1 = np.asarray(rho1, dtype=complex)
    purity = float(np.einsum("ij,ji->", rho1, rho1).real)
    return math.sqrt(3.0) / 2.0 * math.sqrt(max(2.0 * (1.0 - purity), 0.0))


def i_concurrence_closed_form(t, j):
    """I-concurrence of the driven entangled pair (function of J t)."""
    jt = np.asarray(j * np.asarray(t, dtype=float))
    out = np.sqrt(57.0 + 32.0 * np.cos(3.0 * jt) - 8.0 * np.cos(6.0 * jt)) / 9.0
    return float(out) if out.ndim == 0 else out


def eta2_from_density(rho):
    """Averaged base-3 entropy of the two single-site reductions of a pair state."""
    total = 0.0
    for site in (0, 1):
        eigs = hermitian_eigenvalues(partial_trace(rho, site, 2))
        total += eta_n(eigs)
    return 0.5 * total


def measures_from_density(rho, t=0.0):
    """Evaluate all four pair measures on a 9x9 density matrix."""
    r = tensor_from_density(rho)
    return MeasureReport(
        m_vw=negativity_mvw(rho),
        m_sm=m_sm(r),
        eta=eta2_from_density(rho),
        m_i=i_concurrence(partial_trace(rho, 0, 2)),
        t=t,
    )
