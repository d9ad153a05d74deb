"""Two exchange-coupled qutrits: Hamiltonian, 80-equation system, exact solutions.

The pair state is carried either as a 9x9 density matrix (first qutrit =
first/slow tensor factor) or as the real 9x9 coefficient tensor

    varrho = (1/6) R_ab C_a x C_b,    R_ab = (3/2) Tr(varrho C_a x C_b),

with R[0,0] = 1 fixed.  Pure states have sqrt(sum R^2 - 1) = 2 sqrt(2).

The pair Hamiltonian couples two independently driven anisotropic qutrits
through an isotropic exchange J:

    H2 = (h.S + Q (S3^2 - 2/3 E) + d (S1^2 - S2^2)) x E
       + E x (hb.S + Qb (S3^2 - 2/3 E) + db (S1^2 - S2^2))
       + J S_i x S_i.

Its coefficient expansion over C_a x C_b has the single-site blocks
h_{p0} = sqrt(6) (h, 0, 0, Q/sqrt(3), 0, d) (likewise h_{0p}) and the
exchange block h_11 = h_22 = h_33 = 2J.  The equation of motion in tensor
form splits into single-site rotations acting on the row and column indices
plus a constant exchange superoperator built from both structure-constant
tables; the latter is assembled once at import.

For both transverse drives rotating at the same frequency w (shared elliptic
argument) and zero anisotropy, conjugation by alpha1 x alpha1 maps the
problem onto a Hamiltonian whose only time dependence enters through
dn(w t|k); at k = 0 it is constant and the evolution is solved by one
eigendecomposition ("circular-drive exact solution").
"""

import math
from dataclasses import dataclass

import numpy as np

from . import elliptic, su3
from .ode import IntegratorConfig, integrate
from .qutrit import rotating_frame

_RT23 = math.sqrt(2.0 / 3.0)
_SQ2 = math.sqrt(2.0)
_SQ3 = math.sqrt(3.0)

S1, S2, S3 = su3.S1, su3.S2, su3.S3
_E9 = np.eye(9, dtype=complex)

# single-site generator blocks, (EMAT[a])[m, i] = e_{a i m}
_EMAT = np.array([su3.E_TABLE[a].T[1:, 1:] for a in range(9)])


def _exchange_superop():
    """Unit-exchange part of d(vec R)/dt as an 81x81 matrix (multiply by J)."""
    e3 = su3.E_TABLE[1:4, 1:, 1:]  # e[p, i, m] for p = 1..3
    g3 = su3.G_TABLE[1:4, 1:, 1:]
    w = np.zeros((9, 9, 9, 9))
    c = 2.0 * _RT23
    # row/column couplings into the one-site sectors
    w[1:, 0, 1:, 1:4] += c * np.transpose(e3, (2, 1, 0))  # target (m,0), source (i,p)
    w[0, 1:, 1:4, 1:] += c * np.transpose(e3, (2, 0, 1))  # target (0,m), source (p,i)
    # one-site sectors feeding the correlation block
    w[1:, 1:4, 1:, 0] += c * np.transpose(e3, (2, 0, 1))  # target (m,n<=3), source (i,0)
    w[1:4, 1:, 0, 1:] += c * np.transpose(e3, (0, 2, 1))  # target (m<=3,n), source (0,i)
    # correlation-correlation couplings through the symmetric table
    w[1:, 1:, 1:, 1:] += 2.0 * np.einsum("pim,pln->mnil", e3, g3)
    w[1:, 1:, 1:, 1:] += 2.0 * np.einsum("pin,plm->mnli", e3, g3)
    return w.reshape(81, 81)


_WJ = _exchange_superop()
_WJ.setflags(write=False)


@dataclass(frozen=True)
class PairConfig:
    """Drive and coupling parameters for the qutrit pair (frequency units).

    omega1/omega0 drive the first qutrit, varpi1/varpi0 the second; both
    transverse drives share the frequency omega and the elliptic modulus k.
    """

    omega1: float
    omega: float
    omega0: float
    varpi1: float
    varpi0: float
    k: float = 0.0
    Q: float = 0.0
    d: float = 0.0
    Qbar: float = 0.0
    dbar: float = 0.0
    J: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"elliptic modulus must lie in [0, 1], got {self.k}")

    @property
    def anisotropic(self):
        return any(v != 0.0 for v in (self.Q, self.d, self.Qbar, self.dbar))


def resonant_pair_config(h, omega1, k=0.0, J=0.0):
    """Both qutrits driven identically at exact resonance omega = omega0 = h."""
    return PairConfig(omega1=omega1, omega=h, omega0=h, varpi1=omega1, varpi0=h, k=k, J=J)


@dataclass(frozen=True)
class PairCoeffs:
    """Hamiltonian expansion coefficients: one-site 8-vectors (basis-matrix
    normalization, i.e. 2*(field, 0, 0, Q/sqrt3, 0, d)) plus the exchange J."""

    h1: np.ndarray
    h2: np.ndarray
    J: float


def _site_vector(h, Q, d):
    return 2.0 * np.array([h[0], h[1], h[2], 0.0, 0.0, Q / _SQ3, 0.0, d])


def pair_fields(t, cfg):
    """Instantaneous drive fields (h, hbar) of both qutrits."""
    sn, cn, dn = elliptic.sncndn(cfg.omega * t, cfg.k)
    h = (cfg.omega1 * cn, cfg.omega1 * sn, cfg.omega0 * dn)
    hb = (cfg.varpi1 * cn, cfg.varpi1 * sn, cfg.varpi0 * dn)
    return h, hb


def pair_coeffs(t, cfg):
    """Expansion coefficients of the pair Hamiltonian at time t."""
    h, hb = pair_fields(t, cfg)
    return PairCoeffs(
        h1=_site_vector(h, cfg.Q, cfg.d),
        h2=_site_vector(hb, cfg.Qbar, cfg.dbar),
        J=cfg.J,
    )


def _site_hamiltonian(h, Q, d):
    return (
        h[0] * S1
        + h[1] * S2
        + h[2] * S3
        + Q * (S3 @ S3 - (2.0 / 3.0) * su3.IDENTITY)
        + d * (S1 @ S1 - S2 @ S2)
    )


def exchange_operator():
    """The isotropic coupling S1 x S1 + S2 x S2 + S3 x S3."""
    return sum(np.kron(su3.C[i], su3.C[i]) for i in (1, 2, 3))


def hamiltonian2(cfg, t=0.0):
    """The 9x9 pair Hamiltonian at time t."""
    h, hb = pair_fields(t, cfg)
    return (
        np.kron(_site_hamiltonian(h, cfg.Q, cfg.d), su3.IDENTITY)
        + np.kron(su3.IDENTITY, _site_hamiltonian(hb, cfg.Qbar, cfg.dbar))
        + cfg.J * exchange_operator()
    )


def hamiltonian2_from_fields(h, hb, J, Q=0.0, d=0.0, Qbar=0.0, dbar=0.0):
    """Pair Hamiltonian for explicitly given instantaneous fields."""
    return (
        np.kron(_site_hamiltonian(h, Q, d), su3.IDENTITY)
        + np.kron(su3.IDENTITY, _site_hamiltonian(hb, Qbar, dbar))
        + J * exchange_operator()
    )


def bloch2_rhs(r, coeffs):
    """Time derivative of the pair coefficient tensor (9x9, entry [0,0] is 0)."""
    r = np.asarray(r, dtype=float)
    if r.shape != (9, 9):
        raise ValueError("pair coefficient tensor must be 9x9")
    m1 = np.einsum("a,ami->mi", coeffs.h1, _EMAT[1:])
    m2 = np.einsum("a,ami->mi", coeffs.h2, _EMAT[1:])
    dr = (coeffs.J * (_WJ @ r.reshape(81))).reshape(9, 9)
    dr[1:, :] += m1 @ r[1:, :]
    dr[:, 1:] += r[:, 1:] @ m2.T
    return dr


def pair_field_rhs(field1, field2, J, Q=0.0, d=0.0, Qbar=0.0, dbar=0.0):
    """Flattened-tensor derivative closure for arbitrary field callables."""
    a0_1 = 2.0 * (Q / _SQ3) * _EMAT[6] + 2.0 * d * _EMAT[8]
    a0_2 = 2.0 * (Qbar / _SQ3) * _EMAT[6] + 2.0 * dbar * _EMAT[8]
    e1, e2, e3 = _EMAT[1], _EMAT[2], _EMAT[3]

    def rhs(t, y):
        r = y.reshape(9, 9)
        h = field1(t)
        hb = field2(t)
        m1 = 2.0 * (h[0] * e1 + h[1] * e2 + h[2] * e3) + a0_1
        m2 = 2.0 * (hb[0] * e1 + hb[1] * e2 + hb[2] * e3) + a0_2
        dr = (J * (_WJ @ y)).reshape(9, 9)
        dr[1:, :] += m1 @ r[1:, :]
        dr[:, 1:] += r[:, 1:] @ m2.T
        return dr.reshape(81)

    return rhs


def consistent_pair_rhs(cfg):
    """Derivative closure for both qutrits under the shared elliptic drive."""
    a1 = 2.0 * cfg.omega1 * _EMAT[1]
    a2 = 2.0 * cfg.omega1 * _EMAT[2]
    a3 = 2.0 * cfg.omega0 * _EMAT[3]
    a0 = 2.0 * (cfg.Q / _SQ3) * _EMAT[6] + 2.0 * cfg.d * _EMAT[8]
    b1 = 2.0 * cfg.varpi1 * _EMAT[1]
    b2 = 2.0 * cfg.varpi1 * _EMAT[2]
    b3 = 2.0 * cfg.varpi0 * _EMAT[3]
    b0 = 2.0 * (cfg.Qbar / _SQ3) * _EMAT[6] + 2.0 * cfg.dbar * _EMAT[8]
    omega, k, J = cfg.omega, cfg.k, cfg.J

    def rhs(t, y):
        sn, cn, dn = elliptic.sncndn(omega * t, k)
        r = y.reshape(9, 9)
        m1 = cn * a1 + sn * a2 + dn * a3 + a0
        m2 = cn * b1 + sn * b2 + dn * b3 + b0
        dr = (J * (_WJ @ y)).reshape(9, 9)
        dr[1:, :] += m1 @ r[1:, :]
        dr[:, 1:] += r[:, 1:] @ m2.T
        return dr.reshape(81)

    return rhs


def integrate_pair(r0, cfg_or_rhs, t_span, icfg=None, discontinuities=()):
    """Integrate the 80-equation system from tensor or density initial data."""
    r0 = np.asarray(r0)
    if np.iscomplexobj(r0):
        r0 = tensor_from_density(r0)
    rhs = cfg_or_rhs if callable(cfg_or_rhs) else consistent_pair_rhs(cfg_or_rhs)
    if icfg is None:
        icfg = IntegratorConfig()
    return integrate(rhs, r0.reshape(81), t_span, icfg, discontinuities)


def tensor_from_density(rho):
    """Coefficient tensor R_ab = (3/2) Tr(rho C_a x C_b)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (9, 9):
        raise ValueError("expected a 9x9 pair density matrix")
    t = rho.reshape(3, 3, 3, 3)
    return 1.5 * np.einsum("ikjl,aji,blk->ab", t, su3.C, su3.C).real


def density_from_tensor(r):
    """Density matrix varrho = (1/6) R_ab C_a x C_b."""
    r = np.asarray(r, dtype=float)
    if r.shape != (9, 9):
        raise ValueError("pair coefficient tensor must be 9x9")
    rho4 = np.einsum("ab,aij,bkl->ikjl", r, su3.C, su3.C) / 6.0
    return rho4.reshape(9, 9)


def ghz_pair_state():
    """The maximally entangled permutation-symmetric pair vector."""
    psi = np.zeros(9, dtype=complex)
    psi[[0, 4, 8]] = 1.0 / _SQ3
    return psi


def ghz_pair_density():
    psi = ghz_pair_state()
    return np.outer(psi, psi.conj())


def energy(r, coeffs):
    """Pair energy from the coefficient tensor, equal to Tr(H2 varrho)."""
    r = np.asarray(r, dtype=float)
    h10 = (math.sqrt(6.0) / 2.0) * coeffs.h1  # sqrt(6) (h, 0, 0, Q/sqrt3, 0, d)
    h01 = (math.sqrt(6.0) / 2.0) * coeffs.h2
    return float(
        (h10 @ r[1:, 0] + h01 @ r[0, 1:] + 2.0 * coeffs.J * (r[1, 1] + r[2, 2] + r[3, 3])) / 3.0
    )


def transformed_hamiltonian(cfg):
    """Rotating-frame pair Hamiltonian (time independent at k = 0).

    Requires vanishing anisotropy: the anisotropy terms do not commute with
    the frame transform and would leave residual time dependence.
    """
    if cfg.anisotropic:
        raise ValueError("the frame-transformed Hamiltonian requires zero anisotropy")
    w1 = cfg.omega1 / _SQ2
    v1 = cfg.varpi1 / _SQ2
    j = cfg.J
    dw = cfg.omega0 - cfg.omega  # detuning of the first qutrit
    dv = cfg.varpi0 - cfg.omega  # detuning of the second qutrit
    h = np.array(
        [
            [j + dw + dv, v1, 0, w1, 0, 0, 0, 0, 0],
            [v1, dw, v1, j, w1, 0, 0, 0, 0],
            [0, v1, dw - dv - j, 0, j, w1, 0, 0, 0],
            [w1, j, 0, dv, v1, 0, w1, 0, 0],
            [0, w1, j, v1, 0, v1, j, w1, 0],
            [0, 0, w1, 0, v1, -dv, 0, j, w1],
            [0, 0, 0, w1, j, 0, dv - dw - j, v1, 0],
            [0, 0, 0, 0, w1, j, v1, -dw, v1],
            [0, 0, 0, 0, 0, w1, 0, v1, j - dw - dv],
        ],
        dtype=complex,
    )
    return h


def exact_solution_circular(rho0, t, cfg):
    """Exact pair state at time t for the circular drive (k = 0, no anisotropy)."""
    if cfg.k != 0.0:
        raise ValueError("the eigendecomposition solution requires k = 0")
    if cfg.anisotropic:
        raise ValueError("the eigendecomposition solution requires zero anisotropy")
    ht = transformed_hamiltonian(cfg)
    evals, vecs = np.linalg.eigh(ht)
    u = (vecs * np.exp(-1j * evals * t)) @ vecs.conj().T
    alpha1 = rotating_frame(t, 0.0, cfg.omega)
    alpha2 = np.kron(alpha1, alpha1)
    inner = u @ np.asarray(rho0, dtype=complex) @ u.conj().T
    return alpha2.conj().T @ inner @ alpha2


def resonant_pair_correlations(t, J, omega1, h, k):
    """Closed-form coefficient tensor for the maximally entangled initial pair.

    Both qutrits driven identically at exact resonance (shared frequency h,
    equal transverse amplitudes omega1, modulus k).  The tensor stays
    symmetric, R_ab = R_ba; entries below fill the upper triangle and mirror.
    """
    sn, cn, _ = elliptic.sncndn(h * t, k)
    th = omega1 * t
    cj = math.cos(3.0 * J * t)
    sj = math.sin(3.0 * J * t)
    jt_half_sq = math.sin(1.5 * J * t) ** 2
    c2 = math.cos(2.0 * th)
    s2 = math.sin(2.0 * th)
    c4 = math.cos(4.0 * th)
    s4 = math.sin(4.0 * th)
    cth = math.cos(th)
    sth = math.sin(th)
    cth2 = cth * cth
    cm = math.cos((3.0 * J - 2.0 * omega1) * t)
    cp = math.cos((3.0 * J + 2.0 * omega1) * t)
    sn2 = sn * sn
    cn2 = cn * cn
    x = cn2 - sn2
    y = cn * sn

    r = np.zeros((9, 9))
    r[0, 0] = 1.0
    # single-site row (mirrored into the column)
    r[0, 4] = (8.0 / 3.0) * _RT23 * cth2 * y * jt_half_sq
    r[0, 5] = -(4.0 / 3.0) * _RT23 * cn * jt_half_sq * s2
    r[0, 6] = (2.0 * _SQ2 / 9.0) * (3.0 * c2 - 1.0) * jt_half_sq
    r[0, 7] = (4.0 / 3.0) * _RT23 * sn * s2 * jt_half_sq
    r[0, 8] = (4.0 / 3.0) * _RT23 * cth2 * (1.0 - 2.0 * sn2) * jt_half_sq
    # first correlation row
    r[1, 1] = (
        16.0 + 12.0 * (cj + 2.0) * x * cth2 + 2.0 * cj - 3.0 * cm - 12.0 * c2 - 3.0 * cp
    ) / 36.0
    r[1, 2] = (2.0 / 3.0) * (cj + 2.0) * y * cth2
    r[1, 3] = (1.0 / 3.0) * (cj + 2.0) * sn * s2
    r[1, 4] = (1.0 / 3.0) * sn * sj * s2
    r[1, 5] = (2.0 * x * cth2 + 3.0 * c2 - 1.0) * sj / 6.0
    r[1, 6] = cn * sj * s2 / _SQ3
    r[1, 7] = -(2.0 / 3.0) * cth2 * y * sj
    r[1, 8] = r[1, 6] / _SQ3
    # second row; several entries are fixed multiples of earlier ones
    r[2, 2] = (
        6.0 * (cj + 2.0) * (-x) * cth2 + cj - 3.0 * (cj + 2.0) * c2 + 8.0
    ) / 18.0
    r[2, 3] = -(1.0 / 3.0) * (cj + 2.0) * cn * s2
    r[2, 4] = r[1, 6] / _SQ3
    r[2, 5] = -r[1, 7]
    r[2, 6] = _SQ3 * r[1, 4]
    r[2, 7] = (2.0 * x * cth2 - 3.0 * c2 + 1.0) * sj / 6.0
    r[2, 8] = -r[2, 6] / _SQ3
    # third row
    r[3, 3] = (-2.0 * cj + 3.0 * cm + 12.0 * c2 + 3.0 * cp + 2.0) / 18.0
    r[3, 4] = -(2.0 / 3.0) * cth2 * x * sj
    r[3, 5] = -r[1, 4]
    r[3, 6] = 0.0
    r[3, 7] = -(1.0 / 3.0) * cn * sj * s2
    r[3, 8] = (4.0 / 3.0) * cth2 * y * sj
    # fourth row
    r[4, 4] = (
        -72.0 * (1.0 - 8.0 * cn2 * sn2) * cth2 * cth2
        + 8.0 * cj
        - 12.0 * (2.0 * cj + 1.0) * c2
        + 9.0 * c4
        + 19.0
    ) / 72.0
    r[4, 5] = (
        sn
        * (
            24.0 * (sn2 - 3.0 * cn2) * sth * cth**3
            + 2.0 * (2.0 * cj + 1.0) * s2
            - 3.0 * s4
        )
        / 12.0
    )
    r[4, 6] = -(2.0 / (3.0 * _SQ3)) * cth2 * (2.0 * cj - 9.0 * c2 + 7.0) * y
    r[4, 7] = (
        cn
        * (
            -24.0 * (cn2 - 3.0 * sn2) * sth * cth**3
            - 2.0 * (2.0 * cj + 1.0) * s2
            + 3.0 * s4
        )
        / 12.0
    )
    r[4, 8] = 4.0 * cth2 * cth2 * y * x
    # fifth row
    r[5, 5] = (
        6.0 * (cj + 6.0 * c2 - 4.0) * (-x) * cth2
        - cj
        + 3.0 * (cj + 2.0) * c2
        - 9.0 * c4
        + 1.0
    ) / 18.0
    r[5, 6] = cn * (4.0 * jt_half_sq * s2 - 9.0 * s4) / (6.0 * _SQ3)
    r[5, 7] = (2.0 * cj + cm + 4.0 * c2 + 6.0 * c4 + cp - 2.0) * y / 6.0
    r[5, 8] = (
        cn
        * (
            -24.0 * (cn2 - 3.0 * sn2) * sth * cth**3
            + 2.0 * (2.0 * cj + 1.0) * s2
            - 3.0 * s4
        )
        / 12.0
    )
    # sixth row
    r[6, 6] = (
        -4.0 * cj + 6.0 * cm - 12.0 * c2 + 27.0 * c4 + 6.0 * cp + 13.0
    ) / 36.0
    r[6, 7] = sn * (2.0 * (cj - 1.0) * s2 + 9.0 * s4) / (6.0 * _SQ3)
    r[6, 8] = cth2 * (-2.0 * cj + 9.0 * c2 - 7.0) * x / (3.0 * _SQ3)
    # seventh and eighth rows
    r[7, 7] = (
        (cj - 1.0) * (3.0 * cn2 - 3.0 * sn2 - 1.0)
        + 9.0 * c4 * (cn2 - sn2 - 1.0)
        + 3.0 * (cj + 2.0) * c2 * (cn2 - sn2 + 1.0)
    ) / 18.0
    r[7, 8] = (
        sn * (6.0 * (3.0 * cn2 - sn2) * cth2 + 2.0 * cj - 3.0 * c2 + 1.0) * s2 / 6.0
    )
    r[8, 8] = (
        72.0 * (1.0 - 8.0 * cn2 * sn2) * cth2 * cth2
        + 8.0 * cj
        - 12.0 * (2.0 * cj + 1.0) * c2
        + 9.0 * c4
        + 19.0
    ) / 72.0

    return r + np.triu(r, 1).T


def heaviside(x):
    """Unit step with the theta(0) = 1 convention used at pulse edges."""
    return 1.0 if x >= 0.0 else 0.0


#: times where the pulse-train field switches; integrations restart here
PULSE_BREAKS = (17.0, 40.0, 57.0, 60.0)


def impulse_field(t):
    """Longitudinal pulse-train fields (h, -h) for the blocking scenario.

    The envelope is on over [0, 17] and [40, 57] with amplitude 2 and from
    t = 60 on with amplitude 4, off in between; edges follow theta(0) = 1.
    """
    h3 = 2.0 * (
        heaviside((t - 17.0) * (t - 60.0))
        + heaviside((40.0 - t) * (57.0 - t) * (t - 60.0))
    )
    return (0.0, 0.0, h3), (0.0, 0.0, -h3)
