"""Single-qutrit dynamics in a time-dependent magnetic field.

State representation
--------------------
A qutrit state is carried either as a 3x3 complex density matrix or as the
real 9-vector R with R[0] = 1 and

    rho = R_alpha C_alpha / sqrt(6),   R_alpha = sqrt(3/2) Tr(rho C_alpha).

With this normalization the Bloch length b = |R[1:]| equals sqrt(2) exactly
for pure states.  (Loose statements of the inverse map that drop the
sqrt(3/2) factor are inconsistent with the explicit matrix expansion above;
this module keeps the expansion exact so the two conversions are mutual
inverses.)

The Hamiltonian is

    H = h1 S1 + h2 S2 + h3 S3 + Q (S3^2 - 2/3 E) + d (S1^2 - S2^2)

whose coefficient vector over the operator basis is
h = 2 (h1, h2, h3, 0, 0, Q/sqrt(3), 0, d).  The equation of motion becomes
the closed real system dR_l/dt = e_ijl h_i R_j.

Drive field
-----------
The "consistent" drive sweeps a whole family of pulse shapes with one
modulus k:

    h(t) = (w1 cn(w t|k), w1 sn(w t|k), w0 dn(w t|k)),

circularly polarized at k = 0 and an exponential impulse at k = 1.  At exact
resonance (w = w0, no anisotropy) the evolution is solved in closed form by
a diagonal rotating-frame transform followed by a rotation about S1; the
populations it predicts are independent of k.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import elliptic, su3
from .ode import IntegratorConfig, integrate

_SQ6 = math.sqrt(6.0)
_RT32 = math.sqrt(1.5)
_RT23 = math.sqrt(2.0 / 3.0)

# field-component generator blocks: dR_l/dt = sum_a h_a (EMAT[a])[l, j] R_j
_EMAT = np.array([su3.E_TABLE[a].T[1:, 1:] for a in range(9)])

S1 = su3.S1
S2 = su3.S2
S3 = su3.S3
_S1SQ = (S1 @ S1).real


@dataclass(frozen=True)
class FieldConfig:
    """Drive parameters, all in angular-frequency units."""

    omega1: float  # transverse amplitude
    omega: float  # drive frequency
    omega0: float  # Larmor frequency (longitudinal amplitude)
    k: float = 0.0  # elliptic modulus of the drive
    Q: float = 0.0  # axial anisotropy
    d: float = 0.0  # transverse anisotropy

    def __post_init__(self):
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"elliptic modulus must lie in [0, 1], got {self.k}")

    @property
    def detuning(self):
        return self.omega0 - self.omega


def hamiltonian(h1, h2, h3, Q=0.0, d=0.0):
    """The 3x3 qutrit Hamiltonian for field (h1, h2, h3) and anisotropies Q, d."""
    return (
        h1 * S1
        + h2 * S2
        + h3 * S3
        + Q * (S3 @ S3 - (2.0 / 3.0) * su3.IDENTITY)
        + d * (S1 @ S1 - S2 @ S2)
    )


def hamiltonian_coeffs(h1, h2, h3, Q=0.0, d=0.0):
    """Coefficient 8-vector of the Hamiltonian over the operator basis."""
    return 2.0 * np.array([h1, h2, h3, 0.0, 0.0, Q / math.sqrt(3.0), 0.0, d])


def density_from_bloch(r):
    """Reconstruct the density matrix from the 9-component coefficient vector."""
    r = np.asarray(r, dtype=float)
    if r.shape != (9,):
        raise ValueError("coefficient vector must have 9 components")
    return np.einsum("a,aij->ij", r, su3.C) / _SQ6


def bloch_from_density(rho):
    """Project a density matrix onto the operator basis (R[0] comes out as 1)."""
    rho = np.asarray(rho, dtype=complex)
    if abs(rho.trace() - 1.0) > 1e-10:
        raise ValueError(f"density matrix trace {rho.trace():.12g} is not 1")
    return _RT32 * np.einsum("ij,aji->a", rho, su3.C).real


def bloch_basis_state(level):
    """Coefficient vector of the pure basis state |level>, level in {1, 0, -1}."""
    pos = {1: 0, 0: 1, -1: 2}[level]
    rho = np.zeros((3, 3), dtype=complex)
    rho[pos, pos] = 1.0
    return bloch_from_density(rho)


def consistent_field(t, cfg):
    """Drive field (h1, h2, h3) at time t."""
    sn, cn, dn = elliptic.sncndn(cfg.omega * t, cfg.k)
    return cfg.omega1 * cn, cfg.omega1 * sn, cfg.omega0 * dn


def bloch_rhs(r, hcoeffs):
    """Right-hand side of the coefficient equations, as the 8 dynamic components.

    ``r`` may be the full 9-vector (leading entry ignored as the constant 1)
    or just the 8 dynamic components.
    """
    r = np.asarray(r, dtype=float)
    r8 = r[1:] if r.shape == (9,) else r
    m = np.einsum("a,alj->lj", hcoeffs, _EMAT[1:])
    return m @ r8


def field_rhs(cfg):
    """Closure computing the 8-component coefficient derivative under cfg's drive."""
    a1 = 2.0 * cfg.omega1 * _EMAT[1]
    a2 = 2.0 * cfg.omega1 * _EMAT[2]
    a3 = 2.0 * cfg.omega0 * _EMAT[3]
    a0 = 2.0 * (cfg.Q / math.sqrt(3.0)) * _EMAT[6] + 2.0 * cfg.d * _EMAT[8]
    omega, k = cfg.omega, cfg.k

    def rhs(t, r8):
        sn, cn, dn = elliptic.sncndn(omega * t, k)
        return (cn * a1 + sn * a2 + dn * a3 + a0) @ r8

    return rhs


def integrate_bloch(r0, cfg, t_span, icfg=None, discontinuities=()):
    """Integrate the coefficient equations from the 9-vector (or density) r0."""
    r0 = np.asarray(r0)
    if r0.ndim == 2:
        r0 = bloch_from_density(r0)
    if icfg is None:
        icfg = IntegratorConfig()
    return integrate(field_rhs(cfg), r0[1:], t_span, icfg, discontinuities)


def expm_s1(theta):
    """exp(-i theta S1), evaluated from the spin-1 identity S1^3 = S1."""
    return (
        su3.IDENTITY
        - 1j * math.sin(theta) * S1
        + (math.cos(theta) - 1.0) * _S1SQ
    )


def rotating_frame(t, k, omega):
    """Diagonal frame transform diag(f, 1, 1/f) with f = cn + i sn at (w t|k)."""
    sn, cn, _ = elliptic.sncndn(omega * t, k)
    f = cn + 1j * sn
    return np.diag([f, 1.0 + 0j, 1.0 / f])


def resonance_solution(rho0, t, cfg):
    """Exact state at time t for the resonant drive (w = w0, Q = d = 0).

    rho(t) = alpha1^-1 exp(-i w1 t S1) rho0 exp(i w1 t S1) alpha1, valid for
    any modulus k.  The diagonal of the result is independent of k.
    """
    scale = max(abs(cfg.omega), abs(cfg.omega0), 1.0)
    if abs(cfg.detuning) > 1e-12 * scale:
        raise ValueError(
            f"resonance solution requires omega == omega0, detuning={cfg.detuning:g}"
        )
    if cfg.Q != 0.0 or cfg.d != 0.0:
        raise ValueError("resonance solution requires zero anisotropy")
    u = expm_s1(cfg.omega1 * t)
    alpha = rotating_frame(t, cfg.k, cfg.omega)
    inner = u @ np.asarray(rho0, dtype=complex) @ u.conj().T
    return alpha.conj().T @ inner @ alpha


def free_rotation_term(rho0, t, omega1):
    """Zeroth term of the detuning expansion: rotation about S1 alone."""
    u = expm_s1(omega1 * t)
    return u @ np.asarray(rho0, dtype=complex) @ u.conj().T


def _adaptive_simpson(f, a, b, tol, depth=30):
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_recurse(f, a, b, fa, fm, fb, whole, tol, depth)


def _simpson_recurse(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    flm, frm = f(0.5 * (a + m)), f(0.5 * (m + b))
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or np.max(np.abs(delta)) <= 15.0 * tol:
        return left + right + delta / 15.0
    return _simpson_recurse(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) + _simpson_recurse(
        f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1
    )


def perturbation_term(order, r_prev, t, cfg, quad_tol=1e-10):
    """Next term of the detuning power series at time t.

    ``r_prev`` is the previous term as a callable s -> 3x3 matrix; the new
    term is the interaction-picture integral of dn-weighted commutators with
    S3, carrying one factor of the detuning.  Evaluated by adaptive Simpson
    quadrature (the integrand is smooth and bounded).
    """
    if order < 1:
        raise ValueError("series order must be >= 1")
    delta = cfg.detuning
    if delta == 0.0 or t == 0.0:
        return np.zeros((3, 3), dtype=complex)
    w1, omega, k = cfg.omega1, cfg.omega, cfg.k

    def integrand(s):
        # exp(-i w1 (t-s) S1) X exp(+i w1 (t-s) S1)
        u = expm_s1(w1 * (t - s))
        _, _, dn = elliptic.sncndn(omega * s, k)
        r = r_prev(s)
        return u @ (dn * (S3 @ r - r @ S3)) @ u.conj().T

    return -1j * delta * _adaptive_simpson(integrand, 0.0, t, quad_tol)


def detuned_closed_form(t, delta, omega1, omega):
    """Closed-form state at time t for the circular drive from the lowest level.

    Valid for k = 0 and any detuning delta = w0 - w; Rabi frequency
    Omega = sqrt(w1^2 + delta^2).  The state stays pure for all t.
    """
    big = math.hypot(omega1, delta)
    if big == 0.0:
        rho = np.zeros((3, 3), dtype=complex)
        rho[2, 2] = 1.0
        return rho
    half = 0.5 * big * t
    s, c = math.sin(half), math.cos(half)
    s_full, c_full = math.sin(big * t), math.cos(big * t)
    a = 2.0 * delta**2 + omega1**2 * (1.0 + c_full)
    ph1 = np.exp(-1j * omega * t)
    ph2 = np.exp(-2j * omega * t)
    b4 = big**4
    rho = np.empty((3, 3), dtype=complex)
    rho[0, 0] = omega1**4 * s**4 / b4
    rho[0, 1] = -(math.sqrt(2.0) * omega1**3 / b4) * s**3 * ph1 * (1j * big * c + delta * s)
    rho[0, 2] = (
        -(omega1**2 / (2.0 * b4))
        * s**2
        * ph2
        * (omega1**2 - 2j * delta * big * s_full + (2.0 * delta**2 + omega1**2) * c_full)
    )
    rho[1, 1] = omega1**2 * s**2 * a / b4
    rho[1, 2] = (
        -(omega1 / (math.sqrt(2.0) * b4))
        * ph1
        * a
        * (delta * s**2 + 0.5j * big * s_full)
    )
    rho[2, 2] = a**2 / (4.0 * b4)
    rho[1, 0] = np.conj(rho[0, 1])
    rho[2, 0] = np.conj(rho[0, 2])
    rho[2, 1] = np.conj(rho[1, 2])
    return rho


def resonant_closed_form(which, t, omega1, k, omega=1.0):
    """Closed-form resonant states for three reference initial conditions.

    which = 'stochastic' : the balanced pure superposition of all three levels
    which = 'middle'     : the middle level |0>
    which = 'coherent'   : the dephased mixture diag(1/4, 1/2, 1/4) built from
                           the (1/2, 1/sqrt(2), 1/2) amplitude pattern; it is
                           mixed for all t, only the first two stay pure.

    ``omega`` is the shared drive/Larmor frequency entering the frame factor
    f = cn(w t|k) + i sn(w t|k); the level populations do not depend on it.
    """
    sn, cn, _ = elliptic.sncndn(omega * t, k)
    f = cn + 1j * sn
    c2 = math.cos(2.0 * omega1 * t)
    s2 = math.sin(2.0 * omega1 * t)
    s1sq = math.sin(omega1 * t) ** 2
    rho = np.empty((3, 3), dtype=complex)
    if which == "stochastic":
        rho[0, 0] = rho[2, 2] = (c2 + 3.0) / 12.0
        rho[1, 1] = (3.0 - c2) / 6.0
        rho[0, 1] = (1j * math.sqrt(2.0) * s2 + 4.0) / (12.0 * f)
        rho[0, 2] = (c2 + 3.0) / (12.0 * f * f)
        rho[1, 2] = (4.0 - 1j * math.sqrt(2.0) * s2) / (12.0 * f)
    elif which == "middle":
        rho[0, 0] = rho[2, 2] = 0.5 * s1sq
        rho[1, 1] = math.cos(omega1 * t) ** 2
        rho[0, 1] = -1j * s2 / (2.0 * math.sqrt(2.0) * f)
        rho[0, 2] = 0.5 * s1sq / (f * f)
        rho[1, 2] = 1j * s2 / (2.0 * math.sqrt(2.0) * f)
    elif which == "coherent":
        rho[0, 0] = rho[2, 2] = (5.0 - c2) / 16.0
        rho[1, 1] = (c2 + 3.0) / 8.0
        rho[0, 1] = -1j * s2 / (8.0 * math.sqrt(2.0) * f)
        rho[0, 2] = s1sq / (8.0 * f * f)
        rho[1, 2] = 1j * s2 / (8.0 * math.sqrt(2.0) * f)
    else:
        raise ValueError(f"unknown initial-state label {which!r}")
    rho[1, 0] = np.conj(rho[0, 1])
    rho[2, 0] = np.conj(rho[0, 2])
    rho[2, 1] = np.conj(rho[1, 2])
    return rho


def motion_invariants(r):
    """Conserved quantities of the coefficient vector r (9 components).

    Returns (b, quad1, quad2, det):  the Bloch length, the two quadric
    combinations that vanish identically on pure states, and the density
    matrix determinant expressed through traces (a motion invariant for any
    unitary evolution).
    """
    r = np.asarray(r, dtype=float)
    b = float(np.linalg.norm(r[1:]))
    quad1 = (
        r[1] ** 2
        - r[2] ** 2
        + r[5] ** 2
        - r[7] ** 2
        - 2.0 * _RT23 * (1.0 - math.sqrt(2.0) * r[6]) * r[8]
    )
    quad2 = r[5] * r[7] - r[1] * r[2] + (2.0 / math.sqrt(3.0)) * (
        1.0 / math.sqrt(2.0) - r[6]
    ) * r[4]
    rho = density_from_bloch(r)
    rho2 = rho @ rho
    det = float(
        ((rho2 @ rho).trace().real - rho2.trace().real) / 3.0 + (2.0 - b * b) / 18.0
    )
    return b, float(quad1), float(quad2), det


def populations(r):
    """(P+, P0, P-) level populations from the coefficient vector."""
    r = np.asarray(r)
    p_plus = 1.0 / 3.0 + r[..., 3] / _SQ6 + r[..., 6] / (3.0 * math.sqrt(2.0))
    p_zero = 1.0 / 3.0 - math.sqrt(2.0) * r[..., 6] / 3.0
    return p_plus, p_zero, 1.0 - p_plus - p_zero


def spin_expectations(r):
    """Physical spin components <S_x>, <S_y>, <S_z> of the coefficient vector."""
    r = np.asarray(r)
    return _RT23 * r[..., 1], _RT23 * r[..., 2], _RT23 * r[..., 3]


def averaged_populations(cfg, tau, omega0_over_omega, icfg=None, sample_dt=None):
    """Time-averaged (P+, P0) from the lowest level, per normalized Larmor point.

    For each x in ``omega0_over_omega`` the drive is run with w0 = x * w over
    [0, tau] and the upper/middle populations are averaged by the trapezoid
    rule on the integrator's dense output.
    """
    if tau <= 0.0:
        raise ValueError("averaging horizon tau must be positive")
    grid = np.atleast_1d(np.asarray(omega0_over_omega, dtype=float))
    if sample_dt is None:
        sample_dt = (2.0 * math.pi / cfg.omega) / 256.0
    out = np.empty((grid.size, 2))
    for i, x in enumerate(grid):
        out[i] = _average_point(cfg, float(x), tau, icfg, sample_dt)
    return out


def _average_point(cfg, x, tau, icfg, sample_dt):
    from dataclasses import replace

    cfg_x = replace(cfg, omega0=x * cfg.omega)
    traj = integrate_bloch(bloch_basis_state(-1), cfg_x, (0.0, tau), icfg)
    ts = np.linspace(0.0, tau, max(int(tau / sample_dt), 16) + 1)
    r8 = traj.sample(ts)
    r9 = np.concatenate([np.ones((len(ts), 1)), r8], axis=1)
    p_plus, p_zero, _ = populations(r9)
    return np.trapz(p_plus, ts) / tau, np.trapz(p_zero, ts) / tau
