"""Self-verification suites behind the ``verify`` CLI command.

Each suite returns a list of (name, value, threshold) checks where a check
passes when value <= threshold.  Suites are deliberately quick (seconds);
the exhaustive cross-validation lives in the test suite.
"""

import numpy as np

from . import biqutrit as bq
from . import chain as chain_mod
from . import elliptic, entanglement as ent, qutrit, su3
from .ode import IntegratorConfig

SUITES = ("algebra", "elliptic", "oracles", "invariants", "all")


def suite_algebra():
    report = su3.verify_algebra()
    return [(f"algebra.{name}", value, 1e-13) for name, value in report.items()]


def suite_elliptic():
    checks = []
    rng = np.random.default_rng(20240811)
    worst_id1 = worst_id2 = 0.0
    for k in (0.0, 0.2, 0.5, 0.85, 0.99):
        u = rng.uniform(-40.0, 40.0, 2000)
        sn, cn, dn = elliptic._sncndn_array(u, k)
        worst_id1 = max(worst_id1, float(np.max(np.abs(sn**2 + cn**2 - 1.0))))
        worst_id2 = max(worst_id2, float(np.max(np.abs(dn**2 + (k * sn) ** 2 - 1.0))))
    checks.append(("elliptic.sn2_cn2", worst_id1, 1e-12))
    checks.append(("elliptic.dn2_k2sn2", worst_id2, 1e-12))

    u = rng.uniform(-5.0, 5.0, 200)
    sn0, cn0, dn0 = elliptic._sncndn_array(u, 0.0)
    lim0 = max(
        float(np.max(np.abs(sn0 - np.sin(u)))),
        float(np.max(np.abs(cn0 - np.cos(u)))),
        float(np.max(np.abs(dn0 - 1.0))),
    )
    sn1, cn1, dn1 = elliptic._sncndn_array(u, 1.0)
    lim1 = max(
        float(np.max(np.abs(sn1 - np.tanh(u)))),
        float(np.max(np.abs(cn1 - 1.0 / np.cosh(u)))),
        float(np.max(np.abs(dn1 - 1.0 / np.cosh(u)))),
    )
    checks.append(("elliptic.k0_limit", lim0, 1e-14))
    checks.append(("elliptic.k1_limit", lim1, 1e-14))

    k = 0.85
    bigk = elliptic.complete_K(k)
    u = rng.uniform(0.0, 4.0 * bigk, 500)
    sn_a, cn_a, dn_a = elliptic._sncndn_array(u, k)
    sn2k, cn2k, dn2k = elliptic._sncndn_array(u + 2.0 * bigk, k)
    sn4k, cn4k, _ = elliptic._sncndn_array(u + 4.0 * bigk, k)
    period = max(
        float(np.max(np.abs(dn2k - dn_a))),
        float(np.max(np.abs(sn2k + sn_a))),
        float(np.max(np.abs(sn4k - sn_a))),
        float(np.max(np.abs(cn4k - cn_a))),
    )
    checks.append(("elliptic.periods", period, 1e-12))
    checks.append(("elliptic.K0", abs(elliptic.complete_K(0.0) - np.pi / 2.0), 1e-15))
    return checks


def suite_oracles():
    checks = []
    ts = np.linspace(0.0, 20.0, 81)
    icfg = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-11)

    # resonance propagator vs the coefficient-equation integration, deformed drive
    cfg = qutrit.FieldConfig(omega1=1.0 / 3.0, omega=1.0, omega0=1.0, k=0.85)
    rho0 = np.diag([0.0, 0.0, 1.0]).astype(complex)
    traj = qutrit.integrate_bloch(rho0, cfg, (0.0, 20.0), icfg)
    worst = 0.0
    for t, r8 in zip(ts, traj.sample(ts)):
        num = qutrit.density_from_bloch(np.concatenate([[1.0], r8]))
        worst = max(worst, float(np.max(np.abs(num - qutrit.resonance_solution(rho0, t, cfg)))))
    checks.append(("oracle.single_resonance", worst, 1e-8))

    # detuned circular closed form vs integration
    cfg2 = qutrit.FieldConfig(omega1=0.25, omega=1.0, omega0=1.3, k=0.0)
    traj2 = qutrit.integrate_bloch(rho0, cfg2, (0.0, 20.0), icfg)
    worst = 0.0
    for t, r8 in zip(ts, traj2.sample(ts)):
        num = qutrit.density_from_bloch(np.concatenate([[1.0], r8]))
        worst = max(
            worst, float(np.max(np.abs(num - qutrit.detuned_closed_form(t, 0.3, 0.25, 1.0))))
        )
    checks.append(("oracle.single_detuned", worst, 1e-8))

    # pair: closed-form correlation tensor vs eigendecomposition vs integration
    j, w1, h = 0.1, 0.3, 1.0
    rho_g = bq.ghz_pair_density()
    cfg0 = bq.resonant_pair_config(h, w1, k=0.0, J=j)
    worst = 0.0
    for t in ts:
        rc = bq.resonant_pair_correlations(t, j, w1, h, 0.0)
        re = bq.tensor_from_density(bq.exact_solution_circular(rho_g, t, cfg0))
        worst = max(worst, float(np.max(np.abs(rc - re))))
    checks.append(("oracle.pair_closed_vs_exact", worst, 1e-10))

    cfg85 = bq.resonant_pair_config(h, w1, k=0.85, J=j)
    traj3 = bq.integrate_pair(bq.tensor_from_density(rho_g), cfg85, (0.0, 20.0), icfg)
    worst = 0.0
    worst_m = 0.0
    for t, y in zip(ts, traj3.sample(ts)):
        r = y.reshape(9, 9)
        worst = max(worst, float(np.max(np.abs(bq.resonant_pair_correlations(t, j, w1, h, 0.85) - r))))
        worst_m = max(worst_m, abs(ent.m_sm(r) - ent.m_sm_closed_forms("ghz", t, j)))
    checks.append(("oracle.pair_closed_vs_ode", worst, 1e-8))
    checks.append(("oracle.m_sm_vs_closed", worst_m, 1e-8))
    return checks


def suite_invariants():
    checks = []
    icfg = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-11)
    rng = np.random.default_rng(7)
    psi = rng.normal(size=3) + 1j * rng.normal(size=3)
    psi /= np.linalg.norm(psi)
    cfg = qutrit.FieldConfig(omega1=0.3, omega=1.0, omega0=1.7, k=0.85, Q=0.1, d=0.05)
    traj = qutrit.integrate_bloch(np.outer(psi, psi.conj()), cfg, (0.0, 30.0), icfg)
    ts = np.linspace(0.0, 30.0, 61)
    inv = np.array(
        [qutrit.motion_invariants(np.concatenate([[1.0], r])) for r in traj.sample(ts)]
    )
    checks.append(("invariant.bloch_length", float(np.max(np.abs(inv[:, 0] - np.sqrt(2.0)))), 1e-8))
    checks.append(("invariant.pure_quadric_1", float(np.max(np.abs(inv[:, 1]))), 1e-8))
    checks.append(("invariant.pure_quadric_2", float(np.max(np.abs(inv[:, 2]))), 1e-8))
    checks.append(("invariant.determinant", float(np.max(np.abs(inv[:, 3]))), 1e-8))

    cfg85 = bq.resonant_pair_config(1.0, 0.3, k=0.85, J=0.1)
    traj2 = bq.integrate_pair(
        bq.tensor_from_density(bq.ghz_pair_density()), cfg85, (0.0, 30.0), icfg
    )
    tensors = traj2.sample(np.linspace(0.0, 30.0, 61)).reshape(-1, 9, 9)
    lengths = np.sqrt(np.sum(tensors**2, axis=(1, 2)) - 1.0)
    checks.append(
        ("invariant.pair_bloch_length", float(np.max(np.abs(lengths - 2.0 * np.sqrt(2.0)))), 1e-8)
    )
    sym = float(np.max(np.abs(tensors - tensors.transpose(0, 2, 1))))
    checks.append(("invariant.pair_symmetry", sym, 1e-8))

    ht = bq.transformed_hamiltonian(cfg85)
    j, w1 = 0.1, 0.3
    expected = np.sort(
        [-2 * j, -j, j, j - 2 * w1, -j - w1, j - w1, -j + w1, j + w1, j + 2 * w1]
    )
    spectrum = ent.hermitian_eigenvalues(ht)
    checks.append(
        ("invariant.frame_spectrum", float(np.max(np.abs(spectrum - expected))), 1e-12)
    )

    r1, r3 = chain_mod.reduced_eigenvalues_analytic(4, np.linspace(0.0, 20.0, 500))
    checks.append(("invariant.chain_sum_rule", float(np.max(np.abs(2 * r1 + r3 - 1.0))), 1e-12))
    return checks


def run_suite(name):
    if name == "algebra":
        return suite_algebra()
    if name == "elliptic":
        return suite_elliptic()
    if name == "oracles":
        return suite_oracles()
    if name == "invariants":
        return suite_invariants()
    if name == "all":
        return suite_algebra() + suite_elliptic() + suite_oracles() + suite_invariants()
    raise ValueError(f"unknown verification suite {name!r}")
