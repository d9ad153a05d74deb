"""Scenario computations behind the CLI figure commands.

Each ``run_figN`` returns ``(header, rows)`` where rows is a list of float
lists; the CLI serializes them to CSV.  Defaults reproduce the reference
parameter sets; every entry can be overridden through ``--set key=value``
and the primary grid through ``--grid``.

Scenario summary
----------------
fig1  time-averaged upper/middle populations from the lowest level vs the
      normalized Larmor frequency, for two drive moduli (resonance peak plus
      parametric side resonances at the deformed drive).
fig2  spin components of one driven qutrit, free vs coupled to an undriven
      partner ("fluctuator"): the coupling suppresses the oscillations.
fig3  all pair entanglement measures on the driven maximally entangled
      state, plus the zero-field anisotropic decay curves for both signs of
      the exchange constant.
fig4  Schlienz-Mahler measure under the longitudinal pulse train versus free
      evolution: pulses block the disentanglement.
fig5  entropy measure of maximally entangled chains of 2..6 qutrits.
"""

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import biqutrit as bq
from . import chain as chain_mod
from . import entanglement as ent
from . import qutrit
from .ode import IntegratorConfig

FIG1_DEFAULTS = {
    "omega1": 1.0 / 3.0,
    "omega": 1.0,
    "Q": 0.0,
    "d": 0.0,
    "k_solid": 0.85,
    "k_dashed": 0.2,
    "tau_periods": 400.0,
    "tol": 1e-10,
    "grid": (0.0, 6.0, 121),
}
FIG2_DEFAULTS = {
    "omega1": 0.02,
    "omega": 1.0,
    "omega0": 1.0,
    "k": 0.0,
    "J": 0.1,
    "tol": 1e-10,
    "grid": (0.0, 450.0, 1801),
}
FIG3_DEFAULTS = {
    "J": 0.1,
    "Q": 0.02507,
    "grid": (0.0, 100.0, 2001),
}
FIG4_DEFAULTS = {
    "J": 0.178,
    "tol": 1e-10,
    "grid": (0.0, 80.0, 1601),
}
FIG5_DEFAULTS = {
    "J": 0.1,
    "grid": (0.0, 50.0, 1001),
}
SWEEP_DEFAULTS = {
    "omega1": 1.0 / 3.0,
    "omega": 1.0,
    "omega0": 1.0,
    "k": 0.85,
    "Q": 0.0,
    "d": 0.0,
    "tau_periods": 400.0,
    "tol": 1e-10,
    "grid": (0.0, 6.0, 121),
}

DEFAULTS = {
    "fig1": FIG1_DEFAULTS,
    "fig2": FIG2_DEFAULTS,
    "fig3": FIG3_DEFAULTS,
    "fig4": FIG4_DEFAULTS,
    "fig5": FIG5_DEFAULTS,
    "sweep": SWEEP_DEFAULTS,
}


def grid_points(grid):
    start, stop, count = grid
    return np.linspace(float(start), float(stop), int(count))


def _fig1_point(args):
    x, k, omega1, omega, big_q, small_d, tau, tol = args
    cfg = qutrit.FieldConfig(omega1=omega1, omega=omega, omega0=x * omega, k=k, Q=big_q, d=small_d)
    icfg = IntegratorConfig(rel_tol=tol, abs_tol=tol)
    out = qutrit.averaged_populations(cfg, tau, [x], icfg)
    return float(out[0][0]), float(out[0][1])


def run_fig1(params, jobs=1):
    """Averaged populations vs omega0/omega for the two drive moduli."""
    xs = grid_points(params["grid"])
    tau = params["tau_periods"] * 2.0 * math.pi / params["omega"]
    ks = (params["k_solid"], params["k_dashed"])
    tasks = [
        (float(x), k, params["omega1"], params["omega"], params["Q"], params["d"], tau, params["tol"])
        for k in ks
        for x in xs
    ]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_fig1_point, tasks, chunksize=4))
    else:
        results = [_fig1_point(t) for t in tasks]
    half = len(xs)
    header = ["omega0_over_omega"]
    for k in ks:
        header += [f"P_plus_k{k:g}", f"P_zero_k{k:g}"]
    rows = []
    for i, x in enumerate(xs):
        a = results[i]
        b = results[half + i]
        rows.append([float(x), a[0], a[1], b[0], b[1]])
    return header, rows


def run_fig2(params, jobs=1):
    """Spin components of the driven qutrit, free and coupled to a fluctuator."""
    ts = grid_points(params["grid"])
    w1, omega, w0, k, j = (
        params["omega1"],
        params["omega"],
        params["omega0"],
        params["k"],
        params["J"],
    )
    free_cfg = qutrit.FieldConfig(omega1=w1, omega=omega, omega0=w0, k=k)
    rho0 = np.zeros((3, 3), dtype=complex)
    rho0[2, 2] = 1.0
    sy_free = np.empty_like(ts)
    sz_free = np.empty_like(ts)
    for i, t in enumerate(ts):
        r = qutrit.bloch_from_density(qutrit.resonance_solution(rho0, float(t), free_cfg))
        _, sy_free[i], sz_free[i] = qutrit.spin_expectations(r)

    pair_cfg = bq.PairConfig(omega1=w1, omega=omega, omega0=w0, varpi1=0.0, varpi0=0.0, k=k, J=j)
    r0 = bq.tensor_from_density(np.kron(rho0, rho0))
    icfg = IntegratorConfig(rel_tol=params["tol"], abs_tol=params["tol"])
    traj = bq.integrate_pair(r0, pair_cfg, (float(ts[0]), float(ts[-1])), icfg)
    tensors = traj.sample(ts).reshape(-1, 9, 9)
    rt23 = math.sqrt(2.0 / 3.0)
    sy_pair = rt23 * tensors[:, 2, 0]
    sz_pair = rt23 * tensors[:, 3, 0]
    header = ["t", "Sy_free", "Sz_free", "Sy_coupled", "Sz_coupled"]
    rows = [
        [float(t), float(a), float(b), float(c), float(d)]
        for t, a, b, c, d in zip(ts, sy_free, sz_free, sy_pair, sz_pair)
    ]
    return header, rows


def run_fig3(params, jobs=1):
    """Closed-form measure comparison for the maximally entangled pair."""
    ts = grid_points(params["grid"])
    j, q = params["J"], params["Q"]
    cols = [
        ts,
        ent.m_sm_closed_forms("aniso", ts, -abs(j), q),
        ent.m_sm_closed_forms("aniso", ts, abs(j), q),
        ent.negativity_closed_form(ts, abs(j)),
        ent.m_sm_closed_forms("ghz", ts, abs(j)),
        ent.eta2_closed_form(ts, abs(j)),
        ent.i_concurrence_closed_form(ts, abs(j)),
    ]
    header = ["t", "m_aniso_Jneg", "m_aniso_Jpos", "m_vw", "m_sm", "eta2", "m_i"]
    rows = [[float(c[i]) for c in cols] for i in range(len(ts))]
    return header, rows


def run_fig4(params, jobs=1):
    """Pulse-train blocking of the pair disentanglement vs free evolution."""
    ts = grid_points(params["grid"])
    j = params["J"]
    rhs = bq.pair_field_rhs(
        lambda t: bq.impulse_field(t)[0], lambda t: bq.impulse_field(t)[1], j
    )
    r0 = bq.tensor_from_density(bq.ghz_pair_density())
    icfg = IntegratorConfig(rel_tol=params["tol"], abs_tol=params["tol"])
    breaks = [b for b in bq.PULSE_BREAKS if ts[0] < b < ts[-1]]
    traj = bq.integrate_pair(r0, rhs, (float(ts[0]), float(ts[-1])), icfg, breaks)
    pulsed = np.array([ent.m_sm(r.reshape(9, 9)) for r in traj.sample(ts)])
    free = ent.m_sm_closed_forms("ghz", ts, j)
    header = ["t", "m_sm_pulsed", "m_sm_freefield"]
    rows = [[float(t), float(a), float(b)] for t, a, b in zip(ts, pulsed, free)]
    return header, rows


def run_fig5(params, jobs=1):
    """Entropy measure of maximally entangled chains, 2..6 qutrits."""
    ts = grid_points(params["grid"])
    j = params["J"]
    cols = [chain_mod.eta_chain(n, j, ts) for n in range(2, 7)]
    header = ["t"] + [f"eta{n}" for n in range(2, 7)]
    rows = [[float(ts[i])] + [float(c[i]) for c in cols] for i in range(len(ts))]
    return header, rows


def _sweep_point(args):
    x, param, base, tau, tol = args
    values = dict(base)
    values[param] = x
    cfg = qutrit.FieldConfig(
        omega1=values["omega1"],
        omega=values["omega"],
        omega0=values["omega0"],
        k=values["k"],
        Q=values["Q"],
        d=values["d"],
    )
    icfg = IntegratorConfig(rel_tol=tol, abs_tol=tol)
    out = qutrit.averaged_populations(cfg, tau, [values["omega0"] / values["omega"]], icfg)
    return float(out[0][0]), float(out[0][1])


def run_sweep(params, param_name, jobs=1):
    """Sweep one drive parameter and report the averaged populations."""
    base = {k: params[k] for k in ("omega1", "omega", "omega0", "k", "Q", "d")}
    if param_name not in base:
        raise ValueError(f"unknown sweep parameter {param_name!r}")
    xs = grid_points(params["grid"])
    tau = params["tau_periods"] * 2.0 * math.pi / params["omega"]
    tasks = [(float(x), param_name, base, tau, params["tol"]) for x in xs]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, tasks, chunksize=4))
    else:
        results = [_sweep_point(t) for t in tasks]
    header = [param_name, "P_plus", "P_zero"]
    rows = [[float(x), r[0], r[1]] for x, r in zip(xs, results)]
    return header, rows


RUNNERS = {
    "fig1": run_fig1,
    "fig2": run_fig2,
    "fig3": run_fig3,
    "fig4": run_fig4,
    "fig5": run_fig5,
}
