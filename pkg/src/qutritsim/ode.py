"""Adaptive embedded Runge-Kutta 5(4) integration with dense output.

Drives the real Bloch systems (8 and 80 equations) and dense complex
Schroedinger/Liouville systems.  Dormand-Prince coefficients, mixed
absolute/relative error control with safety factor 0.9 and step-growth
clamp [0.2, 5.0], quartic dense-output interpolation, and explicit restarts
at listed discontinuity times.  Unitarity / Bloch-length conservation is
monitored, never enforced.
"""

import math
from dataclasses import dataclass, field

import numpy as np


class IntegrationError(RuntimeError):
    """Base class for integration failures."""


class StiffnessError(IntegrationError):
    """Step size collapsed below the resolvable fraction of the span."""


class PropagationError(IntegrationError):
    """The right-hand side produced non-finite values."""


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-10
    max_step: float = math.inf
    monitor_interval: int = 1

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")


# Dormand-Prince 5(4) tableau; the propagated solution is 5th order and the
# last stage is first-same-as-last.
_C_NODES = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A_ROWS = (
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
)
_ERR = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])
# dense-output polynomial coefficients (quartic in the step fraction)
_DENSE = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


@dataclass
class Trajectory:
    """Accepted integration steps plus a quartic interpolant between them."""

    times: np.ndarray
    states: np.ndarray
    monitors: tuple | None = None
    _seg_h: np.ndarray = field(default=None, repr=False)
    _seg_q: np.ndarray = field(default=None, repr=False)

    def sample(self, ts):
        """Interpolated states at times ts (must lie within the span)."""
        ts = np.asarray(ts, dtype=float)
        scalar = ts.ndim == 0
        ts = np.atleast_1d(ts)
        t0, t1 = self.times[0], self.times[-1]
        pad = 1e-12 * max(1.0, abs(t1 - t0))
        if np.any(ts < t0 - pad) or np.any(ts > t1 + pad):
            raise ValueError("sample time outside the integrated span")
        ts = np.clip(ts, t0, t1)
        idx = np.clip(np.searchsorted(self.times, ts, side="right") - 1, 0, len(self.times) - 2)
        theta = (ts - self.times[idx]) / self._seg_h[idx]
        powers = np.stack([theta, theta**2, theta**3, theta**4], axis=-1)
        out = self.states[idx] + self._seg_h[idx, None] * np.einsum(
            "pdm,pm->pd", self._seg_q[idx], powers
        )
        return out[0] if scalar else out

    def __call__(self, t):
        return self.sample(t)


def _error_norm(err_vec, y_old, y_new, cfg):
    scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y_old), np.abs(y_new))
    return float(np.sqrt(np.mean(np.abs(err_vec / scale) ** 2)))


def _initial_step(rhs, t0, y0, f0, direction, cfg, span):
    scale = cfg.abs_tol + cfg.rel_tol * np.abs(y0)
    d0 = float(np.sqrt(np.mean(np.abs(y0 / scale) ** 2)))
    d1 = float(np.sqrt(np.mean(np.abs(f0 / scale) ** 2)))
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = y0 + direction * h0 * f0
    f1 = np.asarray(rhs(t0 + direction * h0, y1))
    if not np.all(np.isfinite(f1)):
        return min(h0, cfg.max_step, span)
    d2 = float(np.sqrt(np.mean(np.abs((f1 - f0) / scale) ** 2))) / h0
    dm = max(d1, d2)
    h1 = (0.01 / dm) ** 0.2 if dm > 1e-15 else max(1e-6, h0 * 1e3)
    return min(100 * h0, h1, cfg.max_step, span)


def integrate(rhs, y0, t_span, cfg=None, discontinuities=(), monitor=None):
    """Integrate dy/dt = rhs(t, y) over t_span, restarting at discontinuities.

    Parameters
    ----------
    rhs : callable(t, y) -> array
    y0 : initial state, real or complex 1-D array
    t_span : (t0, t1) with t1 > t0
    cfg : IntegratorConfig, defaults to rel = abs = 1e-10
    discontinuities : sorted times inside the span where the integrator is
        restarted instead of stepping across
    monitor : optional callable(t, y) -> float evaluated every
        ``cfg.monitor_interval``-th accepted step

    Returns a :class:`Trajectory`.  Raises :class:`StiffnessError` when the
    step collapses below 1e-12 of the span and :class:`PropagationError` on
    persistent non-finite right-hand sides.
    """
    if cfg is None:
        cfg = IntegratorConfig()
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("t_span must satisfy t1 > t0")
    span = t1 - t0
    breaks = [t0] + [float(d) for d in discontinuities if t0 < d < t1] + [t1]
    if breaks != sorted(breaks):
        raise ValueError("discontinuity list must be sorted")

    y = np.atleast_1d(np.asarray(y0, dtype=np.result_type(float, np.asarray(y0).dtype)))
    dim = y.size

    times = [t0]
    states = [y.copy()]
    seg_h = []
    seg_q = []
    mon_t, mon_v = [], []
    if monitor is not None:
        mon_t.append(t0)
        mon_v.append(monitor(t0, y))
    n_accept = 0
    h_floor = 1e-12 * span

    for ta, tb in zip(breaks[:-1], breaks[1:]):
        t = ta
        f = np.asarray(rhs(t, y))
        if not np.all(np.isfinite(f)):
            raise PropagationError(f"non-finite right-hand side at t={t}")
        work_dtype = np.result_type(y.dtype, f.dtype)
        if y.dtype != work_dtype:
            y = y.astype(work_dtype)
        h = _initial_step(rhs, t, y, f, 1.0, cfg, tb - ta)
        k = np.empty((7, dim), dtype=work_dtype)
        while t < tb:
            h = min(h, cfg.max_step, tb - t)
            if h < h_floor:
                raise StiffnessError(f"step size underflow near t={t}")
            k[0] = f
            finite = True
            for i in range(1, 7):
                yi = y + h * (_A_ROWS[i] @ k[:i])
                k[i] = rhs(t + _C_NODES[i] * h, yi)
                if not np.all(np.isfinite(k[i])):
                    finite = False
                    break
            if not finite:
                if h * 0.5 < h_floor:
                    raise PropagationError(f"non-finite right-hand side near t={t}")
                h *= 0.5
                continue
            y_new = yi  # row 7 of the tableau equals the propagation weights
            err = _error_norm(h * (_ERR @ k), y, y_new, cfg)
            if err <= 1.0:
                t_new = t + h
                if tb - t_new < h_floor:
                    t_new = tb
                seg_h.append(h)
                seg_q.append(k.T @ _DENSE)
                times.append(t_new)
                states.append(y_new.copy())
                n_accept += 1
                if monitor is not None and (
                    n_accept % cfg.monitor_interval == 0 or t_new >= tb
                ):
                    mon_t.append(t_new)
                    mon_v.append(monitor(t_new, y_new))
                f = k[6]  # first-same-as-last
                y = y_new
                t = t_new
                factor = _MAX_FACTOR if err == 0.0 else min(
                    _MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err ** -0.2)
                )
                h *= factor
            else:
                h *= max(_MIN_FACTOR, min(1.0, _SAFETY * err ** -0.2))

    monitors = (np.array(mon_t), np.array(mon_v)) if monitor is not None else None
    return Trajectory(
        times=np.array(times),
        states=np.array(states),
        monitors=monitors,
        _seg_h=np.array(seg_h),
        _seg_q=np.array(seg_q),
    )


def monitor_invariants(traj, kind):
    """Max drift of the conserved quantity for the given state layout.

    kind = 'bloch1' : states are the 8 dynamic single-qutrit components;
                      conserved quantity is the Bloch length b.
    kind = 'bloch2' : states are the 81 pair-tensor components including the
                      constant unit entry; conserved quantity is
                      sqrt(sum R^2 - 1).
    kind = 'unitary': states are complex vectors; conserved quantity is the
                      Euclidean norm.
    """
    states = traj.states
    if kind == "bloch1":
        values = np.sqrt(np.sum(states.real**2, axis=1))
    elif kind == "bloch2":
        values = np.sqrt(np.maximum(np.sum(states.real**2, axis=1) - 1.0, 0.0))
    elif kind == "unitary":
        values = np.sqrt(np.sum(np.abs(states) ** 2, axis=1))
    else:
        raise ValueError(f"unknown invariant kind {kind!r}")
    return {
        "kind": kind,
        "initial": float(values[0]),
        "max_drift": float(np.max(np.abs(values - values[0]))),
    }
