"""Adaptive trajectory integration with dense sampling and bookkeeping.

The u-form model is integrated with an explicit embedded Runge-Kutta 5(4)
pair (Dormand-Prince, via scipy) with quartic dense output. Trajectories
carry derived height/energy columns, equilibrium-crossing events detected
with a hysteresis band and refined by bisection on the dense output, and
the evaluation handle needed to re-detect crossings at other levels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from . import dynamics, stability
from .dynamics import RegimeSpec, State
from .errors import DomainError, HorizonError, StepSizeUnderflowError
from .params import ModelParams

DEFAULT_TOLERANCES = (1e-10, 1e-8)  # (absolute, relative)
HORIZON_CAP = 1e6
HORIZON_EFOLDS = 30.0

EQUILIBRIUM_LEVEL = 0.5
CROSSING_BAND = 1e-9
CROSSING_REFINE_TOL = 1e-10

CSV_HEADER = "s,u,v,H,T,E,V"


class Crossing(NamedTuple):
    """Time at which u passes the equilibrium level, with the sign of v."""

    s: float
    direction: int


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution with derived columns and integration metadata.

    E and V are recomputed from (u, v) at each sample, never integrated;
    H = sqrt(2u) and T = s sqrt(omega) are pure coordinate changes.
    """

    s: np.ndarray
    u: np.ndarray
    v: np.ndarray
    H: np.ndarray
    T: np.ndarray
    E: np.ndarray
    V: np.ndarray
    params: ModelParams
    epsilon: float
    tolerances: tuple[float, float]
    crossings: tuple[Crossing, ...]
    dense: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)

    def final_state(self) -> State:
        return State(float(self.u[-1]), float(self.v[-1]))

    def final_distance_to_equilibrium(self) -> float:
        return math.hypot(self.u[-1] - EQUILIBRIUM_LEVEL, self.v[-1])


class DependenceRecord(NamedTuple):
    alpha: float
    delta_alpha: float
    distance: float


def default_horizon(params: ModelParams) -> float:
    """About 30 damping e-folds, capped at the hard horizon limit."""
    return min(HORIZON_EFOLDS / params.damping, HORIZON_CAP)


def _resolve_run_args(params, epsilon, horizon, tolerances, sample_step):
    if not math.isfinite(epsilon) or epsilon < 0.0:
        raise DomainError("epsilon", f"must be finite and >= 0, got {epsilon!r}")
    if horizon is None:
        horizon = default_horizon(params)
    if not math.isfinite(horizon) or horizon <= 0.0:
        raise DomainError("horizon", f"must be finite and > 0, got {horizon!r}")
    if horizon > HORIZON_CAP:
        raise HorizonError(f"{horizon!r} exceeds the cap {HORIZON_CAP:g}")
    abs_tol, rel_tol = tolerances
    if abs_tol <= 0.0 or rel_tol <= 0.0:
        raise DomainError("tolerances", f"must be positive, got {tolerances!r}")
    if sample_step is None:
        sample_step = horizon / 4096.0
    if not math.isfinite(sample_step) or sample_step <= 0.0:
        raise DomainError("sample_step", f"must be finite and > 0, got {sample_step!r}")
    return float(epsilon), float(horizon), (float(abs_tol), float(rel_tol)), float(sample_step)


def _sample_grid(horizon: float, step: float) -> np.ndarray:
    n = int(math.floor(horizon / step + 1e-9))
    s = step * np.arange(n + 1, dtype=float)
    if s[-1] > horizon:
        s[-1] = horizon
    if horizon - s[-1] > 1e-12 * max(1.0, horizon):
        s = np.append(s, horizon)
    return s


def _series_seed(gamma: float):
    """Local expansion u = s^2/2 - (1+gamma) s^3/6 + ... used to step off
    the square-root corner at u = 0 with zero initial data."""
    c3 = -(1.0 + gamma) / 6.0
    c4 = (1.0 + gamma) * (3.0 * gamma + 1.0) / 72.0

    def eval_series(s):
        s = np.asarray(s, dtype=float)
        u = s * s * (0.5 + s * (c3 + s * c4))
        v = s * (1.0 + s * (3.0 * c3 + s * 4.0 * c4))
        return np.stack([u, v])

    return eval_series


def _solve(params: ModelParams, epsilon: float, horizon: float,
           tolerances: tuple[float, float]):
    """Run the RK5(4) solve; returns (dense evaluator, start state)."""
    gamma = params.damping
    u0 = 0.5 * params.alpha * params.alpha
    sqrt_ = math.sqrt

    def rhs(s, y):
        u, v = y
        return (v, 1.0 - gamma * v - sqrt_(2.0 * (u if u > 0.0 else 0.0) + epsilon))

    t_start = 0.0
    y_start = (u0, 0.0)
    series = None
    if epsilon == 0.0 and u0 == 0.0:
        # Hoelder corner at u = 0: seed the first step analytically.
        series = _series_seed(gamma)
        t_start = min(1e-6, 0.01 / (1.0 + gamma), horizon / 2.0)
        y_start = tuple(series(t_start))

    abs_tol, rel_tol = tolerances
    sol = solve_ivp(rhs, (t_start, horizon), y_start, method="RK45",
                    rtol=rel_tol, atol=abs_tol, dense_output=True)
    if sol.status != 0 or not sol.success:
        raise StepSizeUnderflowError(sol.message)

    if series is None:
        def dense(pts):
            return sol.sol(np.asarray(pts, dtype=float))
    else:
        def dense(pts):
            pts = np.asarray(pts, dtype=float)
            scalar = pts.ndim == 0
            pts = np.atleast_1d(pts)
            out = np.empty((2, pts.size))
            early = pts < t_start
            if early.any():
                out[:, early] = series(pts[early])
            if (~early).any():
                out[:, ~early] = sol.sol(pts[~early])
            return out[:, 0] if scalar else out

    return dense, u0


def _bisect_level(u_at: Callable[[float], float], level: float,
                  lo: float, hi: float, tol: float) -> float:
    f_lo = u_at(lo) - level
    for _ in range(128):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = u_at(mid) - level
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _detect_crossings(s: np.ndarray, u: np.ndarray, dense, level: float,
                      band: float = CROSSING_BAND,
                      refine_tol: float = CROSSING_REFINE_TOL) -> tuple[Crossing, ...]:
    def u_at(x):
        return float(dense(x)[0])

    crossings = []
    side = 0
    armed_index = None
    for i in range(s.size):
        d = u[i] - level
        if abs(d) <= band:
            continue
        this_side = 1 if d > 0.0 else -1
        if side == 0:
            side = this_side
        elif this_side != side:
            s_cross = _bisect_level(u_at, level, float(s[armed_index]),
                                    float(s[i]), refine_tol)
            crossings.append(Crossing(s_cross, this_side))
            side = this_side
        armed_index = i
    return tuple(crossings)


def integrate(params: ModelParams, epsilon: float = 0.0,
              horizon: float | None = None,
              tolerances: tuple[float, float] = DEFAULT_TOLERANCES,
              sample_step: float | None = None) -> Trajectory:
    """Integrate the u-form model over [0, horizon].

    Samples land on multiples of sample_step (plus the final time) through
    the integrator's quartic dense output; the first sample matches the
    initial data exactly. Default tolerances are (abs, rel) = (1e-10, 1e-8).
    """
    epsilon, horizon, tolerances, sample_step = _resolve_run_args(
        params, epsilon, horizon, tolerances, sample_step)
    dense, u0 = _solve(params, epsilon, horizon, tolerances)

    s = _sample_grid(horizon, sample_step)
    y = dense(s)
    u = y[0].copy()
    v = y[1].copy()
    u[0] = u0
    v[0] = 0.0

    H = np.sqrt(2.0 * np.maximum(u, 0.0))
    T = s * math.sqrt(params.omega)
    E, V = stability.lyapunov_columns(u, v)
    crossings = _detect_crossings(s, u, dense, EQUILIBRIUM_LEVEL)

    for arr in (s, u, v, H, T, E, V):
        arr.setflags(write=False)
    return Trajectory(s=s, u=u, v=v, H=H, T=T, E=E, V=V, params=params,
                      epsilon=epsilon, tolerances=tolerances,
                      crossings=crossings, dense=dense)


def detect_crossings(traj: Trajectory, level: float = EQUILIBRIUM_LEVEL) -> tuple[Crossing, ...]:
    """Level crossings of u, hysteresis-filtered and bisection-refined."""
    return _detect_crossings(traj.s, traj.u, traj.dense, level)


def continuous_dependence(params: ModelParams, alpha0: float,
                          alphas: Sequence[float], horizon: float | None = None,
                          tolerances: tuple[float, float] = DEFAULT_TOLERANCES,
                          sample_step: float | None = None) -> list[DependenceRecord]:
    """Sup-norm distance of each alpha-run from the alpha0 reference run."""
    if horizon is None:
        horizon = default_horizon(params)
    reference = integrate(params.replace_alpha(alpha0), horizon=horizon,
                          tolerances=tolerances, sample_step=sample_step)
    records = []
    for alpha in alphas:
        run = integrate(params.replace_alpha(alpha), horizon=horizon,
                        tolerances=tolerances, sample_step=sample_step)
        distance = float(np.max(np.abs(run.u - reference.u)))
        records.append(DependenceRecord(float(alpha), abs(float(alpha) - float(alpha0)),
                                        distance))
    return records


@dataclass(frozen=True)
class RegimeTrajectory:
    """Sampled reduced-regime run in u* coordinates, with h* = sqrt(2 u*)."""

    spec: RegimeSpec
    beta: float
    h0: float
    t: np.ndarray
    u: np.ndarray
    v: np.ndarray | None
    h: np.ndarray
    tolerances: tuple[float, float]


REGIME_TOLERANCES = (1e-12, 1e-11)


def integrate_regime(spec: RegimeSpec, beta: float, alpha: float = 0.0,
                     horizon: float = 20.0,
                     tolerances: tuple[float, float] = REGIME_TOLERANCES,
                     sample_step: float | None = None) -> RegimeTrajectory:
    """Integrate a reduced regime from u*(0) = alpha^2/2 at rest."""
    if not beta > 0.0:
        raise DomainError("beta", f"must be > 0, got {beta!r}")
    if not 0.0 <= alpha:
        raise DomainError("alpha", f"must be >= 0, got {alpha!r}")
    if not math.isfinite(horizon) or horizon <= 0.0:
        raise DomainError("horizon", f"must be finite and > 0, got {horizon!r}")
    if sample_step is None:
        sample_step = horizon / 4096.0
    if sample_step <= 0.0:
        raise DomainError("sample_step", f"must be > 0, got {sample_step!r}")
    abs_tol, rel_tol = tolerances

    u0 = 0.5 * alpha * alpha
    first_order = spec.first_order
    if first_order:
        def rhs(t, y):
            return [dynamics.rhs_regime(spec, (y[0], 0.0), beta)[0]]
        y0 = [u0]
    else:
        def rhs(t, y):
            return list(dynamics.rhs_regime(spec, (y[0], y[1]), beta))
        y0 = [u0, 0.0]

    sol = solve_ivp(rhs, (0.0, horizon), y0, method="RK45",
                    rtol=rel_tol, atol=abs_tol, dense_output=True)
    if sol.status != 0 or not sol.success:
        raise StepSizeUnderflowError(sol.message)

    t = _sample_grid(horizon, sample_step)
    y = sol.sol(t)
    u = y[0].copy()
    u[0] = u0
    v = None
    if not first_order:
        v = y[1].copy()
        v[0] = 0.0
        v.setflags(write=False)
    h = np.sqrt(2.0 * np.maximum(u, 0.0))
    for arr in (t, u, h):
        arr.setflags(write=False)
    return RegimeTrajectory(spec=spec, beta=beta, h0=math.sqrt(2.0 * u0), t=t,
                            u=u, v=v, h=h, tolerances=(abs_tol, rel_tol))


def regime_oracle_residuals(traj: RegimeTrajectory) -> tuple[str, np.ndarray]:
    """Residual of the regime's closed-form / implicit / conservation oracle."""
    case = traj.spec.case
    beta = traj.beta
    if case is dynamics.RegimeCase.NEGLIGIBLE_GRAVITY:
        exact = dynamics.case1_closed_form_u(traj.t, beta, u0=0.5 * traj.h0**2)
        return "closed_form_u", np.abs(traj.u - exact)
    if case is dynamics.RegimeCase.NEGLIGIBLE_INERTIA:
        times = dynamics.case2_implicit_time(traj.h, beta, traj.h0)
        return "implicit_time", np.abs(times - traj.t)
    if case is dynamics.RegimeCase.NEGLIGIBLE_GRAVITY_INERTIA:
        exact = dynamics.case3_closed_form_h(traj.t, beta, traj.h0)
        return "closed_form_h", np.abs(traj.h - exact)
    drift = dynamics.case4_energy(traj.u, traj.v) - dynamics.case4_energy(0.5 * traj.h0**2, 0.0)
    return "energy_drift", np.abs(drift)
