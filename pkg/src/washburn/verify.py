"""Named verification suites: module invariants plus the acceptance gate.

Every check is a zero-argument callable that returns a details dict and
raises CheckFailure when the property it guards does not hold. The CLI
`verify` command runs them (optionally filtered by substring) and writes
a machine-readable report; the pytest acceptance module drives the same
functions one criterion at a time.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import dynamics, params as params_module, stability, volterra
from .dynamics import RegimeCase, RegimeSpec, State
from .errors import WashburnError
from .integrate import (_sample_grid, _solve, continuous_dependence, integrate,
                        integrate_regime, regime_oracle_residuals)
from .params import ModelParams, PhysicalParams

SEED = 20250810

# Step pair for the finite-difference Lyapunov-derivative order estimate;
# large enough to dominate interpolation noise, small enough to sit in
# the asymptotic O(ds^2) regime for the stiffest grid point.
FD_STEPS = (0.00625, 0.003125)
FD_TOLERANCES = (1e-13, 1e-12)

ACCEPTANCE_GRID = [
    (beta, omega, alpha)
    for beta in (0.5, 1.0)
    for omega in (0.1, 1.0)
    for alpha in (0.0, 0.1, 1.0, 1.4, 1.5)
]

VOLTERRA_GRID = [
    (beta, omega, alpha)
    for beta in (1.0, 0.5)
    for omega in (0.1, 0.25, 1.0)
    for alpha in (0.0, 0.1, 1.0)
]


class CheckFailure(WashburnError):
    """A verification check did not hold."""


def _require(condition: bool, message: str):
    if not condition:
        raise CheckFailure(message)


def _mp(omega, beta, alpha=0.0) -> ModelParams:
    return ModelParams(omega=omega, beta=beta, alpha=alpha)


# ---------------------------------------------------------------------------
# params

def check_params_roundtrip() -> dict:
    us = np.concatenate([np.linspace(0.0, 9.0 / 8.0, 2001),
                         np.random.default_rng(SEED).uniform(0.0, 9.0 / 8.0, 2000)])
    worst = 0.0
    for u in us:
        back = params_module.u_from_H(params_module.H_from_u(float(u)))
        worst = max(worst, abs(back - u))
    _require(worst <= 1e-15, f"u->H->u round trip drifts by {worst:.3e}")
    return {"max_roundtrip_error": worst}


def check_params_omega_consistency() -> dict:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(2000):
        p = PhysicalParams(
            rho=rng.uniform(100.0, 2000.0),
            mu=10.0 ** rng.uniform(-4.0, 0.0),
            gamma=rng.uniform(0.01, 0.1),
            theta=rng.uniform(0.0, 1.4),
            g=rng.uniform(1.0, 20.0),
            R=10.0 ** rng.uniform(-5.0, -2.0),
            L=rng.uniform(0.0, 1e-3),
        )
        mp = params_module.nondimensionalize(p)
        check = (mp.Bo / mp.Oh) ** 2 / (128.0 * math.cos(p.theta))
        worst = max(worst, abs(mp.omega - check) / mp.omega)
    _require(worst <= 1e-12, f"omega formulas disagree by {worst:.3e} relative")
    return {"max_relative_disagreement": worst}


def check_params_beta_slip_monotone() -> dict:
    ratios = np.sort(np.random.default_rng(SEED).uniform(0.0, 50.0, 500))
    betas = 1.0 / (1.0 + 4.0 * ratios)
    _require(bool(np.all(betas > 0.0) and np.all(betas <= 1.0)),
             "beta left (0, 1]")
    _require(bool(np.all(np.diff(betas) < 0.0)),
             "beta is not strictly decreasing in L/R")
    return {"n": int(ratios.size)}


def check_params_critical_omega_scaling() -> dict:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(2000):
        beta = rng.uniform(1e-3, 4.0)
        c = rng.uniform(1e-3, 8.0)
        lhs = params_module.critical_omega(c * beta)
        rhs = c * c * params_module.critical_omega(beta)
        worst = max(worst, abs(lhs - rhs) / max(lhs, rhs))
    _require(worst <= 1e-15, f"beta^2 scaling violated at {worst:.3e} relative")
    return {"max_relative_error": worst}


# ---------------------------------------------------------------------------
# dynamics

def check_dynamics_equilibrium_rhs() -> dict:
    for omega in (0.05, 0.1, 0.25, 1.0, 4.0):
        for beta in (0.1, 0.5, 1.0):
            du, dv = dynamics.rhs_u(State(0.5, 0.0), omega, beta, 0.0)
            _require(du == 0.0 and dv == 0.0,
                     f"equilibrium not a fixed point at omega={omega}, beta={beta}")
    return {"combinations": 15}


def check_dynamics_regularization_ordering() -> dict:
    rng = np.random.default_rng(SEED)
    for _ in range(2000):
        u, v = rng.uniform(-0.5, 1.2), rng.uniform(-2.0, 2.0)
        eps_small, eps_big = np.sort(rng.uniform(0.0, 1.0, 2))
        if eps_small == eps_big:
            continue
        _, dv_small = dynamics.rhs_u(State(u, v), 1.0, 1.0, float(eps_small))
        _, dv_big = dynamics.rhs_u(State(u, v), 1.0, 1.0, float(eps_big))
        _require(dv_big < dv_small,
                 f"rhs not strictly decreasing in epsilon at (u, v) = ({u}, {v})")
    return {"samples": 2000}


def check_dynamics_case4_conservation() -> dict:
    spec = RegimeSpec.standard(RegimeCase.NEGLIGIBLE_VISCOSITY)
    traj = integrate_regime(spec, beta=1.0, alpha=0.5, horizon=20.0,
                                  tolerances=(1e-12, 1e-11))
    _, drift = regime_oracle_residuals(traj)
    worst = float(np.max(drift))
    _require(worst <= 10 * 1e-11, f"energy drift {worst:.3e} beyond 10x tolerance")
    return {"max_drift": worst}


def check_dynamics_case2_implicit_relation() -> dict:
    spec = RegimeSpec.standard(RegimeCase.NEGLIGIBLE_INERTIA)
    traj = integrate_regime(spec, beta=1.0, alpha=0.1, horizon=5.0,
                                  tolerances=(1e-13, 1e-12))
    _, resid = regime_oracle_residuals(traj)
    worst = float(np.max(resid))
    _require(worst <= 1e-8, f"implicit-relation residual {worst:.3e}")
    return {"max_residual": worst}


def check_dynamics_h_u_consistency() -> dict:
    omega, beta, alpha = 1.0, 1.0, 0.5
    traj = integrate(_mp(omega, beta, alpha), horizon=20.0,
                           tolerances=(1e-12, 1e-10), sample_step=0.01)
    sol = solve_ivp(
        lambda T, y: (y[1], dynamics.rhs_H(y[0], y[1], omega, beta)),
        (0.0, 20.0 * math.sqrt(omega)), [alpha, 0.0], method="RK45",
        rtol=1e-10, atol=1e-12, dense_output=True)
    _require(sol.success, "H-form integration failed")
    H_direct = sol.sol(traj.s * math.sqrt(omega))[0]
    worst = float(np.max(np.abs(traj.H - H_direct)))
    _require(worst <= 1e-7, f"H/u cross-integration differs by {worst:.3e}")
    return {"sup_difference": worst}


# ---------------------------------------------------------------------------
# integrate

def check_integrate_positivity_and_bounds() -> dict:
    worst_hi = -np.inf
    worst_lo = np.inf
    for beta, omega, alpha in [(1.0, 0.1, 0.0), (1.0, 1.0, 0.0), (0.5, 1.0, 0.5),
                               (1.0, 0.1, 1.5), (0.5, 0.1, 1.0)]:
        traj = integrate(_mp(omega, beta, alpha))
        worst_hi = max(worst_hi, float(np.max(traj.u)))
        if alpha == 0.0:
            interior = traj.u[traj.s >= traj.s[1]]
            _require(bool(np.all(interior > 0.0)),
                     f"u not strictly positive past the start at omega={omega}")
        else:
            _require(bool(np.all(traj.u > 0.0)),
                     f"u not strictly positive at alpha={alpha}")
        worst_lo = min(worst_lo, float(np.min(traj.u)))
    _require(worst_hi <= 9.0 / 8.0 + 1e-9, f"u exceeded 9/8: {worst_hi!r}")
    return {"max_u": worst_hi, "min_u": worst_lo}


def check_integrate_energy_monotone() -> dict:
    worst = -np.inf
    for beta, omega, alpha in [(1.0, 1.0, 0.0), (0.5, 0.1, 1.4), (1.0, 0.25, 0.1)]:
        traj = integrate(_mp(omega, beta, alpha), sample_step=0.01)
        worst = max(worst, float(np.max(np.diff(traj.E))))
    _require(worst <= 1e-8, f"energy rose by {worst:.3e} between samples")
    return {"max_energy_rise": worst}


def _lyapunov_fd_errors(params: ModelParams, horizon: float, steps=FD_STEPS):
    """Max |centered FD of V + (beta/sqrt(omega)) v^2| for each sample step."""
    gamma = params.damping
    traj = integrate(params, horizon=horizon, tolerances=FD_TOLERANCES,
                           sample_step=min(steps))
    errors = []
    for ds in steps:
        s = _sample_grid(horizon, ds)
        u, v = traj.dense(s)
        _, V = stability.lyapunov_columns(u, v)
        fd = (V[2:] - V[:-2]) / (2.0 * ds)
        errors.append(float(np.max(np.abs(fd + gamma * v[1:-1] ** 2))))
    return errors


def _fd_order_holds(errors, floor=1e-12, min_order=1.9):
    if all(e < floor for e in errors):
        return True, math.inf
    order = math.log2(errors[0] / errors[1])
    return order >= min_order, order


def check_integrate_lyapunov_derivative_order() -> dict:
    errors = _lyapunov_fd_errors(_mp(1.0, 1.0, 0.0), horizon=20.0)
    ok, order = _fd_order_holds(errors)
    _require(ok, f"observed FD order {order:.3f} < 1.9 (errors {errors})")
    return {"errors": errors, "order": order}


def check_integrate_epsilon_convergence() -> dict:
    params = _mp(1.0, 1.0, 0.0)
    distances = []
    for k in range(2, 9):
        eps = 10.0 ** (-k)
        a = integrate(params, epsilon=eps, horizon=20.0,
                            tolerances=(1e-12, 1e-11), sample_step=0.01)
        b = integrate(params, epsilon=eps / 2.0, horizon=20.0,
                            tolerances=(1e-12, 1e-11), sample_step=0.01)
        distances.append(float(np.max(np.abs(a.u - b.u))))
    _require(all(d2 < d1 for d1, d2 in zip(distances, distances[1:])),
             f"||u_eps - u_eps/2|| not strictly decreasing: {distances}")
    return {"distances": distances}


def check_integrate_tolerance_convergence() -> dict:
    params = _mp(1.0, 1.0, 0.0)
    coarse = integrate(params, horizon=30.0, tolerances=(1e-10, 1e-8))
    fine = integrate(params, horizon=30.0, tolerances=(5e-11, 5e-9))
    du = abs(coarse.u[-1] - fine.u[-1])
    dv = abs(coarse.v[-1] - fine.v[-1])
    _require(du + dv < 10 * 1e-8,
             f"final state moved by {du + dv:.3e} under tolerance halving")
    return {"final_state_change": du + dv}


# ---------------------------------------------------------------------------
# volterra

def check_volterra_operator_monotone() -> dict:
    rng = np.random.default_rng(SEED)
    grid = np.linspace(0.0, 5.0, 257)
    worst = np.inf
    for _ in range(50):
        f = rng.uniform(0.0, 1.2, grid.size)
        g = f + rng.uniform(0.0, 0.5, grid.size)
        tf = volterra.apply_T(volterra.GridFunction(grid, f), 1.0, 1.0, 0.0)
        tg = volterra.apply_T(volterra.GridFunction(grid, g), 1.0, 1.0, 0.0)
        worst = min(worst, float(np.min(tf.values - tg.values)))
    _require(worst >= -1e-14, f"T(f) >= T(g) fails by {worst:.3e} for f <= g")
    return {"min_margin": worst}


def check_volterra_self_mapping() -> dict:
    rng = np.random.default_rng(SEED)
    worst = np.inf
    for omega, beta in [(1.0, 1.0), (0.25, 1.0), (1.0, 0.5), (4.0, 1.0)]:
        s_star = volterra.uniqueness_window(omega, beta)
        grid = np.linspace(0.0, s_star, 257)
        lower = volterra.bracket_lower(grid)
        upper = volterra.bracket_upper(grid)
        op = volterra.KernelOperator(grid, omega, beta)
        for _ in range(25):
            mix = rng.uniform(0.0, 1.0, grid.size)
            f = lower + mix * (upper - lower)
            tf = op.apply(f, 0.0)
            worst = min(worst, float(np.min(tf - lower)), float(np.min(upper - tf)))
    _require(worst >= -1e-10, f"T leaves the order interval by {worst:.3e}")
    return {"min_margin": worst}


def check_volterra_quadrature_order() -> dict:
    results = {}
    for nodes in (512, 1024, 2048):
        res = volterra.picard_solve(1.0, 1.0, 0.0, 5.0, step=5.0 / nodes, tol=1e-12)
        results[nodes] = res.solution.values
    d_coarse = float(np.max(np.abs(results[512] - results[1024][::2])))
    d_fine = float(np.max(np.abs(results[1024] - results[2048][::2])))
    ratio = d_coarse / d_fine
    _require(3.0 <= ratio <= 5.0,
             f"halving the step changed the answer by x{ratio:.2f}, expected ~4")
    return {"d_coarse": d_coarse, "d_fine": d_fine, "ratio": ratio}


def _picard_vs_ode(points, horizon, nodes):
    worst = 0.0
    per_point = []
    operators = {}
    for beta, omega, alpha in points:
        key = (beta, omega)
        if key not in operators:
            grid = np.linspace(0.0, horizon, nodes + 1)
            operators[key] = volterra.KernelOperator(grid, omega, beta)
        res = volterra.picard_solve(omega, beta, alpha, horizon,
                                    operator=operators[key])
        traj_dense, _ = _solve(_mp(omega, beta, alpha), 0.0, horizon,
                                     (1e-12, 1e-10))
        u_ode = traj_dense(res.solution.grid)[0]
        d = float(np.max(np.abs(res.solution.values - u_ode)))
        per_point.append({"beta": beta, "omega": omega, "alpha": alpha,
                          "iterations": res.iterations, "sup_distance": d})
        worst = max(worst, d)
    return worst, per_point


def check_volterra_picard_ode_equivalence() -> dict:
    points = [(1.0, 0.25, 0.0), (1.0, 1.0, 0.0), (1.0, 1.0, 1.0), (0.5, 1.0, 0.1)]
    worst, per_point = _picard_vs_ode(points, horizon=10.0, nodes=2048)
    _require(worst <= 1e-4, f"fixed point and integrator differ by {worst:.3e}")
    return {"worst": worst, "points": per_point}


# ---------------------------------------------------------------------------
# stability

def check_stability_v_positivity() -> dict:
    rng = np.random.default_rng(SEED)
    u = rng.uniform(0.0, 9.0 / 8.0, 100_000)
    v = rng.uniform(-2.0, 2.0, 100_000)
    keep = np.abs(u - 0.5) + np.abs(v) > 1e-6
    u, v = u[keep], v[keep]
    E, V = stability.lyapunov_columns(u, v)
    _require(bool(np.all(V > 0.0)),
             f"V not positive away from equilibrium (min {np.min(V):.3e})")
    direct = E + 1.0 / 6.0
    factored = stability._lyapunov_factored(u, v)
    gap = np.max(np.abs(direct - factored) / np.maximum(1.0, np.abs(factored)))
    _require(float(gap) <= 1e-13,
             f"direct and factored V forms disagree by {gap:.3e}")
    return {"samples": int(u.size), "min_V": float(np.min(V)), "max_form_gap": float(gap)}


def check_stability_eigenvalue_real_part() -> dict:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(2000):
        beta = rng.uniform(1e-3, 2.0)
        omega = rng.uniform(1e-3, 4.0)
        rep = stability.linearize(omega, beta)
        expected = -beta / (2.0 * math.sqrt(omega))
        mean_re = 0.5 * (rep.lambda1.real + rep.lambda2.real)
        worst = max(worst, abs(mean_re - expected))
        _require(rep.lambda1.real < 0.0 and rep.lambda2.real < 0.0,
                 f"eigenvalue with nonnegative real part at ({omega}, {beta})")
        if rep.kind is stability.PointKind.STABLE_SPIRAL:
            worst = max(worst, abs(rep.lambda1.real - expected),
                        abs(rep.lambda2.real - expected))
    _require(worst <= 1e-12, f"real-part identity off by {worst:.3e}")
    return {"max_error": worst}


def check_stability_classification_boundary() -> dict:
    worst = 0.0
    for beta in (0.5, 1.0, 2.0):
        lo, hi = beta**2 / 8.0, beta**2
        for _ in range(200):
            if hi - lo <= 1e-10:
                break
            mid = 0.5 * (lo + hi)
            if stability.linearize(mid, beta).discriminant > 0.0:
                lo = mid
            else:
                hi = mid
        found = 0.5 * (lo + hi)
        worst = max(worst, abs(found - params_module.critical_omega(beta)))
    _require(worst <= 2e-10,
             f"classification switch misses omega* by {worst:.3e}")
    return {"max_offset": worst}


def check_stability_basin_residual() -> dict:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for alpha in rng.uniform(0.0, 1.5, 1000):
        spec = stability.basin(float(alpha))
        for u in (spec.u_min, spec.u_max):
            worst = max(worst, abs(stability._level_function(u) - spec.C))
        _require(0.0 <= spec.u_min <= spec.u_max <= 9.0 / 8.0 + 1e-12,
                 f"basin bounds out of range at alpha={alpha}")
    _require(worst <= 1e-10, f"level-equation residual {worst:.3e}")
    return {"max_residual": worst}


def check_stability_basin_geometry() -> dict:
    alphas = np.linspace(0.0, 1.5, 3001)
    specs = [stability.basin(float(a)) for a in alphas]
    u_min = np.array([s.u_min for s in specs])
    u_max = np.array([s.u_max for s in specs])
    _require(bool(np.all(u_min <= 0.5 + 1e-12) and np.all(u_max >= 0.5 - 1e-12)),
             "basin does not bracket the equilibrium")
    da = alphas[1] - alphas[0]
    jump = max(float(np.max(np.abs(np.diff(u_min)))),
               float(np.max(np.abs(np.diff(u_max)))))
    _require(jump <= 4.0 * da, f"basin bounds jump by {jump:.3e} over da={da:.3e}")
    return {"max_jump": jump, "grid": int(alphas.size)}


# ---------------------------------------------------------------------------
# acceptance criteria

def acceptance_c01_equilibrium_exactness() -> dict:
    worst = 0.0
    for beta in (0.5, 1.0):
        for omega in (0.1, 0.25, 1.0, 4.0):
            traj = integrate(_mp(omega, beta, 1.0), horizon=100.0,
                                   sample_step=0.1)
            worst = max(worst, float(np.max(np.abs(traj.u - 0.5))))
    _require(worst < 1e-10, f"equilibrium drifted by {worst:.3e}")
    return {"max_drift": worst}


def acceptance_c02_bounds() -> dict:
    lo, hi = np.inf, -np.inf
    for beta, omega, alpha in ACCEPTANCE_GRID:
        traj = integrate(_mp(omega, beta, alpha))
        lo = min(lo, float(np.min(traj.u)))
        hi = max(hi, float(np.max(traj.u)))
    _require(lo >= -1e-12, f"u dipped to {lo:.3e}")
    _require(hi <= 9.0 / 8.0 + 1e-9, f"u climbed to {hi!r}")
    return {"min_u": lo, "max_u": hi}


def acceptance_c03_energy_lyapunov() -> dict:
    worst_rise = -np.inf
    worst_order = math.inf
    orders = []
    for beta, omega, alpha in ACCEPTANCE_GRID:
        params = _mp(omega, beta, alpha)
        traj = integrate(params, horizon=20.0, sample_step=FD_STEPS[0])
        worst_rise = max(worst_rise, float(np.max(np.diff(traj.E))))
        errors = _lyapunov_fd_errors(params, horizon=20.0)
        ok, order = _fd_order_holds(errors)
        orders.append(order)
        if math.isfinite(order):
            worst_order = min(worst_order, order)
        _require(ok, f"FD order {order:.3f} < 1.9 at (beta, omega, alpha) = "
                     f"({beta}, {omega}, {alpha}); errors {errors}")
    _require(worst_rise <= 1e-8, f"energy rose by {worst_rise:.3e}")
    return {"max_energy_rise": worst_rise, "min_fd_order": worst_order}


def _has_crossings(omega: float, beta: float, horizon: float = 80.0) -> bool:
    traj = integrate(_mp(omega, beta, 0.0), horizon=horizon,
                           tolerances=(1e-12, 1e-10), sample_step=0.05)
    return len(traj.crossings) > 0


def _bracket_transition(beta: float, lo: float, hi: float,
                        width: float = 0.03) -> tuple[float, float]:
    """Bisect the no-crossings/crossings transition in omega."""
    assert not _has_crossings(lo, beta) and _has_crossings(hi, beta)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if _has_crossings(mid, beta):
            hi = mid
        else:
            lo = mid
    return lo, hi


def _settled_classification(omega, beta, alpha=0.0, horizon=40.0):
    traj = integrate(_mp(omega, beta, alpha), horizon=horizon,
                           tolerances=(1e-12, 1e-10), sample_step=0.02)
    return stability.classify_approach(traj)


def acceptance_c04_bifurcation() -> dict:
    cases = {
        (1.0, 0.1): stability.ApproachKind.MONOTONE,
        (1.0, 1.0): stability.ApproachKind.OSCILLATORY,
        (0.5, 0.05): stability.ApproachKind.MONOTONE,
        (0.5, 0.5): stability.ApproachKind.OSCILLATORY,
    }
    for (beta, omega), expected in cases.items():
        got = _settled_classification(omega, beta).kind
        _require(got is expected,
                 f"(beta, omega) = ({beta}, {omega}) classified {got.value}, "
                 f"expected {expected.value}")
    brackets = {}
    for beta, lo, hi in ((1.0, 0.1, 1.0), (0.5, 0.05, 0.5)):
        blo, bhi = _bracket_transition(beta, lo, hi)
        star = params_module.critical_omega(beta)
        _require(star - 0.05 <= blo and bhi <= star + 0.05,
                 f"bracket [{blo:.4f}, {bhi:.4f}] misses omega* = {star} +- 0.05")
        brackets[f"beta={beta}"] = [blo, bhi]
    return {"brackets": brackets}


def acceptance_c05_eigenvalue_anchor() -> dict:
    rep = stability.linearize(0.25, 1.0)
    _require(abs(rep.lambda1 - (-1.0)) <= 1e-12 and abs(rep.lambda2 - (-1.0)) <= 1e-12,
             f"eigenvalues {rep.lambda1}, {rep.lambda2} are not the double -1")
    _require(rep.kind is stability.PointKind.STABLE_INFLECTED_NODE,
             f"kind {rep.kind.value} is not the inflected node")
    return {"lambda1": rep.lambda1.real, "lambda2": rep.lambda2.real}


def acceptance_c06_basin_formulas() -> dict:
    b0 = stability.basin(0.0)
    _require(b0.C == 1.0 / 6.0 and b0.u_min == 0.0 and b0.u_max == 9.0 / 8.0,
             f"basin(0) = {b0}")
    b1 = stability.basin(1.0)
    _require(b1.C == 0.0 and abs(b1.u_min - 0.5) <= 1e-15
             and abs(b1.u_max - 0.5) <= 1e-15, f"basin(1) = {b1}")
    b32 = stability.basin(1.5)
    expected_C = stability.lyapunov(0.5 * 1.5**2, 0.0)[1]
    _require(abs(b32.C - expected_C) == 0.0 and abs(b32.C - 1.0 / 6.0) <= 1e-15
             and b32.u_min == 0.0 and b32.u_max == 9.0 / 8.0,
             f"basin(3/2) = {b32}")
    residual_details = check_stability_basin_residual()
    return {"basin0": stability.basin_dict(b0), "basin1": stability.basin_dict(b1),
            "basin32": stability.basin_dict(b32), **residual_details}


def acceptance_c07_volterra_cross_validation() -> dict:
    worst, per_point = _picard_vs_ode(VOLTERRA_GRID, horizon=10.0, nodes=4096)
    _require(worst <= 1e-5,
             f"fixed point and integrator differ by {worst:.3e} on the grid")
    interval_margins = {}
    scaling_margins = {}
    for beta in (1.0, 0.5):
        for omega in (0.1, 0.25, 1.0):
            report = volterra.order_interval_check(omega, beta)
            _require(report.holds,
                     f"order interval fails at (omega, beta) = ({omega}, {beta}): {report}")
            interval_margins[f"omega={omega},beta={beta}"] = [
                report.lower_margin, report.upper_margin]
            s_star = volterra.uniqueness_window(omega, beta)
            grid = np.linspace(0.0, s_star, 513)
            for lam, fn in ((0.999999, volterra.bracket_upper),
                            (0.25, volterra.bracket_upper),
                            (0.5, volterra.bracket_lower)):
                f = volterra.GridFunction(grid, fn(grid))
                rep = volterra.check_scaling_inequality(f, lam, omega, beta)
                _require(rep.holds,
                         f"scaling bound fails for lambda={lam} at "
                         f"(omega, beta) = ({omega}, {beta}): {rep.max_violation:.3e}")
                key = f"omega={omega},beta={beta},lam={lam}"
                scaling_margins[key] = rep.max_violation
    return {"worst_sup_distance": worst, "per_point": per_point,
            "order_interval_margins": interval_margins,
            "scaling_violations": scaling_margins}


def acceptance_c08_regularization_convergence() -> dict:
    params = _mp(1.0, 1.0, 0.0)
    runs = {}
    for k in range(2, 10):
        runs[k] = integrate(params, epsilon=10.0 ** (-k), horizon=20.0,
                                  tolerances=(1e-12, 1e-11), sample_step=0.01)
    distances = [float(np.max(np.abs(runs[k].u - runs[k + 1].u)))
                 for k in range(2, 9)]
    _require(all(d2 < d1 for d1, d2 in zip(distances, distances[1:])),
             f"epsilon distances not strictly decreasing: {distances}")
    return {"distances": distances}


def acceptance_c09_continuous_dependence() -> dict:
    records = continuous_dependence(_mp(1.0, 1.0), alpha0=0.0,
                                          alphas=(0.2, 0.1, 0.05, 0.025),
                                          horizon=20.0, sample_step=0.01)
    distances = [r.distance for r in records]
    _require(all(d2 < d1 for d1, d2 in zip(distances, distances[1:])),
             f"distances not strictly decreasing: {distances}")
    return {"distances": distances}


def acceptance_c10_regime_oracles() -> dict:
    details = {}
    for beta in (1.0, 0.5):
        for alpha in (0.0, 0.3):
            traj = integrate_regime(
                RegimeSpec.standard(RegimeCase.NEGLIGIBLE_GRAVITY_INERTIA),
                beta=beta, alpha=alpha, horizon=10.0)
            _, resid = regime_oracle_residuals(traj)
            worst = float(np.max(resid))
            _require(worst <= 1e-10, f"case 3 residual {worst:.3e} at beta={beta}")
            details[f"case3,beta={beta},alpha={alpha}"] = worst
    for beta in (1.0, 0.5):
        traj = integrate_regime(
            RegimeSpec.standard(RegimeCase.NEGLIGIBLE_GRAVITY),
            beta=beta, alpha=0.0, horizon=20.0)
        _, resid = regime_oracle_residuals(traj)
        worst = float(np.max(resid))
        _require(worst <= 1e-8, f"case 1 residual {worst:.3e} at beta={beta}")
        details[f"case1,beta={beta}"] = worst
    traj = integrate_regime(RegimeSpec.standard(RegimeCase.NEGLIGIBLE_INERTIA),
                                  beta=1.0, alpha=0.1, horizon=5.0,
                                  tolerances=(1e-13, 1e-12))
    _, resid = regime_oracle_residuals(traj)
    worst = float(np.max(resid))
    _require(worst <= 1e-8, f"case 2 residual {worst:.3e}")
    details["case2,beta=1.0"] = worst
    traj = integrate_regime(RegimeSpec.standard(RegimeCase.NEGLIGIBLE_VISCOSITY),
                                  beta=1.0, alpha=0.5, horizon=100.0,
                                  tolerances=(1e-12, 1e-11))
    _, drift = regime_oracle_residuals(traj)
    worst = float(np.max(drift))
    _require(worst <= 1e-8, f"case 4 energy drift {worst:.3e}")
    details["case4"] = worst
    return details


def convergence_distance(beta: float, omega: float, alpha: float) -> float:
    """Distance to equilibrium at the criterion-11 horizon 60 sqrt(omega)/beta."""
    horizon = 60.0 * math.sqrt(omega) / beta
    traj = integrate(_mp(omega, beta, alpha), horizon=horizon)
    return traj.final_distance_to_equilibrium()


def acceptance_c11_convergence_to_equilibrium() -> dict:
    distances = {}
    failures = []
    for beta, omega, alpha in ACCEPTANCE_GRID:
        d = convergence_distance(beta, omega, alpha)
        distances[f"beta={beta},omega={omega},alpha={alpha}"] = d
        if not d < 1e-5:
            failures.append((beta, omega, alpha, d))
    _require(not failures,
             "final distance >= 1e-5 at " +
             "; ".join(f"(beta={b}, omega={w}, alpha={a}): {d:.3e}"
                       for b, w, a, d in failures))
    return {"distances": distances}


# ---------------------------------------------------------------------------
# registry and runner

CHECKS = {
    "params.roundtrip": check_params_roundtrip,
    "params.omega_consistency": check_params_omega_consistency,
    "params.beta_slip_monotone": check_params_beta_slip_monotone,
    "params.critical_omega_scaling": check_params_critical_omega_scaling,
    "dynamics.equilibrium_rhs": check_dynamics_equilibrium_rhs,
    "dynamics.regularization_ordering": check_dynamics_regularization_ordering,
    "dynamics.case4_conservation": check_dynamics_case4_conservation,
    "dynamics.case2_implicit_relation": check_dynamics_case2_implicit_relation,
    "dynamics.h_u_consistency": check_dynamics_h_u_consistency,
    "integrate.positivity_and_bounds": check_integrate_positivity_and_bounds,
    "integrate.energy_monotone": check_integrate_energy_monotone,
    "integrate.lyapunov_derivative_order": check_integrate_lyapunov_derivative_order,
    "integrate.epsilon_convergence": check_integrate_epsilon_convergence,
    "integrate.tolerance_convergence": check_integrate_tolerance_convergence,
    "volterra.operator_monotone": check_volterra_operator_monotone,
    "volterra.self_mapping": check_volterra_self_mapping,
    "volterra.quadrature_order": check_volterra_quadrature_order,
    "volterra.picard_ode_equivalence": check_volterra_picard_ode_equivalence,
    "stability.v_positivity": check_stability_v_positivity,
    "stability.eigenvalue_real_part": check_stability_eigenvalue_real_part,
    "stability.classification_boundary": check_stability_classification_boundary,
    "stability.basin_residual": check_stability_basin_residual,
    "stability.basin_geometry": check_stability_basin_geometry,
    "acceptance.c01_equilibrium_exactness": acceptance_c01_equilibrium_exactness,
    "acceptance.c02_bounds": acceptance_c02_bounds,
    "acceptance.c03_energy_lyapunov": acceptance_c03_energy_lyapunov,
    "acceptance.c04_bifurcation": acceptance_c04_bifurcation,
    "acceptance.c05_eigenvalue_anchor": acceptance_c05_eigenvalue_anchor,
    "acceptance.c06_basin_formulas": acceptance_c06_basin_formulas,
    "acceptance.c07_volterra_cross_validation": acceptance_c07_volterra_cross_validation,
    "acceptance.c08_regularization_convergence": acceptance_c08_regularization_convergence,
    "acceptance.c09_continuous_dependence": acceptance_c09_continuous_dependence,
    "acceptance.c10_regime_oracles": acceptance_c10_regime_oracles,
    "acceptance.c11_convergence_to_equilibrium": acceptance_c11_convergence_to_equilibrium,
}


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    seconds: float
    details: dict
    message: str | None = None


def run_checks(only: str | None = None) -> list[CheckOutcome]:
    """Run all (or substring-filtered) checks; failures are captured."""
    selected = {name: fn for name, fn in CHECKS.items()
                if only is None or only in name}
    outcomes = []
    for name, fn in selected.items():
        start = time.perf_counter()
        try:
            details = fn()
            outcomes.append(CheckOutcome(name, True, time.perf_counter() - start,
                                         details))
        except Exception as exc:  # a failing check must not stop the suite
            outcomes.append(CheckOutcome(name, False, time.perf_counter() - start,
                                         {}, f"{type(exc).__name__}: {exc}"))
    return outcomes


def outcomes_report(outcomes: list[CheckOutcome]) -> dict:
    return {
        "passed": all(o.passed for o in outcomes),
        "n_checks": len(outcomes),
        "n_failed": sum(not o.passed for o in outcomes),
        "checks": [
            {"name": o.name, "passed": o.passed, "seconds": o.seconds,
             "details": o.details, "message": o.message}
            for o in outcomes
        ],
    }
