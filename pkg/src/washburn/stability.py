"""Stability analysis of the equilibrium (u, v) = (1/2, 0).

Linearization gives eigenvalues -(beta/(2 sqrt(omega)))(1 +- sqrt(1 - 4
omega/beta^2)); the sign of the discriminant classifies the point as a
stable node, spiral, or (at omega = beta^2/4) inflected node. The
Lyapunov function V = E + 1/6 is evaluated through a factored form near
the equilibrium to avoid cancellation, and its sublevel set {V <= C}
provides the basin of attraction for each admissible starting height.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import params as params_module
from .dynamics import TWO_SQRT2_OVER_3, energy
from .errors import ConsistencyError, DomainError, InconclusiveError
from .params import ALPHA_MAX, U_BOUND, U_EQUILIBRIUM

INV_SQRT2 = math.sqrt(0.5)

# |discriminant| below this is treated as the degenerate double eigenvalue.
INFLECTED_BAND = 1e-12

# Switch to the factored Lyapunov form this close to the equilibrium.
FACTORED_WINDOW = 1e-3

BASIN_RESIDUAL_TOL = 1e-10

SETTLED_TOL = 1e-4
MONOTONE_TOL = 1e-9
EXACT_EQUILIBRIUM_TOL = 1e-12


class PointKind(Enum):
    STABLE_NODE = "stable-node"
    STABLE_SPIRAL = "stable-spiral"
    STABLE_INFLECTED_NODE = "stable-inflected-node"


class ApproachKind(Enum):
    MONOTONE = "monotone"
    OSCILLATORY = "oscillatory"
    AT_EQUILIBRIUM = "at-equilibrium"


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalues and classification of the linearized equilibrium."""

    lambda1: complex
    lambda2: complex
    kind: PointKind
    omega_star: float
    discriminant: float


def linearize(omega: float, beta: float) -> StabilityReport:
    """Eigenvalues and type of the equilibrium for given (omega, beta)."""
    if not omega > 0.0:
        raise DomainError("omega", f"must be > 0, got {omega!r}")
    if not beta > 0.0:
        raise DomainError("beta", f"must be > 0, got {beta!r}")
    rate = beta / (2.0 * math.sqrt(omega))
    disc = 1.0 - 4.0 * omega / (beta * beta)
    if abs(disc) <= INFLECTED_BAND:
        kind = PointKind.STABLE_INFLECTED_NODE
        lam1 = lam2 = complex(-rate, 0.0)
    elif disc > 0.0:
        kind = PointKind.STABLE_NODE
        root = math.sqrt(disc)
        lam1 = complex(-rate * (1.0 + root), 0.0)
        lam2 = complex(-rate * (1.0 - root), 0.0)
    else:
        kind = PointKind.STABLE_SPIRAL
        root = math.sqrt(-disc)
        lam1 = complex(-rate, -rate * root)
        lam2 = complex(-rate, rate * root)
    return StabilityReport(lambda1=lam1, lambda2=lam2, kind=kind,
                           omega_star=params_module.critical_omega(beta),
                           discriminant=disc)


def _lyapunov_factored(u, v):
    root = np.sqrt(u)
    return 0.5 * v * v + TWO_SQRT2_OVER_3 * (root - INV_SQRT2) ** 2 * (root + 0.5 * INV_SQRT2)


def lyapunov(u: float, v: float) -> tuple[float, float]:
    """Energy E and Lyapunov value V = E + 1/6 at a phase point.

    V is computed from its factored square form near u = 1/2, where the
    direct expression loses every significant digit; V(1/2, 0) == 0.0.
    """
    if u < 0.0:
        raise DomainError("u", f"must be >= 0, got {u!r}")
    E = energy(u, v)
    if abs(u - U_EQUILIBRIUM) < FACTORED_WINDOW:
        V = float(_lyapunov_factored(u, v))
    else:
        V = E + 1.0 / 6.0
    return E, V


def lyapunov_columns(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (E, V) for trajectory columns; clamps u dust below 0."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    up = np.maximum(u, 0.0)
    E = 0.5 * v * v - u + TWO_SQRT2_OVER_3 * up * np.sqrt(up)
    V = np.where(np.abs(u - U_EQUILIBRIUM) < FACTORED_WINDOW,
                 _lyapunov_factored(up, v), E + 1.0 / 6.0)
    return E, V


@dataclass(frozen=True)
class BasinSpec:
    """Level constant C and the v = 0 extent [u_min, u_max] of {V <= C}."""

    C: float
    u_min: float
    u_max: float

    def __post_init__(self):
        if not 0.0 <= self.u_min <= self.u_max <= U_BOUND + 1e-12:
            raise ConsistencyError(
                f"basin bounds out of order: ({self.u_min!r}, {self.u_max!r})"
            )
        for u in (self.u_min, self.u_max):
            if abs(_level_function(u) - self.C) >= BASIN_RESIDUAL_TOL:
                raise ConsistencyError(
                    f"basin bound {u!r} misses the level equation for C = {self.C!r}"
                )


def _level_function(u: float) -> float:
    """-u + (2 sqrt2/3) u^{3/2} + 1/6, whose C-level set bounds the basin."""
    return -u + TWO_SQRT2_OVER_3 * u * math.sqrt(u) + 1.0 / 6.0


def basin(alpha: float) -> BasinSpec:
    """Basin of attraction for a start at rest with height ratio alpha.

    C equals the Lyapunov value of the initial state; the two v = 0
    boundary points are alpha^2/2 itself and the closed-form second root
    of the level equation.
    """
    if not 0.0 <= alpha <= ALPHA_MAX:
        raise DomainError("alpha", f"must lie in [0, {ALPHA_MAX}], got {alpha!r}")
    u_init = 0.5 * alpha * alpha
    _, C = lyapunov(u_init, 0.0)
    other = (9.0 / 8.0) * (0.5 - alpha / 3.0
                           + math.sqrt(9.0 + 12.0 * alpha - 12.0 * alpha * alpha) / 6.0) ** 2
    return BasinSpec(C=C, u_min=min(u_init, other), u_max=max(u_init, other))


@dataclass(frozen=True)
class ApproachReport:
    """Classification of how a trajectory settles, with its evidence."""

    kind: ApproachKind
    crossings: tuple
    final_distance: float


def classify_approach(traj) -> ApproachReport:
    """Monotone / oscillatory / at-equilibrium settling of a trajectory.

    Requires the run to have settled (|u(S) - 1/2| < 1e-4). A single
    crossing, or a non-monotone crossing-free run, is deliberately
    inconclusive: near the critical omega the dichotomy is ill-posed.
    """
    u = np.asarray(traj.u)
    final_distance = float(traj.final_distance_to_equilibrium())
    if abs(u[-1] - U_EQUILIBRIUM) >= SETTLED_TOL:
        raise InconclusiveError(
            f"trajectory has not settled: |u(S) - 1/2| = {abs(u[-1] - 0.5):.3e}; "
            "extend the horizon"
        )
    crossings = tuple(traj.crossings)
    if (abs(u[0] - U_EQUILIBRIUM) <= EXACT_EQUILIBRIUM_TOL
            and abs(traj.v[0]) <= EXACT_EQUILIBRIUM_TOL):
        return ApproachReport(ApproachKind.AT_EQUILIBRIUM, crossings, final_distance)
    if len(crossings) >= 2:
        return ApproachReport(ApproachKind.OSCILLATORY, crossings, final_distance)
    if len(crossings) == 1:
        raise InconclusiveError(
            "exactly one equilibrium crossing: horizon too short or omega "
            "too close to the critical value"
        )
    diffs = np.diff(u[1:])
    if np.all(diffs >= -MONOTONE_TOL) or np.all(diffs <= MONOTONE_TOL):
        return ApproachReport(ApproachKind.MONOTONE, crossings, final_distance)
    raise InconclusiveError(
        "no crossings but the approach is not monotone: horizon too short "
        "or omega too close to the critical value"
    )


@dataclass(frozen=True)
class BasinAudit:
    """Forward-invariance evidence for a trajectory against a basin."""

    max_level_excess: float
    max_lyapunov_rise: float
    final_distance: float


def audit_trajectory(traj, spec: BasinSpec) -> BasinAudit:
    """Check that a trajectory never leaves {V <= C} and that V never rises.

    Findings are reported, not raised; only a start outside the basin is
    rejected.
    """
    V = np.asarray(traj.V)
    if V[0] > spec.C + 1e-12:
        raise DomainError(
            "traj", f"initial state has V = {V[0]!r} > C = {spec.C!r}"
        )
    excess = float(np.max(V - spec.C))
    rises = np.diff(V)
    max_rise = float(max(0.0, np.max(rises))) if rises.size else 0.0
    return BasinAudit(max_level_excess=excess, max_lyapunov_rise=max_rise,
                      final_distance=float(traj.final_distance_to_equilibrium()))


def stability_report_dict(report: StabilityReport) -> dict:
    return {
        "lambda1": {"re": report.lambda1.real, "im": report.lambda1.imag},
        "lambda2": {"re": report.lambda2.real, "im": report.lambda2.imag},
        "kind": report.kind.value,
        "omega_star": report.omega_star,
        "discriminant": report.discriminant,
    }


def basin_dict(spec: BasinSpec) -> dict:
    return {"C": spec.C, "u_min": spec.u_min, "u_max": spec.u_max}


def audit_dict(audit: BasinAudit) -> dict:
    return {
        "max_level_excess": audit.max_level_excess,
        "max_lyapunov_rise": audit.max_lyapunov_rise,
        "final_distance": audit.final_distance,
    }
