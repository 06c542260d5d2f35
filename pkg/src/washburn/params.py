"""Dimensional inputs and the dimensionless model constants.

The capillary column is described either by its physical fluid/pipe data
(SI units) or directly by the dimensionless triple (omega, beta, alpha):
omega weighs inertia against viscosity and gravity, beta is the wall-slip
parameter (beta = 1 means no slip), and alpha is the initial height as a
fraction of the equilibrium height.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import ConsistencyError, DomainError

# Trajectories are confined to u <= 9/8; alpha beyond 3/2 is outside the
# range covered by the analysis and is rejected rather than clamped.
ALPHA_MAX = 1.5
U_BOUND = 9.0 / 8.0
U_EQUILIBRIUM = 0.5

# The initial column is assumed short compared to the equilibrium height;
# larger ratios are still integrated but draw a warning.
SMALL_ALPHA_GUIDELINE = 0.1

_OMEGA_CONSISTENCY_RTOL = 1e-12

PHYSICAL_JSON_KEYS = ("rho", "mu", "gamma", "theta_deg", "g", "R", "L", "h0")


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional description of the fluid and pipe (SI units).

    rho: mass density [kg/m^3]; mu: dynamic viscosity [Pa s]; gamma:
    surface tension [N/m]; theta: contact angle [rad] in [0, pi/2);
    g: gravity [m/s^2]; R: pipe radius [m]; L: slip length [m];
    h0: initial column height [m].
    """

    rho: float
    mu: float
    gamma: float
    theta: float
    g: float
    R: float
    L: float = 0.0
    h0: float = 0.0

    def __post_init__(self):
        for name in ("rho", "mu", "gamma", "g", "R"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise DomainError(name, f"must be finite and > 0, got {value!r}")
        if not math.isfinite(self.theta) or not 0.0 <= self.theta < math.pi / 2.0:
            raise DomainError("theta", f"must lie in [0, pi/2), got {self.theta!r}")
        for name in ("L", "h0"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise DomainError(name, f"must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model constants, optionally with the physical scales.

    The physical fields (h_e, tau, Oh, Bo) are populated when the instance
    comes from `nondimensionalize`; a purely dimensionless run leaves them
    as None.
    """

    omega: float
    beta: float
    alpha: float
    h_e: float | None = None
    tau: float | None = None
    Oh: float | None = None
    Bo: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.omega) or self.omega <= 0.0:
            raise DomainError("omega", f"must be finite and > 0, got {self.omega!r}")
        if not math.isfinite(self.beta) or not 0.0 < self.beta <= 1.0:
            raise DomainError("beta", f"must lie in (0, 1], got {self.beta!r}")
        if not math.isfinite(self.alpha) or not 0.0 <= self.alpha <= ALPHA_MAX:
            raise DomainError(
                "alpha", f"must lie in [0, {ALPHA_MAX}], got {self.alpha!r}"
            )
        for name in ("h_e", "tau", "Oh", "Bo"):
            value = getattr(self, name)
            if value is not None and (not math.isfinite(value) or value <= 0.0):
                raise DomainError(name, f"must be finite and > 0, got {value!r}")

    @property
    def damping(self) -> float:
        """Damping coefficient beta/sqrt(omega) of the transformed model."""
        return self.beta / math.sqrt(self.omega)

    @property
    def omega_star(self) -> float:
        """Critical omega separating monotone from oscillatory settling."""
        return critical_omega(self.beta)

    def replace_alpha(self, alpha: float) -> "ModelParams":
        return ModelParams(self.omega, self.beta, alpha,
                           self.h_e, self.tau, self.Oh, self.Bo)


def nondimensionalize(p: PhysicalParams) -> ModelParams:
    """Convert physical pipe/fluid data into the dimensionless model.

    h_e = 2 gamma cos(theta) / (rho g R) is the equilibrium height,
    tau = 8 mu h_e / (rho g R^2) the viscous time scale, and
    omega = h_e / (g tau^2). omega is cross-checked against its
    Bond/Ohnesorge form (Bo/Oh)^2 / (128 cos theta).
    """
    cos_t = math.cos(p.theta)
    h_e = 2.0 * p.gamma * cos_t / (p.rho * p.g * p.R)
    tau = 8.0 * p.mu * h_e / (p.rho * p.g * p.R**2)
    omega = h_e / (p.g * tau**2)
    beta = 1.0 / (1.0 + 4.0 * p.L / p.R)
    Oh = p.mu / math.sqrt(p.R * p.rho * p.gamma)
    Bo = p.rho * p.g * p.R**2 / p.gamma
    omega_check = (Bo / Oh) ** 2 / (128.0 * cos_t)
    if abs(omega - omega_check) > _OMEGA_CONSISTENCY_RTOL * abs(omega):
        raise ConsistencyError(
            f"omega formulas disagree: {omega!r} (direct) vs "
            f"{omega_check!r} (Bo/Oh form)"
        )
    alpha = p.h0 / h_e
    if alpha > ALPHA_MAX:
        raise DomainError(
            "h0", f"initial height gives alpha = {alpha:.6g} > {ALPHA_MAX}"
        )
    if alpha > SMALL_ALPHA_GUIDELINE:
        warnings.warn(
            f"alpha = h0/h_e = {alpha:.6g} is not small; the model assumes "
            "an initial column much shorter than the equilibrium height",
            UserWarning,
            stacklevel=2,
        )
    return ModelParams(omega=omega, beta=beta, alpha=alpha,
                       h_e=h_e, tau=tau, Oh=Oh, Bo=Bo)


def critical_omega(beta: float) -> float:
    """Critical omega* = beta^2/4 where the settling style changes."""
    if not math.isfinite(beta) or beta <= 0.0:
        raise DomainError("beta", f"must be finite and > 0, got {beta!r}")
    return beta * beta / 4.0


def u_from_H(H: float) -> float:
    """Transformed height u = H^2/2."""
    if H < 0.0:
        raise DomainError("H", f"must be >= 0, got {H!r}")
    return 0.5 * H * H


def H_from_u(u: float) -> float:
    """Column height H = sqrt(2u)."""
    if u < 0.0:
        raise DomainError("u", f"must be >= 0, got {u!r}")
    return math.sqrt(2.0 * u)


def physical_params_from_json(obj: dict) -> PhysicalParams:
    """Build PhysicalParams from the JSON input object.

    The object must have exactly the keys rho, mu, gamma, theta_deg, g, R,
    L, h0 (SI units; the contact angle in degrees).
    """
    if not isinstance(obj, dict):
        raise DomainError("input", "expected a JSON object")
    expected = set(PHYSICAL_JSON_KEYS)
    got = set(obj)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        parts = []
        if missing:
            parts.append(f"missing keys {missing}")
        if extra:
            parts.append(f"unexpected keys {extra}")
        raise DomainError("input", "; ".join(parts))
    values = {}
    for key in PHYSICAL_JSON_KEYS:
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DomainError(key, f"must be a number, got {value!r}")
        values[key] = float(value)
    theta = math.radians(values.pop("theta_deg"))
    return PhysicalParams(theta=theta, **values)


def model_params_report(mp: ModelParams) -> dict:
    """Flat report dict with every ModelParams field."""
    return {
        "omega": mp.omega,
        "beta": mp.beta,
        "alpha": mp.alpha,
        "h_e": mp.h_e,
        "tau": mp.tau,
        "Oh": mp.Oh,
        "Bo": mp.Bo,
        "omega_star": mp.omega_star,
    }
