"""Right-hand sides and coordinate transforms for the capillary model.

The stiff-free working coordinates are u = H^2/2 with the scaled time
s = T/sqrt(omega), in which the model reads

    u'' + (beta/sqrt(omega)) u' + sqrt(2 u) = 1.

The H-form is kept for cross-validation and output only; it is singular
at H = 0. The four reduced regimes (negligible gravity / inertia /
both / viscosity) are integrated in the analogous u-type coordinate
u* = (h*)^2/2 and come with closed-form or implicit oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, SingularityError

TWO_SQRT2_OVER_3 = 2.0 * math.sqrt(2.0) / 3.0

# Below this height the H-form right-hand side is numerically meaningless.
H_SINGULARITY_FLOOR = 1e-12


class State(NamedTuple):
    """Point (u, v) of the transformed phase space; v = du/ds."""

    u: float
    v: float


def _check_model_args(omega: float, beta: float, epsilon: float = 0.0):
    if not omega > 0.0:
        raise DomainError("omega", f"must be > 0, got {omega!r}")
    if not beta > 0.0:
        raise DomainError("beta", f"must be > 0, got {beta!r}")
    if not epsilon >= 0.0:
        raise DomainError("epsilon", f"must be >= 0, got {epsilon!r}")


def rhs_u(state, omega: float, beta: float, epsilon: float = 0.0) -> State:
    """Right-hand side of the (optionally regularized) u-form model.

    Returns (u', v') = (v, 1 - (beta/sqrt(omega)) v - sqrt(2 max(u,0) + epsilon)).
    The positive-part clamp makes this a total function of (u, v), so tiny
    negative excursions cannot poison the integrator.
    """
    _check_model_args(omega, beta, epsilon)
    u, v = state
    dv = 1.0 - (beta / math.sqrt(omega)) * v - math.sqrt(2.0 * max(u, 0.0) + epsilon)
    return State(v, dv)


def rhs_H(H: float, Hdot: float, omega: float, beta: float) -> float:
    """Second derivative H'' = [1 - H - beta H H' - omega H'^2] / (omega H).

    Only valid away from H = 0; callers starting from a dry pipe must use
    the u-form instead.
    """
    _check_model_args(omega, beta)
    if H <= H_SINGULARITY_FLOOR:
        raise SingularityError(
            f"H = {H!r} is too close to the H = 0 singularity; "
            "switch to u-coordinates"
        )
    return (1.0 - H - beta * H * Hdot - omega * Hdot * Hdot) / (omega * H)


def energy(u: float, v: float) -> float:
    """First integral E = v^2/2 - u + (2 sqrt2 / 3) u^{3/2} of the undamped model.

    Nonincreasing along damped trajectories. Accepts slightly negative u
    (clamped) so it can be evaluated on raw integrator output.
    """
    up = max(u, 0.0)
    return 0.5 * v * v - u + TWO_SQRT2_OVER_3 * up * math.sqrt(up)


class RegimeCase(IntEnum):
    """The four reduced flow regimes."""

    NEGLIGIBLE_GRAVITY = 1
    NEGLIGIBLE_INERTIA = 2
    NEGLIGIBLE_GRAVITY_INERTIA = 3
    NEGLIGIBLE_VISCOSITY = 4


_FIRST_ORDER_CASES = (RegimeCase.NEGLIGIBLE_INERTIA,
                      RegimeCase.NEGLIGIBLE_GRAVITY_INERTIA)

_FIXED_EXPONENTS = {
    RegimeCase.NEGLIGIBLE_GRAVITY: (Fraction(1), Fraction(1, 2)),
    RegimeCase.NEGLIGIBLE_INERTIA: (Fraction(0), Fraction(0)),
    RegimeCase.NEGLIGIBLE_VISCOSITY: (Fraction(1, 2), Fraction(0)),
}


@dataclass(frozen=True)
class ExponentFamily:
    """One-parameter scaling family a = 2b with a in the open interval (0, 1)."""

    a_min: Fraction = Fraction(0)
    a_max: Fraction = Fraction(1)

    def pair_for(self, b: Fraction) -> tuple[Fraction, Fraction]:
        a = 2 * Fraction(b)
        if not self.a_min < a < self.a_max:
            raise DomainError("b", f"a = 2b = {a} falls outside ({self.a_min}, {self.a_max})")
        return a, Fraction(b)

    def contains(self, a: Fraction, b: Fraction) -> bool:
        return a == 2 * b and self.a_min < a < self.a_max


def regime_exponents(case: RegimeCase):
    """Scaling exponents (a, b) of a regime; case 3 returns its whole family."""
    case = RegimeCase(case)
    if case is RegimeCase.NEGLIGIBLE_GRAVITY_INERTIA:
        return ExponentFamily()
    return _FIXED_EXPONENTS[case]


@dataclass(frozen=True)
class RegimeSpec:
    """A regime together with one admissible exponent pair."""

    case: RegimeCase
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "case", RegimeCase(self.case))
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        exps = regime_exponents(self.case)
        if isinstance(exps, ExponentFamily):
            if not exps.contains(self.a, self.b):
                raise DomainError(
                    "a", f"case 3 needs a = 2b with a in (0, 1), got (a, b) = ({self.a}, {self.b})"
                )
        elif (self.a, self.b) != exps:
            raise DomainError("a", f"case {int(self.case)} fixes (a, b) = {exps}")

    @classmethod
    def standard(cls, case: RegimeCase, b: Fraction | None = None) -> "RegimeSpec":
        case = RegimeCase(case)
        if case is RegimeCase.NEGLIGIBLE_GRAVITY_INERTIA:
            b = Fraction(1, 4) if b is None else Fraction(b)
            a, b = ExponentFamily().pair_for(b)
            return cls(case, a, b)
        a, b_fixed = _FIXED_EXPONENTS[case]
        return cls(case, a, b_fixed)

    @property
    def first_order(self) -> bool:
        return self.case in _FIRST_ORDER_CASES


def regime_is_first_order(case: RegimeCase) -> bool:
    """Cases 2 and 3 reduce to first-order equations in u* = (h*)^2/2."""
    return RegimeCase(case) in _FIRST_ORDER_CASES


def rhs_regime(spec: RegimeSpec, state, beta: float) -> tuple:
    """Reduced-regime right-hand side in u* coordinates.

    Second-order cases return (du*/dt*, dv*/dt*); first-order cases ignore
    v and return the 1-tuple (du*/dt*,). Negative u* is clamped inside the
    square roots, as in rhs_u.
    """
    if not beta > 0.0:
        raise DomainError("beta", f"must be > 0, got {beta!r}")
    u, v = state
    up = max(u, 0.0)
    case = spec.case
    if case is RegimeCase.NEGLIGIBLE_GRAVITY:
        return (v, 1.0 - beta * v)
    if case is RegimeCase.NEGLIGIBLE_INERTIA:
        return ((1.0 - math.sqrt(2.0 * up)) / beta,)
    if case is RegimeCase.NEGLIGIBLE_GRAVITY_INERTIA:
        return (1.0 / beta,)
    return (v, 1.0 - math.sqrt(2.0 * up))


def case1_closed_form_u(t, beta: float, u0: float = 0.0):
    """Exact solution of u'' + beta u' = 1 with u(0) = u0, u'(0) = 0."""
    import numpy as np

    t = np.asarray(t, dtype=float)
    return u0 + t / beta - (1.0 - np.exp(-beta * t)) / beta**2


def case2_implicit_time(h, beta: float, h0: float):
    """Separable time-height relation t*(h*) for the inertia-free regime.

    Valid for heights in [0, 1); diverges logarithmically as h* -> 1.
    """
    import numpy as np

    h = np.asarray(h, dtype=float)
    anti = lambda x: -x - np.log1p(-x)
    return beta * (anti(h) - anti(h0))


def case3_closed_form_h(t, beta: float, h0: float = 0.0):
    """Square-root growth h*(t*) = sqrt(2 t*/beta + h0^2)."""
    import numpy as np

    t = np.asarray(t, dtype=float)
    return np.sqrt(2.0 * t / beta + h0 * h0)


def case4_energy(u, v):
    """Conserved quantity of the undamped regime; same form as `energy`."""
    import numpy as np

    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    up = np.maximum(u, 0.0)
    return 0.5 * v * v - u + TWO_SQRT2_OVER_3 * up * np.sqrt(up)
