"""Fixed-point solution of the model as a Volterra integral equation.

The trajectory u solves u = T(u) with

    [T(f)](s) = alpha^2/2 + (sqrt(omega)/beta) *
                integral_0^s [1 - exp(-beta (s-t)/sqrt(omega))]
                             (1 - sqrt(2 [f(t)]_+)) dt.

T is discretized by composite trapezoid on a uniform grid with the kernel
evaluated exactly at the nodes, and solved by plain successive
substitution. The operator is order-reversing; on [0, s*] with s* =
min(1/2, sqrt(omega)/beta) it maps the parabola interval
[s^2/6, s^2/2] into itself and satisfies the sublinear scaling bound
T(lambda f) <= lambda^{-1/2} T(f), both of which are checkable nodewise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .params import ALPHA_MAX

DEFAULT_GRID_NODES = 4096  # intervals per solve => step = horizon/4096
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10000

SELF_MAP_SLACK = 1e-10
SCALING_SLACK = 1e-12


@dataclass(frozen=True)
class GridFunction:
    """Values on a uniform grid 0 = s_0 < ... < s_N."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.size < 3:
            raise DomainError("grid", "need at least two intervals")
        if values.shape != grid.shape:
            raise DomainError("values", "shape must match the grid")
        steps = np.diff(grid)
        h = grid[1] - grid[0]
        if grid[0] != 0.0 or h <= 0.0 or np.any(
                np.abs(steps - h) > 1e-12 * max(1.0, grid[-1])):
            raise DomainError("grid", "must be uniform and start at 0")
        if not np.all(np.isfinite(values)):
            raise DomainError("values", "must be finite")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])

    @classmethod
    def from_callable(cls, fn, horizon: float, nodes: int) -> "GridFunction":
        grid = np.linspace(0.0, horizon, nodes + 1)
        return cls(grid, np.asarray(fn(grid), dtype=float))


class KernelOperator:
    """Precomputed trapezoid discretization of T on one grid.

    Row i holds the trapezoid weights for integral_0^{s_i}; the kernel
    vanishes on the diagonal, so only the t = 0 endpoint needs halving.
    Building the dense lower-triangular matrix costs O(N^2) memory, which
    is the intended desk scale (N <= 2^14).
    """

    def __init__(self, grid: np.ndarray, omega: float, beta: float):
        if not omega > 0.0:
            raise DomainError("omega", f"must be > 0, got {omega!r}")
        if not beta > 0.0:
            raise DomainError("beta", f"must be > 0, got {beta!r}")
        grid = np.asarray(grid, dtype=float)
        c = math.sqrt(omega) / beta
        lag = grid[:, None] - grid[None, :]
        kernel = c * -np.expm1(-np.maximum(lag, 0.0) / c)
        kernel[lag <= 0.0] = 0.0
        h = grid[1] - grid[0]
        kernel *= h
        kernel[:, 0] *= 0.5
        self.grid = grid
        self.weights = kernel
        self.omega = omega
        self.beta = beta

    def apply(self, values: np.ndarray, alpha: float) -> np.ndarray:
        forcing = 1.0 - np.sqrt(2.0 * np.maximum(values, 0.0))
        out = self.weights @ forcing
        out += 0.5 * alpha * alpha
        return out


def _check_alpha(alpha: float):
    if not 0.0 <= alpha <= ALPHA_MAX:
        raise DomainError("alpha", f"must lie in [0, {ALPHA_MAX}], got {alpha!r}")


def apply_T(f: GridFunction, omega: float, beta: float, alpha: float) -> GridFunction:
    """One application of the integral operator to a grid function."""
    _check_alpha(alpha)
    op = KernelOperator(f.grid, omega, beta)
    return GridFunction(f.grid, op.apply(f.values, alpha))


@dataclass(frozen=True)
class PicardResult:
    """Converged iterate plus the sup-norm difference log."""

    solution: GridFunction
    diffs: np.ndarray
    iterations: int
    step: float

    @property
    def final_diff(self) -> float:
        return float(self.diffs[-1]) if self.diffs.size else 0.0


def picard_solve(omega: float, beta: float, alpha: float, horizon: float,
                 step: float | None = None, tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER,
                 operator: KernelOperator | None = None) -> PicardResult:
    """Iterate f <- T(f) from the constant alpha^2/2 until sup-norm stalls.

    A prebuilt KernelOperator may be passed to amortize the O(N^2) kernel
    across solves that share (grid, omega, beta).
    """
    if not tol > 0.0:
        raise DomainError("tol", f"must be > 0, got {tol!r}")
    if not horizon > 0.0:
        raise DomainError("horizon", f"must be > 0, got {horizon!r}")
    if max_iter < 1:
        raise DomainError("max_iter", f"must be >= 1, got {max_iter!r}")
    _check_alpha(alpha)
    if operator is None:
        if step is None:
            nodes = DEFAULT_GRID_NODES
        else:
            nodes = int(round(horizon / step))
            if nodes < 2 or abs(nodes * step - horizon) > 1e-9 * max(1.0, horizon):
                raise DomainError("step", f"{step!r} does not tile [0, {horizon!r}]")
        grid = np.linspace(0.0, horizon, nodes + 1)
        operator = KernelOperator(grid, omega, beta)
    else:
        grid = operator.grid

    values = np.full(grid.shape, 0.5 * alpha * alpha)
    diffs = []
    for _ in range(max_iter):
        new_values = operator.apply(values, alpha)
        diff = float(np.max(np.abs(new_values - values)))
        diffs.append(diff)
        values = new_values
        if diff < tol:
            return PicardResult(solution=GridFunction(grid, values),
                                diffs=np.asarray(diffs), iterations=len(diffs),
                                step=float(grid[1] - grid[0]))
    raise ConvergenceError(len(diffs), diffs[-1])


def uniqueness_window(omega: float, beta: float) -> float:
    """s* = min(1/2, sqrt(omega)/beta), the horizon of the order-interval argument."""
    return min(0.5, math.sqrt(omega) / beta)


def bracket_lower(s):
    """Lower parabola s^2/6 of the order interval."""
    s = np.asarray(s, dtype=float)
    return s * s / 6.0


def bracket_upper(s):
    """Upper parabola s^2/2 of the order interval."""
    s = np.asarray(s, dtype=float)
    return s * s / 2.0


@dataclass(frozen=True)
class OrderIntervalReport:
    """Nodewise margins of T(upper) >= lower and T(lower) <= upper."""

    s_star: float
    lower_margin: float
    upper_margin: float
    holds: bool


def order_interval_check(omega: float, beta: float, nodes: int = 512,
                         slack: float = SELF_MAP_SLACK) -> OrderIntervalReport:
    """Verify the self-mapping inequalities on [0, s*] nodewise."""
    s_star = uniqueness_window(omega, beta)
    grid = np.linspace(0.0, s_star, nodes + 1)
    op = KernelOperator(grid, omega, beta)
    lower = bracket_lower(grid)
    upper = bracket_upper(grid)
    t_upper = op.apply(upper, 0.0)
    t_lower = op.apply(lower, 0.0)
    lower_margin = float(np.min(t_upper - lower))
    upper_margin = float(np.min(upper - t_lower))
    holds = lower_margin >= -slack and upper_margin >= -slack
    return OrderIntervalReport(s_star=s_star, lower_margin=lower_margin,
                               upper_margin=upper_margin, holds=holds)


@dataclass(frozen=True)
class ScalingReport:
    """Worst violation of T(lambda f) <= lambda^{-1/2} T(f)."""

    lam: float
    max_violation: float
    holds: bool


def check_scaling_inequality(f: GridFunction, lam: float, omega: float,
                             beta: float, slack: float = SCALING_SLACK) -> ScalingReport:
    """Nodewise scaling bound for f inside the order interval on [0, s*].

    Violations are reported, never raised.
    """
    if not 0.0 < lam < 1.0:
        raise DomainError("lam", f"must lie in (0, 1), got {lam!r}")
    s_star = uniqueness_window(omega, beta)
    if f.grid[-1] > s_star + 1e-12:
        raise DomainError("f", f"grid extends past s* = {s_star!r}")
    lower = bracket_lower(f.grid)
    upper = bracket_upper(f.grid)
    if np.any(f.values < lower - 1e-12) or np.any(f.values > upper + 1e-12):
        raise DomainError("f", "values must lie inside the order interval")
    op = KernelOperator(f.grid, omega, beta)
    t_scaled = op.apply(lam * f.values, 0.0)
    t_plain = op.apply(f.values, 0.0)
    violation = t_scaled - t_plain / math.sqrt(lam)
    max_violation = float(np.max(violation))
    return ScalingReport(lam=lam, max_violation=max_violation,
                         holds=max_violation <= slack)
