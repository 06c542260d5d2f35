import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from washburn import params as params_module
from washburn.errors import ConsistencyError, DomainError, InconclusiveError
from washburn.integrate import integrate
from washburn.params import ModelParams
from washburn.stability import (ApproachKind, BasinSpec, PointKind,
                                audit_trajectory, basin, classify_approach,
                                linearize, lyapunov, lyapunov_columns)
from washburn.verify import check_stability_classification_boundary, CheckFailure


class TestLinearize:
    def test_inflected_node_anchor(self):
        report = linearize(0.25, 1.0)
        assert report.kind is PointKind.STABLE_INFLECTED_NODE
        assert report.lambda1 == report.lambda2 == -1.0
        assert report.omega_star == 0.25
        assert report.discriminant == 0.0

    def test_spiral(self):
        report = linearize(1.0, 1.0)
        assert report.kind is PointKind.STABLE_SPIRAL
        assert report.lambda1 == pytest.approx(complex(-0.5, -math.sqrt(3) / 2))
        assert report.lambda2 == pytest.approx(complex(-0.5, math.sqrt(3) / 2))

    def test_node(self):
        report = linearize(0.125, 1.0)
        assert report.kind is PointKind.STABLE_NODE
        assert report.lambda1.imag == report.lambda2.imag == 0.0
        assert report.lambda1.real == pytest.approx(-2.4142135623730950488, rel=1e-12)
        assert report.lambda2.real == pytest.approx(-0.4142135623730950488, rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            linearize(0.0, 1.0)
        with pytest.raises(DomainError):
            linearize(1.0, -0.5)

    @given(st.floats(1e-3, 2.0), st.floats(1e-3, 4.0))
    def test_eigenvalues_solve_characteristic_polynomial(self, beta, omega):
        report = linearize(omega, beta)
        gamma = beta / math.sqrt(omega)
        for lam in (report.lambda1, report.lambda2):
            assert abs(lam * lam + gamma * lam + 1.0) < 1e-9
            assert lam.real < 0.0

    @given(st.floats(1e-3, 2.0), st.floats(1e-3, 4.0))
    def test_real_part_mean_identity(self, beta, omega):
        report = linearize(omega, beta)
        mean = 0.5 * (report.lambda1.real + report.lambda2.real)
        assert mean == pytest.approx(-beta / (2.0 * math.sqrt(omega)), abs=1e-12)

    def test_classification_switch_at_critical_omega(self):
        beta = 1.0
        star = params_module.critical_omega(beta)
        assert linearize(star - 1e-6, beta).kind is PointKind.STABLE_NODE
        assert linearize(star + 1e-6, beta).kind is PointKind.STABLE_SPIRAL

    def test_boundary_check_detects_corrupted_omega_star(self, monkeypatch):
        check_stability_classification_boundary()
        monkeypatch.setattr(params_module, "critical_omega", lambda b: b * b / 2.0)
        with pytest.raises(CheckFailure):
            check_stability_classification_boundary()


class TestLyapunov:
    def test_equilibrium_is_exact_zero(self):
        E, V = lyapunov(0.5, 0.0)
        assert V == 0.0
        assert E == pytest.approx(-1.0 / 6.0, abs=1e-15)

    def test_origin(self):
        E, V = lyapunov(0.0, 0.0)
        assert E == 0.0
        assert V == pytest.approx(1.0 / 6.0, abs=1e-16)

    def test_top_of_range(self):
        E, V = lyapunov(9.0 / 8.0, 0.0)
        assert E == pytest.approx(0.0, abs=1e-15)
        assert V == pytest.approx(1.0 / 6.0, abs=1e-15)

    def test_rejects_negative_u(self):
        with pytest.raises(DomainError):
            lyapunov(-1e-9, 0.0)

    @given(st.floats(0.0, 9.0 / 8.0), st.floats(-2.0, 2.0))
    def test_positive_away_from_equilibrium(self, u, v):
        if abs(u - 0.5) + abs(v) <= 1e-6:
            return
        _, V = lyapunov(u, v)
        assert V > 0.0

    def test_factored_and_direct_forms_agree(self):
        rng = np.random.default_rng(3)
        u = rng.uniform(0.0, 9.0 / 8.0, 20000)
        v = rng.uniform(-2.0, 2.0, 20000)
        E, V = lyapunov_columns(u, v)
        direct = E + 1.0 / 6.0
        gap = np.abs(direct - V) / np.maximum(1.0, np.abs(V))
        assert np.max(gap) <= 1e-13


class TestBasin:
    def test_alpha_zero(self):
        spec = basin(0.0)
        assert spec.C == 1.0 / 6.0
        assert spec.u_min == 0.0
        assert spec.u_max == 9.0 / 8.0

    def test_alpha_one_collapses(self):
        spec = basin(1.0)
        assert spec.C == 0.0
        assert spec.u_min == pytest.approx(0.5, abs=1e-15)
        assert spec.u_max == pytest.approx(0.5, abs=1e-15)

    def test_alpha_three_halves(self):
        spec = basin(1.5)
        assert spec.C == pytest.approx(1.0 / 6.0, abs=1e-15)
        assert spec.u_min == 0.0
        assert spec.u_max == 9.0 / 8.0

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            basin(-0.1)
        with pytest.raises(DomainError):
            basin(1.6)

    @given(st.floats(0.0, 1.5))
    def test_level_equation_residual(self, alpha):
        spec = basin(alpha)  # BasinSpec itself validates the residual
        assert 0.0 <= spec.u_min <= 0.5 + 1e-12
        assert 0.5 - 1e-12 <= spec.u_max <= 9.0 / 8.0 + 1e-12

    def test_bad_bounds_rejected(self):
        with pytest.raises(ConsistencyError):
            BasinSpec(C=1.0 / 6.0, u_min=0.2, u_max=9.0 / 8.0)


class TestClassify:
    def test_at_equilibrium(self):
        traj = integrate(ModelParams(1.0, 1.0, 1.0), horizon=20.0)
        report = classify_approach(traj)
        assert report.kind is ApproachKind.AT_EQUILIBRIUM
        assert report.final_distance == 0.0

    def test_subcritical_monotone(self):
        traj = integrate(ModelParams(0.1, 1.0, 0.0), horizon=40.0,
                         sample_step=0.02)
        assert classify_approach(traj).kind is ApproachKind.MONOTONE

    def test_supercritical_oscillatory(self):
        traj = integrate(ModelParams(0.5, 0.5, 0.0), horizon=40.0,
                         sample_step=0.02)
        report = classify_approach(traj)
        assert report.kind is ApproachKind.OSCILLATORY
        assert len(report.crossings) >= 2

    def test_unsettled_horizon_is_inconclusive(self):
        traj = integrate(ModelParams(1.0, 1.0, 0.0), horizon=3.0)
        with pytest.raises(InconclusiveError, match="settled"):
            classify_approach(traj)

    def test_single_crossing_is_inconclusive(self):
        # Slightly supercritical: the first crossing has happened by s = 12
        # but the return crossing has not, and the run has settled.
        traj = integrate(ModelParams(0.26, 1.0, 0.0), horizon=12.0,
                         tolerances=(1e-12, 1e-10), sample_step=0.01)
        assert len(traj.crossings) == 1
        with pytest.raises(InconclusiveError, match="one"):
            classify_approach(traj)


class TestAudit:
    def test_dry_start_stays_inside_basin(self):
        traj = integrate(ModelParams(1.0, 1.0, 0.0), horizon=30.0,
                         sample_step=0.01)
        audit = audit_trajectory(traj, basin(0.0))
        assert audit.max_level_excess <= 1e-8
        assert audit.max_lyapunov_rise <= 1e-8

    def test_equilibrium_audit_is_trivial(self):
        traj = integrate(ModelParams(1.0, 1.0, 1.0), horizon=20.0)
        audit = audit_trajectory(traj, basin(1.0))
        assert np.max(np.abs(traj.V)) == 0.0
        assert audit.final_distance == 0.0

    def test_top_alpha_converges(self):
        traj = integrate(ModelParams(1.0, 1.0, 1.5), horizon=60.0,
                         sample_step=0.01)
        audit = audit_trajectory(traj, basin(1.5))
        assert audit.max_level_excess <= 1e-8
        assert audit.final_distance < 1e-5

    def test_start_outside_basin_rejected(self):
        small_basin = basin(1.0)
        outside = integrate(ModelParams(1.0, 1.0, 0.0), horizon=5.0)
        with pytest.raises(DomainError):
            audit_trajectory(outside, small_basin)
        inside = integrate(ModelParams(1.0, 1.0, 1.0), horizon=5.0)
        audit_trajectory(inside, small_basin)
