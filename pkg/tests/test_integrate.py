import math

import numpy as np
import pytest

from washburn.errors import DomainError, HorizonError
from washburn.integrate import (DEFAULT_TOLERANCES, Crossing, continuous_dependence,
                                default_horizon, detect_crossings, integrate)
from washburn.params import ModelParams
from washburn.stability import lyapunov


def mp(omega, beta, alpha):
    return ModelParams(omega=omega, beta=beta, alpha=alpha)


@pytest.fixture(scope="module")
def traj():
    return integrate(mp(1.0, 1.0, 0.5), horizon=12.0, sample_step=0.01)


class TestTrajectoryInvariants:
    def test_time_strictly_increasing(self, traj):
        assert np.all(np.diff(traj.s) > 0.0)

    def test_first_sample_matches_initial_data(self, traj):
        assert traj.s[0] == 0.0
        assert traj.u[0] == 0.5 * 0.5**2
        assert traj.v[0] == 0.0

    def test_derived_columns(self, traj):
        assert np.max(np.abs(traj.H - np.sqrt(2.0 * np.maximum(traj.u, 0.0)))) <= 1e-14
        assert np.max(np.abs(traj.T - traj.s * math.sqrt(1.0))) <= 1e-14
        E, V = zip(*(lyapunov(u, v) for u, v in zip(traj.u, traj.v)))
        assert np.array_equal(traj.E, np.array(E))
        assert np.array_equal(traj.V, np.array(V))

    def test_samples_on_step_multiples(self, traj):
        k = np.round(traj.s[:-1] / 0.01)
        assert np.max(np.abs(traj.s[:-1] - k * 0.01)) <= 1e-12
        assert traj.s[-1] == 12.0

    def test_immutable(self, traj):
        with pytest.raises(ValueError):
            traj.u[0] = 3.0


class TestIntegrate:
    def test_equilibrium_start_is_exactly_stationary(self):
        traj = integrate(mp(0.3, 0.7, 1.0), horizon=100.0, sample_step=0.5)
        assert np.max(np.abs(traj.u - 0.5)) < 1e-12
        assert np.max(np.abs(traj.v)) < 1e-12

    def test_dry_start_settles_to_equilibrium(self):
        traj = integrate(mp(1.0, 1.0, 0.0), horizon=30.0)
        assert abs(traj.u[-1] - 0.5) < 1e-6

    def test_dry_start_stays_below_bound(self):
        for beta, omega in [(1.0, 0.1), (1.0, 1.0), (0.5, 1.0)]:
            traj = integrate(mp(omega, beta, 0.0))
            assert np.max(traj.u) <= 9.0 / 8.0 - 1e-3

    def test_default_horizon_scaling(self):
        assert default_horizon(mp(1.0, 1.0, 0.0)) == pytest.approx(30.0)
        assert default_horizon(mp(0.25, 1.0, 0.0)) == pytest.approx(15.0)

    def test_horizon_cap(self):
        with pytest.raises(HorizonError):
            integrate(mp(1.0, 1.0, 0.0), horizon=2e6)

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            integrate(mp(1.0, 1.0, 0.0), horizon=-1.0)
        with pytest.raises(DomainError):
            integrate(mp(1.0, 1.0, 0.0), sample_step=0.0)
        with pytest.raises(DomainError):
            integrate(mp(1.0, 1.0, 0.0), epsilon=-1e-9)

    def test_energy_nonincreasing(self):
        traj = integrate(mp(1.0, 1.0, 0.0), horizon=30.0, sample_step=0.01)
        assert np.max(np.diff(traj.E)) <= 1e-8

    def test_regularized_equilibrium_shift(self):
        # With the square-root regularization the stationary level moves to
        # (1 - eps)/2, so the epsilon-run must end strictly below 1/2.
        eps = 1e-3
        traj = integrate(mp(1.0, 1.0, 0.0), epsilon=eps, horizon=40.0)
        assert traj.u[-1] == pytest.approx((1.0 - eps) / 2.0, abs=1e-6)

    def test_tolerance_halving_stability(self):
        coarse = integrate(mp(1.0, 1.0, 0.0), horizon=30.0)
        fine = integrate(mp(1.0, 1.0, 0.0), horizon=30.0,
                         tolerances=(DEFAULT_TOLERANCES[0] / 2.0,
                                     DEFAULT_TOLERANCES[1] / 2.0))
        assert abs(coarse.u[-1] - fine.u[-1]) < 10.0 * DEFAULT_TOLERANCES[1]


class TestCrossings:
    def test_equilibrium_has_no_crossings(self):
        traj = integrate(mp(1.0, 1.0, 1.0), horizon=50.0)
        assert traj.crossings == ()

    def test_subcritical_has_no_crossings(self):
        traj = integrate(mp(0.1, 1.0, 0.0), horizon=50.0, sample_step=0.01)
        assert len(traj.crossings) == 0

    def test_supercritical_oscillates(self):
        traj = integrate(mp(1.0, 1.0, 0.0), horizon=50.0, sample_step=0.01)
        assert len(traj.crossings) >= 2
        first = traj.crossings[0]
        assert first.direction == 1
        assert first.s == pytest.approx(1.861047, abs=1e-4)
        # alternating directions, strictly increasing times
        times = [c.s for c in traj.crossings]
        assert np.all(np.diff(times) > 0.0)
        assert all(a.direction == -b.direction
                   for a, b in zip(traj.crossings, traj.crossings[1:]))

    def test_refinement_hits_level(self):
        traj = integrate(mp(1.0, 1.0, 0.0), horizon=20.0, sample_step=0.01)
        for crossing in traj.crossings:
            u_at = float(traj.dense(crossing.s)[0])
            assert abs(u_at - 0.5) < 1e-9

    def test_detect_at_other_levels(self):
        traj = integrate(mp(1.0, 1.0, 0.0), horizon=30.0, sample_step=0.01)
        quarter = detect_crossings(traj, level=0.25)
        assert len(quarter) >= 1
        assert isinstance(quarter[0], Crossing)
        assert float(traj.dense(quarter[0].s)[0]) == pytest.approx(0.25, abs=1e-9)


class TestContinuousDependence:
    def test_identical_alpha_gives_zero(self):
        records = continuous_dependence(mp(1.0, 1.0, 0.0), 0.5, [0.5],
                                        horizon=10.0, sample_step=0.05)
        assert records[0].distance == 0.0

    def test_distances_shrink_with_alpha(self):
        records = continuous_dependence(mp(1.0, 1.0, 0.0), 0.0,
                                        [0.2, 0.1, 0.05, 0.025],
                                        horizon=20.0, sample_step=0.01)
        distances = [r.distance for r in records]
        assert all(b < a for a, b in zip(distances, distances[1:]))
        # the initial offset alpha^2/2 is a hard lower bound (the s = 0
        # sample) and the transient never more than doubles it here
        for record in records:
            assert record.alpha**2 / 2.0 <= record.distance <= record.alpha**2

    def test_near_equilibrium_perturbation(self):
        records = continuous_dependence(mp(1.0, 1.0, 1.0), 1.0,
                                        [1.0 + 1e-6, 1.0 - 1e-6],
                                        horizon=20.0, sample_step=0.01)
        for record in records:
            assert record.distance < 1e-4
            assert record.delta_alpha == pytest.approx(1e-6, rel=1e-6)


class TestCsvFormat:
    def test_seventeen_digit_csv(self, tmp_path):
        from washburn._format import write_csv
        from washburn.integrate import CSV_HEADER

        traj = integrate(mp(1.0, 1.0, 0.0), horizon=1.0, sample_step=0.5)
        path = tmp_path / "run.csv"
        write_csv(path, CSV_HEADER,
                  [traj.s, traj.u, traj.v, traj.H, traj.T, traj.E, traj.V])
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == "s,u,v,H,T,E,V"
        first = lines[1].split(",")
        assert first[0] == "0.0000000000000000e+00"
        assert len(first) == 7
        # 17 significant digits: d.dddddddddddddddde+xx
        mantissa = first[6].split("e")[0]
        assert len(mantissa.replace("-", "").replace(".", "")) == 17
        assert float(first[6]) == pytest.approx(1.0 / 6.0, abs=1e-15)
