"""Integrator, trajectory, and convergence-detection tests."""

import pytest
from hypothesis import given, settings

from discharge_game.dynamics import (
    IntegrationError,
    IntegratorConfig,
    Sample,
    Trajectory,
    detect_convergence,
    integrate,
    rk4_step,
    time_to_threshold,
)
from discharge_game.experiments import preset
from discharge_game.model import ModelParams, StrategyState
from discharge_game.stability import Classification, pure_equilibria, stability_report

from strategies import model_params

CONDITION1 = preset("Condition1").params
MID = StrategyState(0.5, 0.5, 0.5)

SCENARIO_TARGETS = [
    ("Condition1", (0.0, 0.0, 1.0)),
    ("Condition2", (1.0, 0.0, 1.0)),
    ("Condition3", (1.0, 1.0, 1.0)),
]


def constant_trajectory(state: StrategyState, n: int = 1, dt: float = 0.01) -> Trajectory:
    config = IntegratorConfig(dt=dt, t_max=max(dt, n * dt))
    samples = tuple(Sample(i * dt, state) for i in range(n))
    return Trajectory(samples, CONDITION1, config)


class TestIntegratorConfig:
    def test_defaults(self):
        config = IntegratorConfig()
        assert (config.dt, config.t_max) == (0.01, 200.0)
        assert (config.convergence_eps, config.convergence_window) == (1e-4, 100)
        assert config.threshold == 0.01

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"dt": 0.0},
            {"dt": -0.1},
            {"t_max": 0.001},
            {"convergence_eps": 0.0},
            {"convergence_window": 0},
            {"threshold": 0.5},
            {"threshold": 0.0},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ValueError):
            IntegratorConfig(**kwargs)


class TestRk4Step:
    @given(params=model_params())
    def test_vertices_are_absorbing(self, params):
        for point in pure_equilibria():
            assert rk4_step(params, point.coords, 0.05) == point.coords

    def test_zero_field_keeps_state(self):
        zero = ModelParams(*([0.0] * 11))
        assert rk4_step(zero, MID, 0.01) == MID

    def test_step_direction_matches_field_signs(self):
        after = rk4_step(CONDITION1, MID, 0.01)
        # Field at the midpoint is (-4.5, -3.875, +4.625).
        assert after.x < MID.x
        assert after.y < MID.y
        assert after.z > MID.z

    def test_rejects_nonpositive_dt(self):
        with pytest.raises(ValueError, match="positive"):
            rk4_step(CONDITION1, MID, 0.0)

    def test_unstable_step_raises(self):
        with pytest.raises(IntegrationError, match="unit cube"):
            rk4_step(CONDITION1, MID, 10.0)


class TestIntegrate:
    @pytest.mark.parametrize("name, target", SCENARIO_TARGETS)
    def test_scenarios_reach_their_vertices(self, name, target):
        scenario = preset(name)
        traj = integrate(scenario.params, scenario.initial)
        final = traj.final_state().as_tuple()
        assert max(abs(a - b) for a, b in zip(final, target)) < 1e-3

    def test_time_grid_starts_at_zero_and_increases(self):
        traj = integrate(CONDITION1, MID, IntegratorConfig(t_max=1.0))
        times = [s.t for s in traj.samples]
        assert times[0] == 0.0
        assert all(b > a for a, b in zip(times, times[1:]))
        assert len(times) == 101

    def test_samples_stay_in_cube(self):
        traj = integrate(CONDITION1, MID)
        for _, state in traj.samples:
            assert all(0.0 <= v <= 1.0 for v in state.as_tuple())

    @pytest.mark.parametrize("name", [n for n, _ in SCENARIO_TARGETS])
    def test_opposition_probability_never_decreases(self, name):
        scenario = preset(name)
        traj = integrate(scenario.params, scenario.initial)
        zs = [s.state.z for s in traj.samples]
        assert all(b >= a - 1e-9 for a, b in zip(zs, zs[1:]))

    def test_vertex_start_is_constant(self):
        vertex = StrategyState(1.0, 0.0, 1.0)
        traj = integrate(CONDITION1, vertex, IntegratorConfig(t_max=2.0))
        assert all(s.state == vertex for s in traj.samples)

    def test_early_stop_on_convergence(self):
        full = integrate(CONDITION1, MID, IntegratorConfig(stop_on_convergence=False))
        stopped = integrate(CONDITION1, MID)
        assert len(stopped.samples) < len(full.samples)
        assert len(full.samples) == 20001

    @pytest.mark.parametrize("name, target", SCENARIO_TARGETS)
    def test_step_halving_changes_little(self, name, target):
        scenario = preset(name)
        coarse = integrate(
            scenario.params,
            scenario.initial,
            IntegratorConfig(dt=0.01, t_max=50.0, stop_on_convergence=False),
        )
        fine = integrate(
            scenario.params,
            scenario.initial,
            IntegratorConfig(dt=0.005, t_max=50.0, stop_on_convergence=False),
        )
        diff = max(
            abs(a - b)
            for a, b in zip(coarse.final_state().as_tuple(), fine.final_state().as_tuple())
        )
        assert diff <= 1e-6

    @pytest.mark.parametrize("name, target", SCENARIO_TARGETS)
    def test_detected_limit_is_the_ess(self, name, target):
        scenario = preset(name)
        traj = integrate(scenario.params, scenario.initial)
        result = detect_convergence(traj)
        assert result.converged
        report = stability_report(scenario.params)
        by_label = {r.point.label: r for r in report.vertices}
        assert by_label[result.limit.label].classification is Classification.ESS

    @settings(max_examples=20, deadline=None)
    @given(params=model_params(max_value=50.0))
    def test_random_params_stay_in_cube_with_monotone_z(self, params):
        traj = integrate(params, MID, IntegratorConfig(t_max=3.0))
        zs = []
        for _, state in traj.samples:
            assert all(0.0 <= v <= 1.0 for v in state.as_tuple())
            zs.append(state.z)
        assert all(b >= a - 1e-9 for a, b in zip(zs, zs[1:]))


class TestDetectConvergence:
    def test_constant_trajectory_at_vertex(self):
        traj = constant_trajectory(StrategyState(0.0, 0.0, 1.0), n=1)
        result = detect_convergence(traj)
        assert result.converged
        assert result.limit.label == "gamma4"
        assert result.t_converge == 0.0

    def test_condition1_converges_to_gamma4(self):
        traj = integrate(CONDITION1, MID)
        result = detect_convergence(traj)
        assert result.converged
        assert result.limit.label == "gamma4"
        assert result.t_converge > 0.0

    def test_short_run_is_not_converged(self):
        traj = integrate(CONDITION1, MID, IntegratorConfig(t_max=0.1))
        result = detect_convergence(traj)
        assert not result.converged
        assert result.limit is None and result.t_converge is None

    def test_empty_trajectory_rejected(self):
        traj = Trajectory((), CONDITION1, IntegratorConfig())
        with pytest.raises(ValueError, match="no samples"):
            detect_convergence(traj)

    def test_t_converge_marks_permanent_entry(self):
        traj = integrate(CONDITION1, MID)
        result = detect_convergence(traj)
        eps = traj.config.convergence_eps
        limit = result.limit.coords.as_tuple()
        for t, state in traj.samples:
            inside = max(abs(a - b) for a, b in zip(state.as_tuple(), limit)) <= eps
            if t >= result.t_converge:
                assert inside
        before = [s for s in traj.samples if s.t < result.t_converge]
        if before:
            last_out = before[-1]
            assert max(abs(a - b) for a, b in zip(last_out.state.as_tuple(), limit)) > eps


class TestTimeToThreshold:
    def test_constant_at_target(self):
        traj = constant_trajectory(StrategyState(0.0, 0.0, 1.0), n=3)
        assert time_to_threshold(traj, "z", 1, 0.01) == 0.0

    def test_condition1_x_reaches_zero(self):
        traj = integrate(CONDITION1, MID)
        t = time_to_threshold(traj, "x", 0, 0.01)
        assert t is not None and t > 0.0

    def test_condition1_x_never_reaches_one(self):
        traj = integrate(CONDITION1, MID)
        assert time_to_threshold(traj, "x", 1, 0.01) is None

    def test_band_entry_must_be_permanent(self):
        wobble = Trajectory(
            (
                Sample(0.0, StrategyState(0.005, 0.5, 0.5)),
                Sample(0.01, StrategyState(0.5, 0.5, 0.5)),
                Sample(0.02, StrategyState(0.004, 0.5, 0.5)),
            ),
            CONDITION1,
            IntegratorConfig(),
        )
        assert time_to_threshold(wobble, "x", 0, 0.01) == 0.02

    @pytest.mark.parametrize("kwargs", [
        {"coordinate": "w", "target": 0, "threshold": 0.01},
        {"coordinate": "x", "target": 0.5, "threshold": 0.01},
        {"coordinate": "x", "target": 0, "threshold": 0.5},
        {"coordinate": "x", "target": 0, "threshold": 0.0},
    ])
    def test_rejects_bad_arguments(self, kwargs):
        traj = constant_trajectory(StrategyState(0.0, 0.0, 1.0), n=2)
        with pytest.raises(ValueError):
            time_to_threshold(traj, **kwargs)
