"""Fixed-step RK4 integration of the replicator system.

Trajectories live in the unit cube: each face is invariant for the exact
flow, so the integrator clamps only round-off-sized excursions (budget
1e-9) and treats anything larger as an unstable step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, Optional

from .game import _field_xyz
from .model import ModelParams, StrategyState
from .stability import EquilibriumPoint, vertex_by_coords

CLAMP_BUDGET = 1e-9

Coordinate = Literal["x", "y", "z"]
_COORD_INDEX = {"x": 0, "y": 1, "z": 2}


class IntegrationError(RuntimeError):
    """A step left the unit cube by more than the clamping budget."""


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 0.01
    t_max: float = 200.0
    convergence_eps: float = 1e-4
    convergence_window: int = 100  # consecutive samples that must sit in the eps-ball
    threshold: float = 0.01  # band half-width for time-to-threshold speed metrics
    stop_on_convergence: bool = True

    def __post_init__(self) -> None:
        if not (self.dt > 0.0):
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if not (self.t_max >= self.dt):
            raise ValueError(f"t_max must be at least dt, got {self.t_max!r}")
        if not (self.convergence_eps > 0.0):
            raise ValueError(f"convergence_eps must be positive, got {self.convergence_eps!r}")
        if not (isinstance(self.convergence_window, int) and self.convergence_window >= 1):
            raise ValueError(f"convergence_window must be an integer >= 1, got {self.convergence_window!r}")
        if not (0.0 < self.threshold < 0.5):
            raise ValueError(f"threshold must lie in (0, 0.5), got {self.threshold!r}")


class Sample(NamedTuple):
    t: float
    state: StrategyState


@dataclass(frozen=True)
class Trajectory:
    """Time-stamped states from one integration run."""

    samples: tuple[Sample, ...]
    params: ModelParams
    config: IntegratorConfig

    def final_state(self) -> StrategyState:
        return self.samples[-1].state

    def coordinate_series(self, coordinate: Coordinate) -> list[tuple[float, float]]:
        index = _COORD_INDEX[coordinate]
        return [(s.t, s.state.as_tuple()[index]) for s in self.samples]


def _rk4_xyz(
    params: ModelParams, x: float, y: float, z: float, dt: float
) -> tuple[float, float, float]:
    k1 = _field_xyz(params, x, y, z)
    half = dt / 2.0
    k2 = _field_xyz(params, x + half * k1[0], y + half * k1[1], z + half * k1[2])
    k3 = _field_xyz(params, x + half * k2[0], y + half * k2[1], z + half * k2[2])
    k4 = _field_xyz(params, x + dt * k3[0], y + dt * k3[1], z + dt * k3[2])
    sixth = dt / 6.0
    return (
        x + sixth * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y + sixth * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        z + sixth * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    )


def rk4_step(params: ModelParams, state: StrategyState, dt: float) -> StrategyState:
    """One classic fourth-order Runge-Kutta step, clamped into the cube.

    Raises IntegrationError when the clamp would move any coordinate by
    more than the 1e-9 budget; that signals an unstable step size, not a
    property of the flow.
    """
    if not (dt > 0.0):
        raise ValueError(f"dt must be positive, got {dt!r}")
    raw = _rk4_xyz(params, state.x, state.y, state.z, dt)
    clamped = []
    for value in raw:
        bounded = min(1.0, max(0.0, value))
        if abs(bounded - value) > CLAMP_BUDGET:
            raise IntegrationError(
                f"step dt={dt!r} left the unit cube by {abs(bounded - value):.3e} "
                f"(> {CLAMP_BUDGET:.0e}); reduce the step size"
            )
        clamped.append(bounded)
    return StrategyState(*clamped)


def _nearest_vertex(state: StrategyState) -> tuple[float, float, float]:
    return tuple(1.0 if v >= 0.5 else 0.0 for v in state.as_tuple())  # type: ignore[return-value]


def _within(state: StrategyState, vertex: tuple[float, float, float], eps: float) -> bool:
    x, y, z = state.as_tuple()
    return abs(x - vertex[0]) <= eps and abs(y - vertex[1]) <= eps and abs(z - vertex[2]) <= eps


def integrate(
    params: ModelParams, initial: StrategyState, config: IntegratorConfig = IntegratorConfig()
) -> Trajectory:
    """Integrate from t=0 to t_max, sampling every step.

    When stop_on_convergence is set, the run ends early once
    convergence_window consecutive samples sit within convergence_eps
    (max-norm) of the same cube vertex.
    """
    samples = [Sample(0.0, initial)]
    state = initial
    n_steps = int(math.floor(config.t_max / config.dt + 1e-9))
    streak_vertex: Optional[tuple[float, float, float]] = None
    streak = 0

    def update_streak(current: StrategyState) -> int:
        nonlocal streak_vertex, streak
        vertex = _nearest_vertex(current)
        if _within(current, vertex, config.convergence_eps):
            if vertex == streak_vertex:
                streak += 1
            else:
                streak_vertex, streak = vertex, 1
        else:
            streak_vertex, streak = None, 0
        return streak

    update_streak(initial)
    for i in range(1, n_steps + 1):
        state = rk4_step(params, state, config.dt)
        samples.append(Sample(i * config.dt, state))
        if update_streak(state) >= config.convergence_window and config.stop_on_convergence:
            break
    return Trajectory(tuple(samples), params, config)


@dataclass(frozen=True)
class ConvergenceResult:
    converged: bool
    limit: Optional[EquilibriumPoint]
    t_converge: Optional[float]


def detect_convergence(traj: Trajectory) -> ConvergenceResult:
    """Decide whether a trajectory has settled onto a cube vertex.

    Converged means the last convergence_window samples (or all of them,
    for shorter trajectories) lie within convergence_eps, max-norm, of
    one vertex; t_converge is the first time the state enters that ball
    and never leaves it again.
    """
    if not traj.samples:
        raise ValueError("trajectory has no samples")
    eps = traj.config.convergence_eps
    window = min(traj.config.convergence_window, len(traj.samples))
    vertex = _nearest_vertex(traj.final_state())
    tail = traj.samples[-window:]
    if not all(_within(s.state, vertex, eps) for s in tail):
        return ConvergenceResult(False, None, None)
    first_inside = len(traj.samples) - 1
    while first_inside > 0 and _within(traj.samples[first_inside - 1].state, vertex, eps):
        first_inside -= 1
    return ConvergenceResult(True, vertex_by_coords(vertex), traj.samples[first_inside].t)


def time_to_threshold(
    traj: Trajectory, coordinate: Coordinate, target: float, threshold: float
) -> Optional[float]:
    """First sample time at which |coordinate - target| < threshold for good.

    Returns None when the coordinate never enters the band, or leaves it
    again before the trajectory ends.
    """
    if coordinate not in _COORD_INDEX:
        raise ValueError(f"coordinate must be one of 'x', 'y', 'z', got {coordinate!r}")
    if float(target) not in (0.0, 1.0):
        raise ValueError(f"target must be 0 or 1, got {target!r}")
    if not (0.0 < threshold < 0.5):
        raise ValueError(f"threshold must lie in (0, 0.5), got {threshold!r}")
    index = _COORD_INDEX[coordinate]
    target = float(target)

    def inside(sample: Sample) -> bool:
        return abs(sample.state.as_tuple()[index] - target) < threshold

    if not inside(traj.samples[-1]):
        return None
    first_inside = len(traj.samples) - 1
    while first_inside > 0 and inside(traj.samples[first_inside - 1]):
        first_inside -= 1
    return traj.samples[first_inside].t
