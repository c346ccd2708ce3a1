"""Scenario presets and one-parameter sensitivity sweeps.

The three Condition presets each make a different vertex the unique ESS;
the Table5 preset is the baseline for the named sensitivity sweeps. Sweep
results carry per-variant trajectories plus convergence and speed data,
and the named sweeps ship with qualitative speed expectations so a run
can report where the reproduction agrees or disagrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .dynamics import (
    ConvergenceResult,
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    detect_convergence,
    integrate,
    time_to_threshold,
)
from .model import PARAM_FIELDS, ModelParams, StrategyState

SweepValue = Union[float, StrategyState]

_DEFAULT_INITIAL = StrategyState(0.5, 0.5, 0.5)


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    params: ModelParams
    initial: StrategyState


_PRESET_PARAMS = {
    "Condition1": dict(
        I_J=20, C_LC=8, T_RJ=5, C_HJ=10, C_LF=35, C_DJ=3, C_MJ=6, C_SJ=30, C_IF=1, B_SP=1, C_SC=30
    ),
    "Condition2": dict(
        I_J=20, C_LC=8, T_RJ=5, C_HJ=10, C_LF=20, C_DJ=3, C_MJ=6, C_SJ=30, C_IF=1, B_SP=1, C_SC=30
    ),
    "Condition3": dict(
        I_J=20, C_LC=10, T_RJ=5, C_HJ=10, C_LF=5, C_DJ=3, C_MJ=6, C_SJ=80, C_IF=1, B_SP=1, C_SC=10
    ),
    "Table5": dict(
        I_J=20, C_LC=8, T_RJ=5, C_HJ=10, C_LF=30, C_DJ=3, C_MJ=6, C_SJ=30, C_IF=1, B_SP=1, C_SC=30
    ),
}

PRESET_NAMES: tuple[str, ...] = tuple(_PRESET_PARAMS)


def preset(name: str) -> ScenarioPreset:
    """A named scenario; Condition1/2/3 drive the system to gamma4/6/8."""
    if name not in _PRESET_PARAMS:
        known = ", ".join(PRESET_NAMES)
        raise ValueError(f"unknown preset {name!r}; known presets: {known}")
    return ScenarioPreset(name, ModelParams(**_PRESET_PARAMS[name]), _DEFAULT_INITIAL)


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep: vary one parameter (or the initial state)."""

    base: ScenarioPreset
    parameter: str  # a ModelParams field name, or "initial"
    values: tuple[SweepValue, ...]
    config: IntegratorConfig = IntegratorConfig()

    def __post_init__(self) -> None:
        if self.parameter != "initial" and self.parameter not in PARAM_FIELDS:
            raise ValueError(
                f"sweep parameter must be 'initial' or one of {PARAM_FIELDS}, got {self.parameter!r}"
            )
        if len(self.values) == 0:
            raise ValueError("sweep needs at least one value")
        for value in self.values:
            if self.parameter == "initial":
                if not isinstance(value, StrategyState):
                    raise ValueError(f"initial sweep values must be StrategyState, got {value!r}")
            elif isinstance(value, StrategyState):
                raise ValueError(f"parameter sweep values must be numbers, got {value!r}")

    def variant_inputs(self, value: SweepValue) -> tuple[ModelParams, StrategyState]:
        if self.parameter == "initial":
            assert isinstance(value, StrategyState)
            return self.base.params, value
        return self.base.params.replace(**{self.parameter: float(value)}), self.base.initial


@dataclass(frozen=True)
class SweepVariant:
    value: SweepValue
    params: ModelParams
    initial: StrategyState
    trajectory: Optional[Trajectory]
    convergence: Optional[ConvergenceResult]
    error: Optional[str]  # set instead of trajectory when integration failed

    def converged_to(self) -> Optional[tuple[float, float, float]]:
        if self.convergence is None or not self.convergence.converged:
            return None
        return self.convergence.limit.coords.as_tuple()


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    variants: tuple[SweepVariant, ...]  # one per input value, in input order

    def failures(self) -> tuple[SweepVariant, ...]:
        return tuple(
            v
            for v in self.variants
            if v.error is not None or v.convergence is None or not v.convergence.converged
        )


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Integrate every variant; unstable variants become failure records."""
    variants = []
    for value in spec.values:
        params, initial = spec.variant_inputs(value)
        try:
            trajectory = integrate(params, initial, spec.config)
        except IntegrationError as exc:
            variants.append(SweepVariant(value, params, initial, None, None, str(exc)))
            continue
        variants.append(
            SweepVariant(value, params, initial, trajectory, detect_convergence(trajectory), None)
        )
    return SweepResult(spec, tuple(variants))


def _describe_value(value: SweepValue) -> str:
    if isinstance(value, StrategyState):
        return f"({value.x:g}, {value.y:g}, {value.z:g})"
    return f"{value:g}"


@dataclass(frozen=True)
class SpeedOrdering:
    """Time-to-threshold per sweep value, with a monotonicity verdict."""

    coordinate: str
    target: float
    pairs: tuple[tuple[SweepValue, float], ...]
    direction: str  # strictly_decreasing | strictly_increasing | constant | mixed


def _direction(times: list[float]) -> str:
    if len(times) < 2:
        return "constant"
    if all(b < a for a, b in zip(times, times[1:])):
        return "strictly_decreasing"
    if all(b > a for a, b in zip(times, times[1:])):
        return "strictly_increasing"
    if all(b == a for a, b in zip(times, times[1:])):
        return "constant"
    return "mixed"


def speed_ordering(
    result: SweepResult, coordinate: str, target: float, threshold: float | None = None
) -> SpeedOrdering:
    """Pair each sweep value with its time to settle a coordinate.

    Requires every variant to have converged; scalar sweeps are ordered by
    value, initial-state sweeps keep input order.
    """
    failed = result.failures()
    if failed:
        names = ", ".join(_describe_value(v.value) for v in failed)
        raise ValueError(f"variants did not converge: {result.spec.parameter} = {names}")
    if threshold is None:
        threshold = result.spec.config.threshold
    pairs = []
    for variant in result.variants:
        assert variant.trajectory is not None
        t = time_to_threshold(variant.trajectory, coordinate, target, threshold)  # type: ignore[arg-type]
        if t is None:
            raise ValueError(
                f"variant {result.spec.parameter} = {_describe_value(variant.value)} never "
                f"settled {coordinate} within {threshold} of {target}"
            )
        pairs.append((variant.value, t))
    if result.spec.parameter != "initial":
        pairs.sort(key=lambda pair: float(pair[0]))  # type: ignore[arg-type]
    times = [t for _, t in pairs]
    return SpeedOrdering(coordinate, float(target), tuple(pairs), _direction(times))


# --- named sweeps -----------------------------------------------------------

FIGURE_SWEEP_VALUES: dict[str, tuple[SweepValue, ...]] = {
    "C_DJ": (1.0, 2.0, 3.0, 4.0, 5.0, 6.0),
    "C_SJ": (25.0, 27.0, 29.0, 31.0, 33.0, 35.0),
    "C_LC": (1.0, 5.0, 15.0, 20.0, 25.0, 30.0),
    "C_LF": (30.0, 32.0, 34.0, 36.0, 38.0, 40.0),
    "C_HJ": (5.0, 9.0, 13.0, 17.0),
    "initial": (
        StrategyState(0.5, 0.5, 0.5),
        StrategyState(0.8, 0.1, 0.1),
        StrategyState(0.2, 0.7, 0.1),
        StrategyState(0.7, 0.2, 0.1),
    ),
}

NAMED_SWEEPS: tuple[str, ...] = tuple(FIGURE_SWEEP_VALUES)

PLAYERS: tuple[str, ...] = ("government", "countries", "fisheries")
PLAYER_COORDINATE: dict[str, str] = {"government": "x", "countries": "y", "fisheries": "z"}

# Qualitative speed responses the named sweeps are expected to show as the
# swept value increases ("faster" = settles sooner). Reproduction reports
# compare observed orderings against these and surface any disagreement.
CLAIMED_TRENDS: dict[str, dict[str, str]] = {
    "C_DJ": {"government": "faster", "countries": "similar", "fisheries": "slower"},
    "C_SJ": {"government": "slower", "countries": "similar", "fisheries": "faster"},
    "C_LC": {"government": "slower", "countries": "slower", "fisheries": "slower"},
    "C_LF": {"government": "faster", "countries": "similar", "fisheries": "slower"},
    "C_HJ": {"government": "slower", "countries": "faster", "fisheries": "faster"},
}

# Relative spread below which a sweep's times count as "similar".
SIMILAR_SPREAD = 0.10


def named_sweep(name: str, config: IntegratorConfig = IntegratorConfig()) -> SweepSpec:
    """One of the stock sensitivity sweeps over the Table5 baseline."""
    if name not in FIGURE_SWEEP_VALUES:
        known = ", ".join(NAMED_SWEEPS)
        raise ValueError(f"unknown sweep {name!r}; known sweeps: {known}")
    return SweepSpec(preset("Table5"), name, FIGURE_SWEEP_VALUES[name], config)


def observed_trend(times: list[float]) -> str:
    """Classify a time sequence: similar / faster / slower / mixed.

    A relative spread within SIMILAR_SPREAD counts as similar regardless
    of direction; otherwise strict monotonicity decides.
    """
    if len(times) < 2:
        return "similar"
    spread = (max(times) - min(times)) / max(max(times), 1e-12)
    if spread <= SIMILAR_SPREAD:
        return "similar"
    direction = _direction(times)
    if direction == "strictly_decreasing":
        return "faster"
    if direction == "strictly_increasing":
        return "slower"
    return "mixed"


@dataclass(frozen=True)
class ReproductionNote:
    sweep: str
    player: str
    coordinate: str
    claimed: str
    observed: str
    agrees: bool
    times: tuple[float, ...]


def reproduction_notes(result: SweepResult, threshold: float | None = None) -> tuple[ReproductionNote, ...]:
    """Compare a named sweep's observed speed orderings with the claimed trends.

    All variants must converge to the same vertex. For the initial-state
    sweep the single claim is that the outcome is unchanged; parameter
    sweeps get one note per player.
    """
    name = result.spec.parameter
    limits = {v.converged_to() for v in result.variants}
    if len(limits) != 1 or None in limits:
        raise ValueError(f"sweep {name!r} variants do not share a converged limit: {limits!r}")
    (limit,) = limits

    if name == "initial":
        return (
            ReproductionNote(
                sweep=name,
                player="all",
                coordinate="xyz",
                claimed="outcome unchanged across starting points",
                observed="outcome unchanged",
                agrees=True,
                times=(),
            ),
        )
    if name not in CLAIMED_TRENDS:
        raise ValueError(f"no claimed trends recorded for sweep {name!r}")

    notes = []
    for player in PLAYERS:
        coordinate = PLAYER_COORDINATE[player]
        target = limit[{"x": 0, "y": 1, "z": 2}[coordinate]]
        ordering = speed_ordering(result, coordinate, target, threshold)
        times = [t for _, t in ordering.pairs]
        observed = observed_trend(times)
        claimed = CLAIMED_TRENDS[name][player]
        notes.append(
            ReproductionNote(
                sweep=name,
                player=player,
                coordinate=coordinate,
                claimed=claimed,
                observed=observed,
                agrees=observed == claimed,
                times=tuple(times),
            )
        )
    return tuple(notes)
