"""Payoff matrix, expected utilities, and the replicator vector field.

The closed-form utilities and field below are the algebraically reduced
expressions; ``generic_expected_field`` recomputes the same field directly
from the payoff cells and serves as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math

from .model import ModelParams, StrategyState


class GovernmentMove(Enum):
    DISCHARGE = "discharge"
    STORE = "store"


class CountriesMove(Enum):
    SANCTION = "sanction"
    NO_SANCTION = "no_sanction"


class FisheriesMove(Enum):
    OPPOSE = "oppose"
    ACCEPT = "accept"


Outcome = tuple[GovernmentMove, CountriesMove, FisheriesMove]

OUTCOMES: tuple[Outcome, ...] = tuple(
    (g, c, f) for g in GovernmentMove for c in CountriesMove for f in FisheriesMove
)


@dataclass(frozen=True)
class PayoffCell:
    """Per-player payoffs for one pure-strategy outcome."""

    government: float
    countries: float
    fisheries: float

    def __post_init__(self) -> None:
        for name in ("government", "countries", "fisheries"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"payoff {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class PayoffMatrix:
    """All eight outcome cells of the tripartite game.

    ``cells`` must contain exactly one entry per (government, countries,
    fisheries) move combination. Treat instances as immutable.
    """

    cells: dict[Outcome, PayoffCell]

    def __post_init__(self) -> None:
        missing = [o for o in OUTCOMES if o not in self.cells]
        extra = [o for o in self.cells if o not in OUTCOMES]
        if missing or extra:
            raise ValueError(
                f"payoff matrix needs exactly the 8 pure outcomes; "
                f"missing={missing!r} extra={extra!r}"
            )

    def cell(
        self, government: GovernmentMove, countries: CountriesMove, fisheries: FisheriesMove
    ) -> PayoffCell:
        return self.cells[(government, countries, fisheries)]


def build_payoff_matrix(params: ModelParams) -> PayoffMatrix:
    """Populate the eight outcome cells from the model parameters."""
    p = params
    g, c, f = GovernmentMove, CountriesMove, FisheriesMove
    countries_sanction_vs_discharge = -p.C_SC + p.B_SP + p.C_LC - p.C_MC
    cells = {
        (g.DISCHARGE, c.SANCTION, f.OPPOSE): PayoffCell(
            -p.I_J - p.C_LF - p.C_LC - p.T_RJ - p.C_DJ - p.C_MJ,
            countries_sanction_vs_discharge,
            p.C_LF - p.E_RF,
        ),
        (g.DISCHARGE, c.SANCTION, f.ACCEPT): PayoffCell(
            -p.I_J - p.C_LC - p.T_RJ - p.C_DJ - p.C_MJ,
            countries_sanction_vs_discharge,
            -p.E_RF - p.C_IF,
        ),
        (g.DISCHARGE, c.NO_SANCTION, f.OPPOSE): PayoffCell(
            -p.C_LF - p.C_DJ - p.C_MJ,
            -p.C_MC,
            p.C_LF,
        ),
        (g.DISCHARGE, c.NO_SANCTION, f.ACCEPT): PayoffCell(
            -p.C_DJ - p.C_MJ,
            -p.C_MC,
            -p.C_IF,
        ),
        (g.STORE, c.SANCTION, f.OPPOSE): PayoffCell(
            p.C_HJ - p.C_SJ,
            -p.C_HJ,
            0.0,
        ),
        (g.STORE, c.SANCTION, f.ACCEPT): PayoffCell(
            p.C_HJ - p.C_SJ,
            -p.C_HJ,
            -p.C_IF,
        ),
        (g.STORE, c.NO_SANCTION, f.OPPOSE): PayoffCell(
            -p.C_SJ,
            0.0,
            0.0,
        ),
        (g.STORE, c.NO_SANCTION, f.ACCEPT): PayoffCell(
            -p.C_SJ,
            0.0,
            -p.C_IF,
        ),
    }
    return PayoffMatrix(cells)


@dataclass(frozen=True)
class UtilityBundle:
    """Expected utility of a player's two strategies and the population mean."""

    u_strat: float  # utility of the player's first strategy
    u_alt: float  # utility of the second strategy
    u_avg: float  # population average


@dataclass(frozen=True)
class FieldValue:
    """Time derivatives (dx, dy, dz) of the strategy shares."""

    dx: float
    dy: float
    dz: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.dx, self.dy, self.dz)


def utilities_government(params: ModelParams, state: StrategyState) -> UtilityBundle:
    """Government utilities: discharge (u_strat) vs store (u_alt)."""
    p, y, z = params, state.y, state.z
    u_discharge = y * (-p.I_J - p.C_LC - p.T_RJ) - z * p.C_LF - p.C_DJ - p.C_MJ
    u_store = y * p.C_HJ - p.C_SJ
    u_avg = state.x * u_discharge + (1.0 - state.x) * u_store
    return UtilityBundle(u_discharge, u_store, u_avg)


def utilities_countries(params: ModelParams, state: StrategyState) -> UtilityBundle:
    """Other-countries utilities: sanction (u_strat) vs no sanction (u_alt)."""
    p, x = params, state.x
    u_sanction = x * (p.C_HJ - p.C_SC + p.B_SP + p.C_LC - p.C_MC) - p.C_HJ
    u_no_sanction = -x * p.C_MC
    u_avg = state.y * u_sanction + (1.0 - state.y) * u_no_sanction
    return UtilityBundle(u_sanction, u_no_sanction, u_avg)


def utilities_fisheries(params: ModelParams, state: StrategyState) -> UtilityBundle:
    """Fisheries-association utilities: oppose (u_strat) vs accept (u_alt)."""
    p, x, y = params, state.x, state.y
    u_oppose = -x * y * p.E_RF + x * p.C_LF
    u_accept = -x * y * p.E_RF - p.C_IF
    u_avg = state.z * u_oppose + (1.0 - state.z) * u_accept
    return UtilityBundle(u_oppose, u_accept, u_avg)


def discharge_advantage(params: ModelParams, y: float, z: float) -> float:
    """Government's payoff gain of discharging over storing."""
    p = params
    return (
        y * (-p.I_J - p.C_LC - p.T_RJ - p.C_HJ) - z * p.C_LF - p.C_DJ - p.C_MJ + p.C_SJ
    )


def sanction_advantage(params: ModelParams, x: float) -> float:
    """Other countries' payoff gain of sanctioning over not sanctioning."""
    p = params
    return x * (p.C_HJ - p.C_SC + p.B_SP + p.C_LC) - p.C_HJ


def oppose_advantage(params: ModelParams, x: float) -> float:
    """Fisheries association's payoff gain of opposing over accepting."""
    return x * params.C_LF + params.C_IF


def _field_xyz(params: ModelParams, x: float, y: float, z: float) -> tuple[float, float, float]:
    # Raw components; callers may evaluate slightly outside the cube
    # (integrator stages, finite differences) where the polynomial extends.
    return (
        x * (1.0 - x) * discharge_advantage(params, y, z),
        y * (1.0 - y) * sanction_advantage(params, x),
        z * (1.0 - z) * oppose_advantage(params, x),
    )


def replicator_field(params: ModelParams, state: StrategyState) -> FieldValue:
    """Replicator time-derivatives at a strategy state.

    Each component has the form p*(1-p)*(payoff advantage), so it vanishes
    exactly on its own faces of the cube: x in {0,1} forces dx == 0, and
    likewise for y and z.
    """
    return FieldValue(*_field_xyz(params, state.x, state.y, state.z))


def generic_expected_field(matrix: PayoffMatrix, state: StrategyState) -> FieldValue:
    """Replicator field computed directly from payoff cells.

    Expected utilities are probability-weighted sums over the opponents'
    mixed strategies; each rate is p*(1-p)*(u_strat - u_alt). For a matrix
    built from valid parameters this agrees with ``replicator_field`` up
    to floating round-off.
    """
    x, y, z = state.as_tuple()
    p_countries = {CountriesMove.SANCTION: y, CountriesMove.NO_SANCTION: 1.0 - y}
    p_fisheries = {FisheriesMove.OPPOSE: z, FisheriesMove.ACCEPT: 1.0 - z}
    p_government = {GovernmentMove.DISCHARGE: x, GovernmentMove.STORE: 1.0 - x}

    def u_government(move: GovernmentMove) -> float:
        return sum(
            p_countries[c] * p_fisheries[f] * matrix.cell(move, c, f).government
            for c in CountriesMove
            for f in FisheriesMove
        )

    def u_countries(move: CountriesMove) -> float:
        return sum(
            p_government[g] * p_fisheries[f] * matrix.cell(g, move, f).countries
            for g in GovernmentMove
            for f in FisheriesMove
        )

    def u_fisheries(move: FisheriesMove) -> float:
        return sum(
            p_government[g] * p_countries[c] * matrix.cell(g, c, move).fisheries
            for g in GovernmentMove
            for c in CountriesMove
        )

    dx = x * (1.0 - x) * (u_government(GovernmentMove.DISCHARGE) - u_government(GovernmentMove.STORE))
    dy = y * (1.0 - y) * (u_countries(CountriesMove.SANCTION) - u_countries(CountriesMove.NO_SANCTION))
    dz = z * (1.0 - z) * (u_fisheries(FisheriesMove.OPPOSE) - u_fisheries(FisheriesMove.ACCEPT))
    return FieldValue(dx, dy, dz)
