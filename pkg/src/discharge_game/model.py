"""Core domain types: model parameters and mixed-strategy states.

Three players interact over the ocean discharge of treated wastewater:
the government of the discharging country (discharge / store), other
countries (sanction / no sanction), and the national fisheries
association (oppose / accept). All costs and benefits are nonnegative
magnitudes on an arbitrary monetary scale; the payoff formulas apply
the signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from dataclasses import replace as _dataclass_replace

PARAM_FIELDS: tuple[str, ...] = (
    "I_J",
    "C_LC",
    "T_RJ",
    "C_HJ",
    "C_LF",
    "C_DJ",
    "C_MJ",
    "C_SJ",
    "C_IF",
    "B_SP",
    "C_SC",
    "C_MC",
    "E_RF",
)


@dataclass(frozen=True)
class ModelParams:
    """Cost/benefit scalars of the discharge game.

    Every field must be a finite, nonnegative real. C_MC and E_RF do not
    enter the replicator dynamics (they cancel from the strategy-utility
    differences) and default to 0; they remain settable because they do
    appear in the raw payoff cells and expected utilities.
    """

    I_J: float  # government: international-image loss when discharging
    C_LC: float  # government -> other countries: litigation compensation
    T_RJ: float  # government: export tax revenue lost when discharging
    C_HJ: float  # government: aid received from other countries when storing
    C_LF: float  # government -> fisheries association: litigation compensation
    C_DJ: float  # government: direct cost of discharging
    C_MJ: float  # government: ocean-monitoring cost when discharging
    C_SJ: float  # government: cost of storing the wastewater instead
    C_IF: float  # fisheries association: image loss when not opposing
    B_SP: float  # other countries: benefit from substitute seafood supply
    C_SC: float  # other countries: cost of developing their own seafood supply
    C_MC: float = 0.0  # other countries: ocean-monitoring cost
    E_RF: float = 0.0  # fisheries association: revenue lost to discharge

    def __post_init__(self) -> None:
        for name in PARAM_FIELDS:
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValueError(f"parameter {name} is not a real number: {value!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"parameter {name} must be finite, got {value!r}")
            if value < 0.0:
                raise ValueError(f"parameter {name} must be nonnegative, got {value!r}")
            object.__setattr__(self, name, value)

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in PARAM_FIELDS}

    def replace(self, **changes: float) -> "ModelParams":
        return _dataclass_replace(self, **changes)

    def scaled(self, factor: float) -> "ModelParams":
        """All thirteen fields multiplied by a positive factor."""
        if not (factor > 0.0):
            raise ValueError(f"scale factor must be positive, got {factor!r}")
        return ModelParams(**{name: factor * getattr(self, name) for name in PARAM_FIELDS})

    def magnitude(self) -> float:
        """Largest field value; the natural scale for tolerances."""
        return max(getattr(self, name) for name in PARAM_FIELDS)


# fields() is the source of truth for defaults; keep PARAM_FIELDS in sync.
assert PARAM_FIELDS == tuple(f.name for f in fields(ModelParams))

REQUIRED_PARAM_FIELDS: tuple[str, ...] = PARAM_FIELDS[:11]


@dataclass(frozen=True)
class StrategyState:
    """A mixed-strategy point (x, y, z) in the unit cube."""

    x: float  # probability the government discharges
    y: float  # probability other countries sanction
    z: float  # probability the fisheries association opposes

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValueError(f"probability {name} is not a real number: {value!r}") from None
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"probability {name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)
