"""Tripartite evolutionary game of ocean discharge.

Replicator dynamics for three players (discharging government, other
countries, fisheries association): payoff construction, equilibrium and
ESS stability analysis, fixed-step trajectory integration, and
one-parameter sensitivity experiments.
"""

from .dynamics import (
    ConvergenceResult,
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    detect_convergence,
    integrate,
    rk4_step,
    time_to_threshold,
)
from .experiments import (
    NAMED_SWEEPS,
    PRESET_NAMES,
    ScenarioPreset,
    SweepResult,
    SweepSpec,
    named_sweep,
    preset,
    reproduction_notes,
    run_sweep,
    speed_ordering,
)
from .game import (
    FieldValue,
    PayoffCell,
    PayoffMatrix,
    UtilityBundle,
    build_payoff_matrix,
    generic_expected_field,
    replicator_field,
    utilities_countries,
    utilities_fisheries,
    utilities_government,
)
from .model import ModelParams, StrategyState
from .stability import (
    Classification,
    ConditionCheck,
    EquilibriumPoint,
    EquilibriumReport,
    InteriorSolution,
    JacobianMatrix,
    StabilityReport,
    analytic_jacobian,
    classify,
    condition_check,
    finite_difference_jacobian,
    general_eigenvalues,
    interior_equilibrium,
    pure_equilibria,
    stability_report,
    vertex_eigenvalues,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "ConditionCheck",
    "ConvergenceResult",
    "EquilibriumPoint",
    "EquilibriumReport",
    "FieldValue",
    "IntegrationError",
    "IntegratorConfig",
    "InteriorSolution",
    "JacobianMatrix",
    "ModelParams",
    "NAMED_SWEEPS",
    "PRESET_NAMES",
    "PayoffCell",
    "PayoffMatrix",
    "ScenarioPreset",
    "StabilityReport",
    "StrategyState",
    "SweepResult",
    "SweepSpec",
    "Trajectory",
    "UtilityBundle",
    "analytic_jacobian",
    "build_payoff_matrix",
    "classify",
    "condition_check",
    "detect_convergence",
    "finite_difference_jacobian",
    "general_eigenvalues",
    "generic_expected_field",
    "integrate",
    "interior_equilibrium",
    "named_sweep",
    "preset",
    "pure_equilibria",
    "replicator_field",
    "reproduction_notes",
    "rk4_step",
    "run_sweep",
    "speed_ordering",
    "stability_report",
    "time_to_threshold",
    "utilities_countries",
    "utilities_fisheries",
    "utilities_government",
    "vertex_eigenvalues",
]
