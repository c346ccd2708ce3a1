"""Shared hypothesis strategies for the test suite."""

import hypothesis.strategies as st

from discharge_game.model import PARAM_FIELDS, ModelParams, StrategyState


def magnitudes(max_value: float = 100.0) -> st.SearchStrategy[float]:
    # Subnormals are excluded: scaling properties assert bitwise exactness,
    # which gradual underflow breaks, and they are meaningless magnitudes here.
    return st.floats(
        min_value=0.0,
        max_value=max_value,
        allow_nan=False,
        allow_infinity=False,
        allow_subnormal=False,
    )


def model_params(max_value: float = 100.0) -> st.SearchStrategy[ModelParams]:
    return st.builds(ModelParams, **{name: magnitudes(max_value) for name in PARAM_FIELDS})


def probabilities() -> st.SearchStrategy[float]:
    return st.floats(
        min_value=0.0,
        max_value=1.0,
        allow_nan=False,
        allow_infinity=False,
        allow_subnormal=False,
    )


def strategy_states() -> st.SearchStrategy[StrategyState]:
    return st.builds(StrategyState, x=probabilities(), y=probabilities(), z=probabilities())
